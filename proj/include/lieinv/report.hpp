#pragma once

#include <string>
#include <vector>

namespace lieinv {

struct IdentityReport {
  std::string name;
  std::string algebra;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  bool skipped = false;
  std::string details;
};

inline IdentityReport make_report(std::string name, std::string algebra, double residual, double tol,
                                  std::string details = {}) {
  IdentityReport r;
  r.name = std::move(name);
  r.algebra = std::move(algebra);
  r.max_residual = residual;
  r.tolerance = tol;
  r.pass = residual < tol;
  r.details = std::move(details);
  return r;
}

inline IdentityReport skipped_report(std::string name, std::string algebra, std::string why) {
  IdentityReport r;
  r.name = std::move(name);
  r.algebra = std::move(algebra);
  r.skipped = true;
  r.pass = true;
  r.details = std::move(why);
  return r;
}

inline bool all_pass(const std::vector<IdentityReport>& v) {
  for (auto& r : v)
    if (!r.pass) return false;
  return true;
}

}  // namespace lieinv
