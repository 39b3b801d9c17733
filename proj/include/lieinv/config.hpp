#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lieinv {

inline constexpr double default_tolerance = 1e-9;
inline constexpr double drop_tolerance = 1e-12;
inline constexpr std::uint64_t default_budget = 10'000'000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedRank : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct ConventionViolation : Error { using Error::Error; };
struct ClosureError : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct ConstructionFailure : Error { using Error::Error; };

struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Canonical-entry budget; LIEINV_BUDGET overrides the default.
inline std::uint64_t budget() {
  if (const char* s = std::getenv("LIEINV_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return default_budget;
}

inline void require_budget(std::uint64_t entries, const std::string& what) {
  if (entries > budget())
    throw BudgetExceeded(what + ": " + std::to_string(entries) +
                         " canonical entries exceed budget " + std::to_string(budget()) +
                         " (set LIEINV_BUDGET to raise it)");
}

}  // namespace lieinv
