#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "config.hpp"
#include "sparse_tensor.hpp"

namespace lieinv {

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Radical {
  long a = 0;
  int b = 1;
  int c = 1;
  double value() const { return static_cast<double>(a) * std::sqrt(static_cast<double>(b)) / c; }
};

// v = a*sqrt(b)/c with b in {1,2,3,6}, c <= 144 and |a| <= max_numerator;
// smallest c wins, then smallest b.
inline std::optional<Radical> recognize_radical(double v, double tol = 1e-10, long max_numerator = 100000) {
  if (v == 0.0 || !std::isfinite(v)) return std::nullopt;
  for (int c = 1; c <= 144; ++c)
    for (int b : {1, 2, 3, 6}) {
      double a = v * c / std::sqrt(static_cast<double>(b));
      double ra = std::round(a);
      if (ra == 0.0 || std::abs(ra) > static_cast<double>(max_numerator)) continue;
      if (std::abs(a - ra) <= tol * std::max(1.0, std::abs(a))) return Radical{static_cast<long>(ra), b, c};
    }
  return std::nullopt;
}

// "-sqrt(6)/9", "1/4", "3*sqrt(2)/4", "2"
inline std::string format_radical(const Radical& q) {
  std::string s = q.a < 0 ? "-" : "";
  const long a = std::labs(q.a);
  if (q.b == 1)
    s += std::to_string(a);
  else
    s += (a == 1 ? "" : std::to_string(a) + "*") + "sqrt(" + std::to_string(q.b) + ")";
  if (q.c != 1) s += "/" + std::to_string(q.c);
  return s;
}

inline std::optional<double> parse_radical(const std::string& s) {
  std::size_t p = 0;
  bool neg = false;
  if (p < s.size() && s[p] == '-') {
    neg = true;
    ++p;
  }
  auto read_int = [&](long& out) {
    std::size_t q = p;
    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
    if (q == p) return false;
    out = std::stol(s.substr(p, q - p));
    p = q;
    return true;
  };
  long a = 1, b = 1, c = 1;
  if (s.compare(p, 5, "sqrt(") != 0) {
    if (!read_int(a)) return std::nullopt;
    if (p < s.size() && s[p] == '*') {
      ++p;
      if (s.compare(p, 5, "sqrt(") != 0) return std::nullopt;
    }
  }
  if (s.compare(p, 5, "sqrt(") == 0) {
    p += 5;
    if (!read_int(b) || p >= s.size() || s[p] != ')') return std::nullopt;
    ++p;
  }
  if (p < s.size() && s[p] == '/') {
    ++p;
    if (!read_int(c) || c == 0) return std::nullopt;
  }
  if (p != s.size()) return std::nullopt;
  double v = static_cast<double>(a) * std::sqrt(static_cast<double>(b)) / static_cast<double>(c);
  return neg ? -v : v;
}

// Exact form if recognized, otherwise the shortest decimal.
inline std::string format_value(double v, bool exact) {
  if (exact)
    if (auto q = recognize_radical(v)) return format_radical(*q);
  return format_double(v);
}

// Canonical entries, 1-based, sorted lexicographically by index tuple.
template <Kind K>
std::vector<std::pair<Index, double>> sorted_entries(const SparseTensor<K>& t) {
  std::vector<std::pair<Index, double>> e;
  e.reserve(t.nnz());
  t.for_each([&](const Index& k, double v) {
    Index one = k;
    for (auto& i : one) ++i;
    e.emplace_back(std::move(one), v);
  });
  std::sort(e.begin(), e.end(), [](auto& x, auto& y) { return x.first < y.first; });
  return e;
}

template <Kind K>
void write_tensor(std::ostream& os, const SparseTensor<K>& t, const std::string& algebra, bool exact = false) {
  os << "kind=" << (K == Kind::sym ? "sym" : "alt") << " order=" << t.order() << " dim=" << t.dim()
     << " algebra=" << algebra << '\n';
  for (auto& [idx, v] : sorted_entries(t)) {
    for (int i : idx) os << i << ' ';
    os << format_double(v);
    if (exact)
      if (auto q = recognize_radical(v)) os << ' ' << format_radical(*q);
    os << '\n';
  }
}

struct TensorFile {
  Kind kind = Kind::sym;
  int order = 0;
  int dim = 0;
  std::string algebra;
  std::vector<std::pair<Index, double>> entries;  // 0-based canonical

  SymTensor as_sym() const {
    if (kind != Kind::sym) throw InvalidInput("file holds an antisymmetric tensor");
    return SymTensor::from_entries(order, dim, entries);
  }
  AltTensor as_alt() const {
    if (kind != Kind::alt) throw InvalidInput("file holds a symmetric tensor");
    return AltTensor::from_entries(order, dim, entries);
  }
};

inline TensorFile read_tensor(std::istream& is) {
  TensorFile tf;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::map<Index, int> seen;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (!have_header) {
      std::map<std::string, std::string> kv;
      for (auto& w : tok) {
        auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line_no, "malformed header field '" + w + "'");
        if (!kv.emplace(w.substr(0, eq), w.substr(eq + 1)).second)
          throw ParseError(line_no, "duplicate header field '" + w.substr(0, eq) + "'");
      }
      for (const char* key : {"kind", "order", "dim", "algebra"})
        if (!kv.count(key)) throw ParseError(line_no, std::string("header lacks '") + key + "'");
      if (kv["kind"] == "sym")
        tf.kind = Kind::sym;
      else if (kv["kind"] == "alt")
        tf.kind = Kind::alt;
      else
        throw ParseError(line_no, "kind must be sym or alt");
      auto as_int = [&](const std::string& key) {
        const std::string& s = kv[key];
        int v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v < 0)
          throw ParseError(line_no, "bad " + key + " '" + s + "'");
        return v;
      };
      tf.order = as_int("order");
      tf.dim = as_int("dim");
      if (tf.order > max_order) throw ParseError(line_no, "order too large");
      tf.algebra = kv["algebra"];
      have_header = true;
      continue;
    }
    const std::size_t m = static_cast<std::size_t>(tf.order);
    if (tok.size() != m + 1 && tok.size() != m + 2)
      throw ParseError(line_no, "expected " + std::to_string(m) + " indices and a value");
    Index idx(m);
    for (std::size_t k = 0; k < m; ++k) {
      int v = 0;
      auto& s = tok[k];
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw ParseError(line_no, "bad index '" + s + "'");
      if (v < 1 || v > tf.dim) throw ParseError(line_no, "index " + s + " out of range 1.." + std::to_string(tf.dim));
      idx[k] = v - 1;
      if (k > 0) {
        if (tf.kind == Kind::alt && idx[k] <= idx[k - 1])
          throw ParseError(line_no, "indices of an alt entry must be strictly increasing");
        if (tf.kind == Kind::sym && idx[k] < idx[k - 1])
          throw ParseError(line_no, "indices of a sym entry must be nondecreasing");
      }
    }
    auto value = parse_double(tok[m]);
    if (!value) throw ParseError(line_no, "bad value '" + tok[m] + "'");
    if (tok.size() == m + 2) {
      auto ex = parse_radical(tok[m + 1]);
      if (!ex) throw ParseError(line_no, "bad exact value '" + tok[m + 1] + "'");
      if (std::abs(*ex - *value) > 1e-12 * std::max(1.0, std::abs(*value)))
        throw ParseError(line_no, "exact value " + tok[m + 1] + " disagrees with " + tok[m]);
    }
    if (!seen.emplace(idx, line_no).second) throw ParseError(line_no, "duplicate entry");
    tf.entries.emplace_back(std::move(idx), *value);
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header");
  return tf;
}

}  // namespace lieinv
