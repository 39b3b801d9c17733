#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <lieinv/index.hpp>

namespace golden {

struct Entry {
  lieinv::Index index;  // 1-based, as printed
  double value;
  std::string text;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1/2, -\sqrt{3}/12, 1/\sqrt{3}, -1/(2\sqrt{3}), \sqrt{2}/\sqrt{3}, -2/\sqrt{6}
inline std::optional<double> eval_latex(std::string s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  static const std::regex term(R"(^(-?)(\d*)(?:\\sqrt\{(\d+)\})?(?:/(?:(\d+)|\\sqrt\{(\d+)\}|\((\d*)\\sqrt\{(\d+)\}\)))?$)");
  std::smatch m;
  if (!std::regex_match(t, m, term)) return std::nullopt;
  if (m[2].str().empty() && !m[3].matched) return std::nullopt;
  double v = m[2].str().empty() ? 1.0 : std::stod(m[2]);
  if (m[3].matched) v *= std::sqrt(std::stod(m[3]));
  if (m[4].matched) v /= std::stod(m[4]);
  if (m[5].matched) v /= std::sqrt(std::stod(m[5]));
  if (m[7].matched) v /= (m[6].str().empty() ? 1.0 : std::stod(m[6])) * std::sqrt(std::stod(m[7]));
  return m[1].str() == "-" ? -v : v;
}

// Text from \label{<label>} up to the next table label or section heading.
inline std::string table_region(const std::string& text, const std::string& label) {
  auto start = text.find("\\label{" + label + "}");
  if (start == std::string::npos) throw std::runtime_error("table " + label + " not found");
  auto stop = text.size();
  for (const char* marker : {"\\label{table", "\\section", "\\subsection", "\\begin{equation}"}) {
    auto p = text.find(marker, start + 1);
    if (p != std::string::npos) stop = std::min(stop, p);
  }
  return text.substr(start, stop - start);
}

// Entries "<sym>_{i j k} = value" (also "& = &"); indices either single digits
// run together (123) or comma separated (1,2,3).
inline std::vector<Entry> parse_table(const std::string& text, const std::string& label, const std::string& symbol) {
  const std::string region = table_region(text, label);
  const std::regex entry(symbol + R"(_\{([0-9, ]+)\}\s*&?\s*=\s*&?\s*([^&\n]*?)\s*(?:[,.]\s*)?(?=&|\\\\|\n|$))");
  std::vector<Entry> out;
  for (auto it = std::sregex_iterator(region.begin(), region.end(), entry); it != std::sregex_iterator(); ++it) {
    const std::string idx = (*it)[1];
    Entry e;
    if (idx.find(',') != std::string::npos) {
      std::stringstream ss(idx);
      for (std::string part; std::getline(ss, part, ',');) e.index.push_back(std::stoi(part));
    } else {
      for (char c : idx)
        if (std::isdigit(static_cast<unsigned char>(c))) e.index.push_back(c - '0');
    }
    e.text = (*it)[2];
    auto v = eval_latex(e.text);
    if (!v) throw std::runtime_error("cannot evaluate '" + e.text + "' in " + label);
    e.value = *v;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace golden
