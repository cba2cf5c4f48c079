#include "cyclic/experiment/table.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>

#include "cyclic/error.hpp"
#include "cyclic/text.hpp"

namespace cyclic {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::DomainError, "no column named '" + name + "'");
}

Aggregate aggregate(const Table& t) {
  Aggregate a;
  const std::size_t cols = t.header.empty() ? 0 : t.header.size() - 1;
  const double m = static_cast<double>(t.rows.size());
  for (std::size_t c = 1; c <= cols; ++c) {
    double s = 0.0;
    for (const auto& r : t.rows) s += r[c];
    const double mean = s / m;
    double ss = 0.0;
    for (const auto& r : t.rows) ss += (r[c] - mean) * (r[c] - mean);
    const double se = t.rows.size() > 1 ? std::sqrt(ss / (m - 1.0)) / std::sqrt(m)
                                        : std::numeric_limits<double>::quiet_NaN();
    a.mean.push_back(mean);
    a.se.push_back(se);
  }
  return a;
}

void write_table(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << text::format_double(r[i]);
    os << '\n';
  }
  const Aggregate a = aggregate(t);
  os << "mean";
  for (double v : a.mean) os << ',' << text::format_double(v);
  os << "\nse";
  for (double v : a.se) os << ',' << text::format_double(v);
  os << '\n';
}

namespace {

std::vector<double> parse_numbers(const std::vector<std::string>& cells, std::size_t first,
                                  std::size_t line) {
  std::vector<double> out;
  for (std::size_t i = first; i < cells.size(); ++i) {
    double v = 0.0;
    if (!text::parse_double(text::trim(cells[i]), v)) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad number '" + cells[i] + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

ParsedTable read_table(std::istream& is) {
  ParsedTable p;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) fail(ErrorCode::ParseError, "empty table");
  ++lineno;
  p.table.header = text::split_csv_line(line);
  const std::size_t width = p.table.header.size();
  while (std::getline(is, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto cells = text::split_csv_line(line);
    if (cells.size() != width) {
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                      std::to_string(width) + " fields");
    }
    const std::string label = text::trim(cells[0]);
    if (label == "mean") {
      p.footer.mean = parse_numbers(cells, 1, lineno);
    } else if (label == "se") {
      p.footer.se = parse_numbers(cells, 1, lineno);
    } else {
      p.table.rows.push_back(parse_numbers(cells, 0, lineno));
    }
  }
  return p;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) && std::isnan(b[i])) continue;
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

}  // namespace cyclic
