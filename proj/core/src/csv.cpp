#include "abcom/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace abcom {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) {
      throw std::logic_error("csv row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& t, std::ostream& out) {
  out << to_csv(t);
}

}  // namespace abcom
