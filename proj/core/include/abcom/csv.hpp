#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abcom {

/// Rectangular numeric table. Serialized with '.' decimals, comma separators,
/// one trailing newline per row, shortest round-trip number formatting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);
std::string to_csv(const CsvTable& t);
void write_csv(const CsvTable& t, std::ostream& out);

}  // namespace abcom
