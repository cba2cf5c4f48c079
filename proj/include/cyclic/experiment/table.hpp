#pragma once

// Replication tables: a header, one numeric row per replication, and a
// two-line footer holding the column means and standard errors. Values are
// written in shortest round-trip form so a re-parsed table aggregates to the
// same bits.

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclic {

struct Table {
  /// header[0] labels the replication column; the footer reuses that column
  /// for the words "mean" and "se".
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Per-column statistics over header[1..]: mean and sd/√m.
struct Aggregate {
  std::vector<double> mean;
  std::vector<double> se;
};

Aggregate aggregate(const Table& t);

void write_table(std::ostream& os, const Table& t);

struct ParsedTable {
  Table table;
  Aggregate footer;
};

/// Throws ParseError on malformed input.
ParsedTable read_table(std::istream& is);

/// Bitwise equality, with NaN equal to NaN.
bool same_bits(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cyclic
