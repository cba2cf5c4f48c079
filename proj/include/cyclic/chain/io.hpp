#pragma once

#include <iosfwd>
#include <string>

#include "cyclic/chain/sample_matrix.hpp"

namespace cyclic {

/// CSV with header `t,phase,f1,…,fd`; t counts from 1. Values are written
/// with 17 significant digits so a read returns the same doubles.
void write_csv(std::ostream& os, const SampleMatrix& s);

/// Parses write_csv output. The cycle length is not stored in CSV and must
/// be supplied; the phase offset is taken from the first row's phase column.
SampleMatrix read_csv(std::istream& is, int cycle_length);

/// Little-endian binary: magic "SMX1", then n, d, k, phase_offset as 64-bit
/// integers, then n·d row-major 64-bit floats.
void write_binary(std::ostream& os, const SampleMatrix& s);
SampleMatrix read_binary(std::istream& is);

void save_binary(const std::string& path, const SampleMatrix& s);
SampleMatrix load_binary(const std::string& path);

}  // namespace cyclic
