#include "cyclic/chain/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cyclic/error.hpp"
#include "cyclic/text.hpp"

namespace cyclic {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'M', 'X', '1'};

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::array<unsigned char, sizeof(T)> rev{};
    for (std::size_t i = 0; i < sizeof(T); ++i) rev[i] = bytes[sizeof(T) - 1 - i];
    return std::bit_cast<T>(rev);
  }
}

template <class T>
void put(std::ostream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) fail(ErrorCode::ParseError, "truncated SMX1 stream");
  return to_little(v);
}

}  // namespace

void write_csv(std::ostream& os, const SampleMatrix& s) {
  os << "t,phase";
  for (std::size_t c = 0; c < s.dim(); ++c) os << ",f" << (c + 1);
  os << '\n';
  for (std::size_t r = 0; r < s.rows(); ++r) {
    os << (r + 1) << ',' << s.phase_of(r);
    for (double v : s.row(r)) os << ',' << text::format_double(v);
    os << '\n';
  }
}

SampleMatrix read_csv(std::istream& is, int cycle_length) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::ParseError, "empty CSV");
  const auto header = text::split_csv_line(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "phase") {
    fail(ErrorCode::SchemaError, "CSV header must start with t,phase,f1");
  }
  const std::size_t d = header.size() - 2;
  std::vector<double> values;
  int phase_offset = 1;
  std::size_t row = 0;
  std::vector<double> parsed(d);
  while (std::getline(is, line)) {
    if (text::trim(line).empty()) continue;
    ++row;
    const auto fields = text::split_csv_line(line);
    if (fields.size() != d + 2) {
      fail(ErrorCode::ParseError, "row " + std::to_string(row) + ": wrong field count");
    }
    double phase = 0.0;
    if (!text::parse_double(fields[1], phase)) {
      fail(ErrorCode::ParseError, "row " + std::to_string(row) + ": bad phase");
    }
    if (row == 1) phase_offset = static_cast<int>(phase);
    for (std::size_t c = 0; c < d; ++c) {
      if (!text::parse_double(fields[c + 2], parsed[c])) {
        fail(ErrorCode::ParseError, "row " + std::to_string(row) + ": bad value in column f" +
                                        std::to_string(c + 1));
      }
    }
    values.insert(values.end(), parsed.begin(), parsed.end());
  }
  return SampleMatrix(d, cycle_length, phase_offset, std::move(values));
}

void write_binary(std::ostream& os, const SampleMatrix& s) {
  os.write(kMagic.data(), kMagic.size());
  put<std::int64_t>(os, static_cast<std::int64_t>(s.rows()));
  put<std::int64_t>(os, static_cast<std::int64_t>(s.dim()));
  put<std::int64_t>(os, s.cycle_length());
  put<std::int64_t>(os, s.phase_offset());
  for (double v : s.values()) put<double>(os, v);
}

SampleMatrix read_binary(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) fail(ErrorCode::ParseError, "missing SMX1 magic");
  const auto n = get<std::int64_t>(is);
  const auto d = get<std::int64_t>(is);
  const auto k = get<std::int64_t>(is);
  const auto offset = get<std::int64_t>(is);
  if (n < 0 || d < 1 || k < 1 || offset < 1 || offset > k) {
    fail(ErrorCode::ParseError, "invalid SMX1 header");
  }
  std::vector<double> values(static_cast<std::size_t>(n * d));
  for (double& v : values) v = get<double>(is);
  return SampleMatrix(static_cast<std::size_t>(d), static_cast<int>(k), static_cast<int>(offset),
                      std::move(values));
}

void save_binary(const std::string& path, const SampleMatrix& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::IoError, "cannot open " + path);
  write_binary(os, s);
}

SampleMatrix load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::IoError, "cannot open " + path);
  return read_binary(is);
}

}  // namespace cyclic
