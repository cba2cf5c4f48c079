#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cyclic/error.hpp"
#include "cyclic/samplers/lmm.hpp"
#include "cyclic/text.hpp"
#include "json.hpp"

namespace cyclic {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* field) {
  if (!j.is_array()) fail(ErrorCode::SchemaError, std::string(field) + " must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = j.at(i);
    if (!r.is_array() || r.size() != cols) {
      fail(ErrorCode::SchemaError, std::string(field) + " row " + std::to_string(i) + " is ragged");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r.at(c).get<double>();
  }
  return m;
}

}  // namespace

LmmModel parse_orthodont(std::istream& is, int k1) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::ParseError, "empty Orthodont file");
  const auto header = text::split_csv_line(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[text::trim(header[i])] = i;
  std::string missing;
  for (const char* name : {"distance", "age", "Subject", "Sex"}) {
    if (!column.contains(name)) missing += (missing.empty() ? "" : ", ") + std::string(name);
  }
  if (!missing.empty()) fail(ErrorCode::SchemaError, "missing columns: " + missing);

  struct Row {
    double distance;
    double age;
    std::size_t subject;
    bool male;
  };
  std::vector<Row> rows;
  std::map<std::string, std::size_t> subject_index;
  std::size_t row_no = 0;  // data rows count from 1
  while (std::getline(is, line)) {
    ++row_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::ParseError, "row " + std::to_string(row_no) + ": expected " +
                                      std::to_string(header.size()) + " fields");
    }
    Row r{};
    if (!text::parse_double(fields[column["distance"]], r.distance)) {
      fail(ErrorCode::ParseError, "row " + std::to_string(row_no) + ": bad distance");
    }
    if (!text::parse_double(fields[column["age"]], r.age)) {
      fail(ErrorCode::ParseError, "row " + std::to_string(row_no) + ": bad age");
    }
    const std::string sex = text::trim(fields[column["Sex"]]);
    if (sex == "Male") {
      r.male = true;
    } else if (sex == "Female") {
      r.male = false;
    } else {
      fail(ErrorCode::ParseError, "row " + std::to_string(row_no) + ": unknown Sex '" + sex + "'");
    }
    const std::string subject = text::trim(fields[column["Subject"]]);
    if (subject.empty()) fail(ErrorCode::ParseError, "row " + std::to_string(row_no) + ": empty Subject");
    auto [it, inserted] = subject_index.try_emplace(subject, subject_index.size());
    r.subject = it->second;
    rows.push_back(r);
  }
  if (rows.empty()) fail(ErrorCode::ParseError, "Orthodont file has no data rows");

  LmmData data;
  const std::size_t n = rows.size();
  const std::size_t g = subject_index.size();
  data.y.resize(n);
  data.X = Matrix(n, 3);
  data.Z = Matrix(n, g);
  for (std::size_t i = 0; i < n; ++i) {
    data.y[i] = rows[i].distance;
    data.X(i, 0) = 1.0;
    data.X(i, 1) = rows[i].age;
    data.X(i, 2) = rows[i].male ? 1.0 : 0.0;
    data.Z(i, rows[i].subject) = 1.0;
  }
  data.mu_beta.assign(3, 0.0);
  data.sigma_beta = Matrix::identity(3);
  data.a_gamma = data.b_gamma = data.a_e = data.b_e = 1.0;
  data.k1 = k1;
  return LmmModel(std::move(data));
}

LmmModel load_orthodont(const std::string& path, int k1) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IoError, "cannot open " + path);
  return parse_orthodont(is, k1);
}

std::string lmm_to_json(const LmmData& d) {
  json j;
  j["y"] = d.y;
  j["X"] = matrix_to_json(d.X);
  j["Z"] = matrix_to_json(d.Z);
  j["mu_beta"] = d.mu_beta;
  j["sigma_beta"] = matrix_to_json(d.sigma_beta);
  j["a_gamma"] = d.a_gamma;
  j["b_gamma"] = d.b_gamma;
  j["a_e"] = d.a_e;
  j["b_e"] = d.b_e;
  j["k1"] = d.k1;
  return j.dump();
}

LmmData lmm_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  std::string missing;
  for (const char* f : {"y", "X", "Z", "mu_beta", "sigma_beta", "a_gamma", "b_gamma", "a_e", "b_e",
                        "k1"}) {
    if (!j.contains(f)) missing += (missing.empty() ? "" : ", ") + std::string(f);
  }
  if (!missing.empty()) fail(ErrorCode::SchemaError, "missing fields: " + missing);
  try {
    LmmData d;
    d.y = j["y"].get<Vector>();
    d.X = matrix_from_json(j["X"], "X");
    d.Z = matrix_from_json(j["Z"], "Z");
    d.mu_beta = j["mu_beta"].get<Vector>();
    d.sigma_beta = matrix_from_json(j["sigma_beta"], "sigma_beta");
    d.a_gamma = j["a_gamma"].get<double>();
    d.b_gamma = j["b_gamma"].get<double>();
    d.a_e = j["a_e"].get<double>();
    d.b_e = j["b_e"].get<double>();
    d.k1 = j["k1"].get<int>();
    return d;
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, e.what());
  }
}

}  // namespace cyclic
