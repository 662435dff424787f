#include "scare/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace scare {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ScareError(ErrorCode::InvalidInput, what); }

Matrix to_matrix(const json& j, const std::string& name) {
  if (!j.is_array()) bad(name + " must be a nested array");
  const auto r = static_cast<Eigen::Index>(j.size());
  if (r == 0) return Matrix(0, 0);
  if (!j[0].is_array()) bad(name + " must be a nested array");
  const auto c = static_cast<Eigen::Index>(j[0].size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      bad(name + " has ragged rows");
    }
    for (Eigen::Index k = 0; k < c; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) bad(name + " entries must be numbers");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

json from_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

void expect_shape(const Matrix& m, Eigen::Index r, Eigen::Index c, const std::string& name) {
  if (m.rows() != r || m.cols() != c) {
    throw ScareError(ErrorCode::DimensionMismatch,
                     name + " must be " + std::to_string(r) + "x" + std::to_string(c));
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << text << '\n';
}

}  // namespace

ScareProblem parse_problem(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) bad("problem document must be a JSON object");
  auto integer = [&](const char* key) -> Eigen::Index {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
      bad(std::string("missing integer field \"") + key + "\"");
    }
    const auto v = doc[key].get<long long>();
    if (v < 0) bad(std::string("field \"") + key + "\" must be nonnegative");
    return static_cast<Eigen::Index>(v);
  };
  auto matrix = [&](const char* key) {
    if (!doc.contains(key)) bad(std::string("missing matrix field \"") + key + "\"");
    return to_matrix(doc[key], key);
  };
  const Eigen::Index n = integer("n");
  const Eigen::Index m = integer("m");
  const Eigen::Index r = integer("r");
  if (n == 0 || m == 0) bad("n and m must be positive");

  ScareProblem p;
  p.a = matrix("A");
  p.b = matrix("B");
  p.q = matrix("Q");
  p.r = matrix("R");
  p.l = doc.contains("L") ? matrix("L") : Matrix::Zero(n, m);
  expect_shape(p.a, n, n, "A");
  expect_shape(p.b, n, m, "B");
  expect_shape(p.q, n, n, "Q");
  expect_shape(p.r, m, m, "R");
  expect_shape(p.l, n, m, "L");
  for (const char* key : {"A0", "B0"}) {
    if (r == 0 && !doc.contains(key)) continue;
    if (!doc.contains(key) || !doc[key].is_array()) bad(std::string("missing list \"") + key + "\"");
    if (static_cast<Eigen::Index>(doc[key].size()) != r) {
      throw ScareError(ErrorCode::DimensionMismatch, std::string(key) + " must hold r matrices");
    }
    for (std::size_t i = 0; i < doc[key].size(); ++i) {
      const std::string name = std::string(key) + "[" + std::to_string(i) + "]";
      Matrix mat = to_matrix(doc[key][i], name);
      expect_shape(mat, n, key[0] == 'A' ? n : m, name);
      (key[0] == 'A' ? p.a0 : p.b0).push_back(std::move(mat));
    }
  }
  return p;
}

ScareProblem read_problem(const std::string& path) { return parse_problem(slurp(path)); }

std::string problem_to_json(const ScareProblem& p) {
  json doc;
  doc["n"] = p.n();
  doc["m"] = p.m();
  doc["r"] = p.noise_count();
  doc["A"] = from_matrix(p.a);
  doc["B"] = from_matrix(p.b);
  doc["Q"] = from_matrix(p.q);
  doc["R"] = from_matrix(p.r);
  doc["L"] = from_matrix(p.l);
  doc["A0"] = json::array();
  doc["B0"] = json::array();
  for (const Matrix& a : p.a0) doc["A0"].push_back(from_matrix(a));
  for (const Matrix& b : p.b0) doc["B0"].push_back(from_matrix(b));
  return doc.dump();
}

void write_problem(const std::string& path, const ScareProblem& p) { spit(path, problem_to_json(p)); }

Matrix parse_matrix(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (doc.is_object()) {
    if (!doc.contains("X")) bad("matrix object must hold \"X\"");
    return to_matrix(doc["X"], "X");
  }
  return to_matrix(doc, "matrix");
}

Matrix read_matrix(const std::string& path) { return parse_matrix(slurp(path)); }

std::string matrix_to_json(const Matrix& m) { return from_matrix(m).dump(); }

void write_matrix(const std::string& path, const Matrix& m) { spit(path, matrix_to_json(m)); }

void write_history_csv(std::ostream& out, const SolveReport& report) {
  out << "iter,phase,nres,wall_ns\n";
  char buf[64];
  for (const HistoryEntry& h : report.history) {
    std::snprintf(buf, sizeof buf, "%.17g", h.nres);
    out << h.iter << ',' << to_string(h.phase) << ',' << buf << ',' << h.wall_ns << '\n';
  }
}

}  // namespace scare
