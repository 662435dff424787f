#include "scare/benchmarks.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace scare {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix normal_matrix(std::uint64_t seed, int example, int which, int i, Eigen::Index rows,
                     Eigen::Index cols) {
  const std::uint64_t tag = (static_cast<std::uint64_t>(example) << 8) |
                            (static_cast<std::uint64_t>(which) << 4) |
                            static_cast<std::uint64_t>(i);
  const std::uint64_t key = splitmix64(seed ^ splitmix64(tag));
  constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53
  Matrix out(rows, cols);
  const Eigen::Index count = rows * cols;
  std::uint64_t j = 0;
  for (Eigen::Index k = 0; k < count; k += 2, j += 2) {
    const double u1 = 1.0 - static_cast<double>(splitmix64(key + j) >> 11) * kUnit;
    const double u2 = static_cast<double>(splitmix64(key + j + 1) >> 11) * kUnit;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out.data()[k] = radius * std::cos(angle);
    if (k + 1 < count) out.data()[k + 1] = radius * std::sin(angle);
  }
  return out;
}

double norm_inf(const Matrix& m) {
  return m.size() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
}

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> data) {
  const auto r = static_cast<Eigen::Index>(data.size());
  const auto c = static_cast<Eigen::Index>(data.begin()->size());
  Matrix out(r, c);
  Eigen::Index i = 0;
  for (const auto& row : data) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

void add_noise(ScareProblem& p, const BenchmarkSpec& spec, int example, int count, double fa,
               double fb) {
  const double a_inf = norm_inf(p.a);
  const double b_inf = norm_inf(p.b);
  for (int i = 1; i <= count; ++i) {
    const Matrix ah = normal_matrix(spec.seed, example, 0, i, p.a.rows(), p.a.cols());
    const Matrix bh = normal_matrix(spec.seed, example, 1, i, p.b.rows(), p.b.cols());
    p.a0.push_back(fa * i * a_inf / norm_inf(ah) * ah);
    p.b0.push_back(fb * i * b_inf / norm_inf(bh) * bh);
  }
}

ScareProblem ex1() {
  const Matrix a = diag({0.9512, 0.9048});
  const Matrix b = rows({{4.877, 4.877}, {-1.1895, 3.569}});
  return make_problem(a, b, diag({0.005, 0.02}), diag({1.0 / 3.0, 3.0}), {},
                      {rows({{-0.1, 0.1}, {-0.2, 0.2}}), rows({{1, -0.1}, {0.5, 0}}),
                       rows({{0, -0.2}, {0.2, 0.5}})},
                      {rows({{0, -0.1}, {0.1, 0}}), rows({{0.5, 1}, {-0.1, 0.2}}),
                       rows({{1, -1}, {-0.2, 1}})});
}

ScareProblem ex2(double e) {
  const Matrix a = e * rows({{7.0 / 3, 2.0 / 3, 0}, {2.0 / 3, 2, -2.0 / 3}, {0, -2.0 / 3, 5.0 / 3}});
  const Matrix b = Matrix::Identity(3, 3) / std::sqrt(e);
  const double ie = 1.0 / e;
  const Matrix q = rows({{(4 * e + 4 + ie) / 9, 2 * (2 * e - 1 - ie) / 9, 2 * (2 - e - ie) / 9},
                         {2 * (2 * e - 1 - ie) / 9, (1 + 4 * e + 4 * ie) / 9, 2 * (-1 - e + 2 * ie) / 9},
                         {2 * (2 - e - ie) / 9, 2 * (-1 - e + 2 * ie) / 9, (4 + e + 4 * ie) / 9}});
  return make_problem(a, b, q, Matrix::Identity(3, 3), {},
                      {0.1 * rows({{0.1, -0.1, 0.01}, {-0.2, 0.1, -0.1}, {0.05, -0.01, 0.3}})},
                      {0.1 * rows({{0, 0, 0.2}, {0.36, -0.6, 0}, {0, -0.95, -0.032}})});
}

ScareProblem ex3() {
  const Matrix a = diag({0.9512, 0.9048});
  const Matrix b = rows({{4.877, 4.877}, {-1.1895, 3.569}});
  return make_problem(a, b, rows({{0.0028, -0.0013}, {-0.0013, 0.019}}), diag({1.0 / 3.0, 3.0}),
                      {}, {6.5 * rows({{0.1, 0.2}, {0.2, 0.1}})},
                      {6.5 * Matrix::Identity(2, 2)});
}

ScareProblem ex4(double e) {
  return make_problem(rows({{3 - e, 1}, {4, 2 - e}}), rows({{1}, {1}}),
                      rows({{4 * e - 11, 2 * e - 5}, {2 * e - 5, 2 * e - 2}}), rows({{1}}), {},
                      {rows({{0.1, -0.1}, {-0.2, 0.1}})}, {rows({{0.1}, {0}})});
}

ScareProblem ex5(const BenchmarkSpec& spec) {
  const int m = spec.m;
  if (m < 2) throw ScareError(ErrorCode::InvalidInput, "ex5 needs m >= 2");
  const Eigen::Index n = 2 * m - 1;
  Matrix a = Matrix::Zero(n, n);
  const Matrix c = rows({{-1, 0}, {1, 0}});
  const Matrix d = rows({{0, 0}, {-1, 0}});
  for (int blk = 0; blk < m - 1; ++blk) {
    a.block(2 * blk, 2 * blk, 2, 2) = c;
    if (blk < m - 2) a.block(2 * blk, 2 * blk + 2, 2, 2) = d;
  }
  a(n - 2, n - 1) = -1.0;
  a(n - 1, n - 1) = -1.0;
  Matrix b = Matrix::Zero(n, m);
  for (int j = 0; j < m; ++j) b(2 * j, j) = 1.0;
  Matrix q = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; i += 2) q(i, i) = 10.0;
  ScareProblem p = make_problem(a, b, q, Matrix::Identity(m, m));
  add_noise(p, spec, 5, 5, 0.1, 0.15);
  return p;
}

ScareProblem ex6(const BenchmarkSpec& spec) {
  const Matrix a = rows({{0, 1, 0, 0, 0},
                         {0, 0.0696, 0, -0.0307, -1.91e-4},
                         {0, 0, 0, 1, 0},
                         {0, 0.123, 0, 0.0696, 6.13e-4},
                         {0, 0, 0, 0, -0.1}});
  const Matrix b = rows({{0, 0}, {-9.13e-5, 0}, {0, 0}, {2.42e-5, -1.30e-4}, {0, 0}});
  ScareProblem p = make_problem(a, b, diag({1000, 1000, 1000, 1000, 0}), Matrix::Identity(2, 2));
  add_noise(p, spec, 6, 4, 0.2, 0.1);
  return p;
}

ScareProblem ex7(const BenchmarkSpec& spec) {
  const Matrix a = rows({{3.958e-5, 0, 0, 0, -5.866, -6.985},
                         {2.116e-4, 0, 0, 5.866, 0, -84.66},
                         {-0.1158, 0, 0, 6.985, 84.66, 0},
                         {0, 0, 0, 1.791e-4, 4.303e-3, -5.006e-3},
                         {0, 0, 0, -5.329e-3, 0, -4.259e-2},
                         {0, 0, 0, -4.769e-3, 3.253e-2, -1.791e-4}});
  const Matrix b = rows({{1.076e-4, 0, 0, 0},
                         {0, 0, 0, 0},
                         {0, 0, 0, 0},
                         {0, 7.78e-5, 0, 7.78e-5},
                         {3.964e-6, 0, 1.321e-5, 0},
                         {0, 1.211e-6, 0, 1.171e-5}});
  ScareProblem p = make_problem(a, b, 5000.0 * Matrix::Identity(6, 6),
                                2e-4 * Matrix::Identity(4, 4));
  add_noise(p, spec, 7, 3, 0.012, 0.012);
  return p;
}

ScareProblem ex8(const BenchmarkSpec& spec) {
  const Matrix a = rows({{0, -8.208e-4, -1.047e-2, 0, -1.234e-4, 1.178, 0, -9.8, 0},
                         {8.208e-4, 0, -1.603e-3, 1.234e-4, 0, 2.203e-2, 9.8, -5.436e-4, 0},
                         {1.047e-2, 1.603e-3, 0, -1.178, -2.203e-2, 0, 0, 0, 9.82e-1},
                         {0, 0, 0, 0, 7.738e-4, -9.871e-3, 0, 0, 0},
                         {0, 0, 0, -7.738e-4, 0, -1.511e-3, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 1, 1.386e-8, 2.499e-4, 2.617e-6, -5.464e-4, 0},
                         {0, 0, 0, 0, 1, 0, -9.65e-3, 0, 0},
                         {0, 0, 0, 0, 0, 0, 0, 0, -0.1}});
  const double ix = 0.01466;
  const double iz = 0.02848;
  Matrix b = Matrix::Zero(9, 4);
  b(2, 0) = -1.0;
  b(3, 1) = 1.0 / ix;
  b(4, 2) = 1.0 / ix;
  b(5, 3) = 1.0 / iz;
  ScareProblem p = make_problem(a, b, diag({2000, 2000, 3000, 10, 10, 100, 0, 0, 0}),
                                Matrix::Identity(4, 4));
  add_noise(p, spec, 8, 3, 0.025, 0.01);
  return p;
}

}  // namespace

ScareProblem make_benchmark(const BenchmarkSpec& spec) {
  if (spec.id == "ex1") return ex1();
  if (spec.id == "ex2") return ex2(spec.eps.value_or(0.01));
  if (spec.id == "ex3") return ex3();
  if (spec.id == "ex4") return ex4(spec.eps.value_or(5.0));
  if (spec.id == "ex5") return ex5(spec);
  if (spec.id == "ex6") return ex6(spec);
  if (spec.id == "ex7") return ex7(spec);
  if (spec.id == "ex8") return ex8(spec);
  throw ScareError(ErrorCode::UnknownBenchmark, "unknown benchmark: " + spec.id);
}

BenchmarkSpec parse_benchmark(const std::string& text, std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.seed = seed;
  std::istringstream in(text);
  std::string item;
  std::getline(in, spec.id, ':');
  while (std::getline(in, item, ':')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ScareError(ErrorCode::InvalidInput, "bad benchmark parameter: " + item);
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "eps") {
        spec.eps = std::stod(value);
      } else if (key == "m") {
        spec.m = std::stoi(value);
      } else {
        throw ScareError(ErrorCode::InvalidInput, "unknown benchmark parameter: " + key);
      }
    } catch (const std::logic_error&) {
      throw ScareError(ErrorCode::InvalidInput, "bad benchmark parameter value: " + item);
    }
  }
  if (spec.id.size() != 3 || spec.id.rfind("ex", 0) != 0 || spec.id[2] < '1' || spec.id[2] > '8') {
    throw ScareError(ErrorCode::UnknownBenchmark, "unknown benchmark: " + spec.id);
  }
  return spec;
}

std::vector<BenchmarkSpec> parse_benchmark_list(const std::string& text, std::uint64_t seed) {
  std::vector<BenchmarkSpec> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      for (int k = 1; k <= 8; ++k) out.push_back(parse_benchmark("ex" + std::to_string(k), seed));
    } else {
      out.push_back(parse_benchmark(item, seed));
    }
  }
  return out;
}

std::string describe(const BenchmarkSpec& spec) {
  std::string out = spec.id;
  if (spec.eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, ":eps=%g", *spec.eps);
    out += buf;
  }
  if (spec.id == "ex5") out += ":m=" + std::to_string(spec.m);
  return out;
}

}  // namespace scare
