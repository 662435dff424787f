#pragma once

#include <cstdint>
#include <random>

#include "scare/linalg.hpp"
#include "scare/problem.hpp"

namespace scare::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                            double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

inline SymMatrix random_psd(std::mt19937_64& rng, Eigen::Index n, double shift = 0.0) {
  const Matrix c = random_matrix(rng, n, n);
  return symmetrize(c.transpose() * c / static_cast<double>(n)) +
         shift * Matrix::Identity(n, n);
}

/// Random matrix shifted so its spectral abscissa is -margin.
inline Matrix random_hurwitz(std::mt19937_64& rng, Eigen::Index n, double margin = 0.5) {
  Matrix m = random_matrix(rng, n, n);
  m -= (spectral_abscissa(m) + margin) * Matrix::Identity(n, n);
  return m;
}

/// Small, solvable SCARE: Hurwitz A, R ≻ 0, Q − LR⁻¹Lᵀ ≻ 0, mild noise.
inline ScareProblem random_problem(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m,
                                   int r, double noise = 0.3, bool with_l = true) {
  const Matrix a = random_hurwitz(rng, n, 0.3);
  const Matrix b = random_matrix(rng, n, m);
  const SymMatrix rr = random_psd(rng, m, 1.0);
  Matrix l = Matrix::Zero(n, m);
  if (with_l) l = random_matrix(rng, n, m, 0.3);
  const SymMatrix q =
      random_psd(rng, n, 0.2) + symmetrize(l * rr.ldlt().solve(l.transpose()));
  std::vector<Matrix> a0, b0;
  for (int i = 0; i < r; ++i) {
    a0.push_back(random_matrix(rng, n, n, noise / std::sqrt(static_cast<double>(n))));
    b0.push_back(random_matrix(rng, n, m, noise / std::sqrt(static_cast<double>(n))));
  }
  return make_problem(a, b, q, rr, l, a0, b0);
}

inline double rel_diff(const Matrix& x, const Matrix& y) {
  return fro(x - y) / std::max(1.0, fro(y));
}

}  // namespace scare::testing
