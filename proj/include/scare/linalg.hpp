#pragma once

#include <Eigen/Dense>

#include "scare/errors.hpp"

#include <complex>
#include <limits>
#include <string_view>

namespace scare {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Real symmetric matrix. Symmetry is an invariant maintained by the producers
/// (every nominally symmetric result goes through symmetrize()).
using SymMatrix = Eigen::MatrixXd;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline SymMatrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

inline double fro(const Matrix& m) { return m.norm(); }

double spectral_norm(const Matrix& m);
double lambda_min(const SymMatrix& m);
double lambda_max(const SymMatrix& m);
ComplexVector eigenvalues(const Matrix& m);
/// Largest real part over the spectrum.
double spectral_abscissa(const Matrix& m);
double spectral_radius(const Matrix& m);

/// lambda_min(m) >= -tol * (1 + ||m||_F).
bool is_psd(const SymMatrix& m, double tol);

Matrix kron(const Matrix& a, const Matrix& b);

/// Linear solves against a symmetric positive-definite weight (R_c, R_k, ...).
/// Factorizes with LDLT and rejects the matrix when the reciprocal condition
/// estimate drops below 100 * eps.
class SymSolver {
 public:
  SymSolver(const SymMatrix& m, std::string_view what);

  Matrix solve(const Matrix& rhs) const { return ldlt_.solve(rhs); }
  double rcond() const { return rcond_; }

 private:
  Eigen::LDLT<Matrix> ldlt_;
  double rcond_ = 0.0;
};

/// General square solve with a singularity check; throws ScareError(code).
class LuSolver {
 public:
  LuSolver(const Matrix& m, ErrorCode code, std::string_view what);

  Matrix solve(const Matrix& rhs) const { return lu_.solve(rhs); }
  Matrix inverse() const { return lu_.inverse(); }
  double rcond() const { return rcond_; }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

}  // namespace scare
