#include "scare/linalg.hpp"

#include <algorithm>
#include <string>

namespace scare {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double lambda_min(const SymMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max(const SymMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(m.rows() - 1);
}

ComplexVector eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  return es.eigenvalues();
}

double spectral_abscissa(const Matrix& m) {
  const ComplexVector ev = eigenvalues(m);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::max(best, ev(i).real());
  return best;
}

double spectral_radius(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

bool is_psd(const SymMatrix& m, double tol) {
  return lambda_min(m) >= -tol * (1.0 + fro(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SymSolver::SymSolver(const SymMatrix& m, std::string_view what) : ldlt_(m) {
  rcond_ = m.size() == 0 ? 1.0 : ldlt_.rcond();
  if (ldlt_.info() != Eigen::Success || !(rcond_ >= 100.0 * kEps)) {
    throw ScareError(ErrorCode::SingularWeight,
                     std::string(what) + " is numerically singular (rcond " +
                         std::to_string(rcond_) + ")");
  }
}

LuSolver::LuSolver(const Matrix& m, ErrorCode code, std::string_view what) : lu_(m) {
  rcond_ = m.size() == 0 ? 1.0 : lu_.rcond();
  if (!(rcond_ >= 100.0 * kEps) || !lu_.matrixLU().allFinite()) {
    throw ScareError(code, std::string(what) + " is numerically singular (rcond " +
                               std::to_string(rcond_) + ")");
  }
}

}  // namespace scare
