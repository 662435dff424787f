#include "scare/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "scare/lyap_sda.hpp"

namespace scare {
namespace {

constexpr Eigen::Index kKronCap = 4096;

void cap(bool ok, const char* what) {
  if (!ok) throw ScareError(ErrorCode::OracleSizeCap, what);
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

Matrix lyapunov_operator(const Matrix& e) {
  const Eigen::Index n = e.rows();
  const Matrix id = Matrix::Identity(n, n);
  return kron(id, e.transpose()) + kron(e.transpose(), id);
}

/// Dense n²×n² matrix of a linear map on n×n matrices (column-major vec).
Matrix operator_matrix(Eigen::Index n, const std::function<Matrix(const Matrix&)>& op) {
  Matrix out(n * n, n * n);
  Matrix basis = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      basis(i, j) = 1.0;
      out.col(j * n + i) = vec(op(basis));
      basis(i, j) = 0.0;
    }
  }
  return out;
}

/// Π(Z) for arbitrary (not necessarily symmetric) Z, no symmetrization.
PiBlocks raw_pi(const ScareProblem& p, const Matrix& z) {
  PiBlocks out{Matrix::Zero(p.n(), p.n()), Matrix::Zero(p.n(), p.m()), Matrix::Zero(p.m(), p.m())};
  for (std::size_t i = 0; i < p.a0.size(); ++i) {
    out.pi11 += p.a0[i].transpose() * z * p.a0[i];
    out.pi12 += p.a0[i].transpose() * z * p.b0[i];
    out.pi22 += p.b0[i].transpose() * z * p.b0[i];
  }
  return out;
}

double max_abs_eig(const Matrix& m) { return m.size() ? spectral_radius(m) : 0.0; }

/// Spectral radius of a full-space operator matrix t restricted to symmetric
/// matrices, in the basis E_ii, E_ij + E_ji (i < j).
double symmetric_radius(const Matrix& t, Eigen::Index n) {
  const Eigen::Index dim = n * (n + 1) / 2;
  Matrix restricted(dim, dim);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i, ++col) {
      Vector v = t.col(j * n + i);
      if (i != j) v += t.col(i * n + j);
      const Matrix y = unvec(v, n);
      Eigen::Index row = 0;
      for (Eigen::Index jj = 0; jj < n; ++jj) {
        for (Eigen::Index ii = 0; ii <= jj; ++ii, ++row) restricted(row, col) = y(ii, jj);
      }
    }
  }
  return max_abs_eig(restricted);
}

double scalar_residual(const ScareProblem& p, double x) {
  double pi11 = 0.0, pi12 = 0.0, pi22 = 0.0;
  for (std::size_t i = 0; i < p.a0.size(); ++i) {
    const double al = p.a0[i](0, 0);
    const double be = p.b0[i](0, 0);
    pi11 += al * al * x;
    pi12 += al * be * x;
    pi22 += be * be * x;
  }
  const double s = x * p.b(0, 0) + p.l(0, 0) + pi12;
  return 2.0 * p.a(0, 0) * x + pi11 + p.q(0, 0) - s * s / (p.r(0, 0) + pi22);
}

bool full_rank(const Eigen::MatrixXcd& m, Eigen::Index n) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0) return n == 0;
  const double thresh = static_cast<double>(n) * kEps * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > thresh ? 1 : 0;
  return rank >= n;
}

}  // namespace

SymMatrix kron_lyap_solve(const Matrix& e, const SymMatrix& c) {
  const Eigen::Index n = e.rows();
  if (e.cols() != n || c.rows() != n || c.cols() != n) {
    throw ScareError(ErrorCode::DimensionMismatch, "kron_lyap_solve: E and C must be n x n");
  }
  cap(n <= 64, "kron_lyap_solve is limited to n <= 64");
  const LuSolver op(lyapunov_operator(e), ErrorCode::SingularOperator, "I kron E^T + E^T kron I");
  return symmetrize(unvec(op.solve(-vec(c)), n));
}

SymMatrix newton_kleinman_care(const Matrix& a, const SymMatrix& g, const SymMatrix& h,
                               const SymMatrix& x0, int max_iter) {
  using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  cap(n <= 32, "newton_kleinman_care is limited to n <= 32");
  // Extended precision: the oracle must stay accurate where ‖X‖ is large and
  // the double-precision residual XGX + H cancels.
  const LMatrix al = a.cast<long double>();
  const LMatrix gl = g.cast<long double>();
  const LMatrix hl = h.cast<long double>();
  const LMatrix id = LMatrix::Identity(n, n);
  LMatrix x = x0.cast<long double>();
  long double prev = std::numeric_limits<long double>::infinity();
  for (int j = 0; j < max_iter; ++j) {
    const LMatrix closed = al - gl * x;
    if (!is_hurwitz(closed.cast<double>(), 0.0)) {
      throw ScareError(ErrorCode::NotHurwitz,
                       "Newton-Kleinman closed loop not Hurwitz at step " + std::to_string(j));
    }
    LMatrix op(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        op.block(i * n, k * n, n, n) =
            closed(k, i) * id + (i == k ? LMatrix(closed.transpose()) : LMatrix::Zero(n, n));
    Eigen::PartialPivLU<LMatrix> lu(op);
    const LMatrix rhs = -(hl + x * gl * x);
    const LMatrix y = lu.solve(rhs.reshaped(n * n, 1)).reshaped(n, n);
    const LMatrix next = 0.5L * (y + y.transpose());
    const long double change = (next - x).norm() / std::max(next.norm(), 1e-300L);
    x = next;
    if (!x.allFinite()) throw ScareError(ErrorCode::SingularOperator, "Newton-Kleinman diverged");
    if (change < 1e-18L || (change < 1e-12L && change >= 0.5L * prev)) break;
    prev = change;
  }
  return x.cast<double>();
}

double scalar_scare_solve(const ScareProblem& p) {
  if (p.n() != 1 || p.m() != 1) {
    throw ScareError(ErrorCode::DimensionMismatch, "scalar_scare_solve needs n = m = 1");
  }
  double lo = 0.0;
  if (scalar_residual(p, lo) < 0.0) throw ScareError(ErrorCode::NoPsdRoot, "R(0) < 0");
  double hi = 1.0;
  while (scalar_residual(p, hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e150) throw ScareError(ErrorCode::NoPsdRoot, "no sign change below 1e150");
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = scalar_residual(p, mid);
    if (v >= 0.0) lo = mid; else hi = mid;
    if (std::abs(v) < 1e-14 * (1.0 + std::abs(p.q(0, 0)))) {
      lo = hi = mid;
      break;
    }
  }
  // The residual is concave, so the largest nonnegative root is the stabilizing one.
  return std::abs(scalar_residual(p, lo)) <= std::abs(scalar_residual(p, hi)) ? lo : hi;
}

bool is_hurwitz(const Matrix& m, double stab_tol) {
  return m.size() == 0 || spectral_abscissa(m) < -stab_tol;
}

bool hautus_stabilizable(const Matrix& a, const Matrix& b, double stab_tol) {
  const Eigen::Index n = a.rows();
  cap(n <= 200, "hautus_stabilizable is limited to n <= 200");
  const ComplexVector ev = eigenvalues(a);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k).real() < -stab_tol) continue;
    Eigen::MatrixXcd m(n, n + b.cols());
    m.leftCols(n) = a.cast<std::complex<double>>() -
                    ev(k) * Eigen::MatrixXcd::Identity(n, n);
    m.rightCols(b.cols()) = b.cast<std::complex<double>>();
    if (!full_rank(m, n)) return false;
  }
  return true;
}

bool hautus_detectable(const Matrix& c, const Matrix& a, double stab_tol) {
  return hautus_stabilizable(a.transpose(), c.transpose(), stab_tol);
}

bool mean_square_stable(const ScareProblem& p, const Matrix& f, double stab_tol) {
  const Eigen::Index n = p.n();
  const Matrix af = p.a + p.b * f;
  std::vector<Matrix> k;
  for (std::size_t i = 0; i < p.a0.size(); ++i) k.push_back(p.a0[i] + p.b0[i] * f);

  if (n * n <= kKronCap) {
    Matrix m = lyapunov_operator(af);
    for (const Matrix& ki : k) m += kron(ki.transpose(), ki.transpose());
    return spectral_abscissa(m) < -stab_tol;
  }

  if (!is_hurwitz(af, stab_tol)) return false;
  if (k.empty()) return true;
  auto apply = [&](const SymMatrix& z) {
    SymMatrix pz = SymMatrix::Zero(n, n);
    for (const Matrix& ki : k) pz += ki.transpose() * z * ki;
    return solve_lyapunov(af, symmetrize(pz));
  };
  // Collatz–Wielandt bounds for the cone-preserving map T = −L⁻¹Π_F:
  // λ_min(Z^{-1/2}T(Z)Z^{-1/2}) ≤ ρ(T) ≤ λ_max(Z^{-1/2}T(Z)Z^{-1/2}) for Z ≻ 0.
  SymMatrix z = SymMatrix::Identity(n, n);
  for (int it = 0; it < 500; ++it) {
    const SymMatrix tz = apply(z);
    const Eigen::SelfAdjointEigenSolver<Matrix> ze(z);
    const Matrix zis = ze.eigenvectors() * ze.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       ze.eigenvectors().transpose();
    const Eigen::SelfAdjointEigenSolver<Matrix> be(symmetrize(zis * tz * zis),
                                                   Eigen::EigenvaluesOnly);
    if (be.eigenvalues().maxCoeff() < 1.0) return true;
    if (be.eigenvalues().minCoeff() >= 1.0) return false;
    const double norm = fro(tz);
    if (norm == 0.0) return true;
    z = symmetrize(tz / norm + 1e-12 * SymMatrix::Identity(n, n));
  }
  return false;
}

RateCertificate rlinear_rate(const ScareProblem& p, const SymMatrix& x_hat) {
  const Eigen::Index n = p.n();
  cap(n * n <= kKronCap, "rlinear_rate is limited to n^2 <= 4096");
  const CareCoefficients c = assemble_care(p, x_hat);
  const SymSolver rc(c.r_c, "R + Pi22(X)");
  const Matrix rinv_bt = rc.solve(p.b.transpose());    // R̂⁻¹Bᵀ
  const Matrix rinv_lt = rc.solve(c.l_c.transpose());  // R̂⁻¹L̂ᵀ
  Matrix proj(n + p.m(), n);
  proj << Matrix::Identity(n, n), -rinv_lt;

  auto psi = [&](const Matrix& z) -> Matrix {
    const PiBlocks pz = raw_pi(p, z);
    const Matrix pz21 = raw_pi(p, z.transpose()).pi12.transpose();
    const Matrix gain = rinv_bt.transpose() * pz.pi22 * rinv_bt;
    const Matrix left = (rinv_lt.transpose() * pz.pi22 * rinv_bt - pz.pi12 * rinv_bt) * x_hat;
    const Matrix right = x_hat * (rinv_bt.transpose() * pz.pi22 * rinv_lt - rinv_bt.transpose() * pz21);
    Matrix stacked(n + p.m(), n + p.m());
    stacked << pz.pi11, pz.pi12, pz21, pz.pi22;
    return left + right + x_hat * gain * x_hat + proj.transpose() * stacked * proj;
  };

  const Matrix lmat = lyapunov_operator(c.a_c - c.g_c * x_hat);
  const Matrix pmat = operator_matrix(n, psi);
  const LuSolver l_lu(lmat, ErrorCode::SingularOperator, "L_X");
  const Matrix t = l_lu.solve(pmat);

  RateCertificate cert;
  cert.dimension = n * n;
  cert.rho_full = max_abs_eig(t);
  cert.rho = symmetric_radius(t, n);
  return cert;
}

bool check_decreasing_start(const ScareProblem& p, const SymMatrix& x0, const SymMatrix& x_hat,
                            double psd_tol, double stab_tol) {
  if (lambda_min(symmetrize(x0 - x_hat)) < -psd_tol * (1.0 + fro(x_hat))) return false;
  const CareCoefficients c = assemble_care(p, x0);
  if (!is_hurwitz(c.a_c - c.g_c * x0, stab_tol)) return false;
  const ResidualReport rep = normalized_residual(p, x0);
  const double scale =
      1.0 + rep.ax_term + rep.q_term + rep.pi11_term + rep.b_term;
  return lambda_max(rep.residual_matrix) <= psd_tol * scale;
}

double newton_start_radius(const ScareProblem& p, const SymMatrix& x0) {
  const Eigen::Index n = p.n();
  cap(n * n <= kKronCap, "check_newton_start is limited to n^2 <= 4096");
  const NewtonOperators op = newton_operators(p, x0);
  const Matrix pmat =
      operator_matrix(n, [&](const Matrix& z) -> Matrix {
    const PiBlocks pz = raw_pi(p, z);
    Matrix stacked(n + p.m(), n + p.m());
    stacked << pz.pi11, pz.pi12, raw_pi(p, z.transpose()).pi12.transpose(), pz.pi22;
    return op.p_k.transpose() * stacked * op.p_k;
  });
  const LuSolver l_lu(lyapunov_operator(op.a_xk), ErrorCode::SingularOperator, "L_{A_X0}");
  return max_abs_eig(l_lu.solve(pmat));
}

bool check_newton_start(const ScareProblem& p, const SymMatrix& x0, double stab_tol) {
  const NewtonOperators op = newton_operators(p, x0);
  if (!is_hurwitz(op.a_xk, stab_tol)) return false;
  return newton_start_radius(p, x0) < 1.0;
}

}  // namespace scare
