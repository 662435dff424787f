#include "scare/lyap_sda.hpp"

#include <string>

namespace scare {

CayleyForm cayley_dare_form(const Matrix& e, const SymMatrix& c, double alpha) {
  const Eigen::Index n = e.rows();
  if (e.cols() != n || c.rows() != n || c.cols() != n) {
    throw ScareError(ErrorCode::DimensionMismatch, "cayley_dare_form: E and C must be n x n");
  }
  if (!(alpha > 0.0)) throw ScareError(ErrorCode::InvalidInput, "alpha must be positive");
  const Matrix id = Matrix::Identity(n, n);
  const LuSolver shifted(e - alpha * id, ErrorCode::SingularShift, "E - alpha I");
  const Matrix inv = shifted.inverse();
  CayleyForm out;
  out.a_d = id + 2.0 * alpha * inv;
  out.h_d = symmetrize(2.0 * alpha * inv.transpose() * c * inv);
  return out;
}

double lyapunov_residual(const Matrix& e, const SymMatrix& c, const SymMatrix& y) {
  const Matrix ety = e.transpose() * y;
  const double num = fro(ety + ety.transpose() + c);
  const double den = 2.0 * fro(ety) + fro(c);
  return den > 0.0 ? num / den : num;
}

LyapunovSolution solve_lyapunov_report(const Matrix& e, const SymMatrix& c,
                                       std::optional<double> alpha, const SolverConfig& cfg) {
  const Eigen::Index n = e.rows();
  if (e.cols() != n || c.rows() != n || c.cols() != n) {
    throw ScareError(ErrorCode::DimensionMismatch, "solve_lyapunov: E and C must be n x n");
  }
  if (n <= cfg.hurwitz_check_max) {
    const double abscissa = spectral_abscissa(e);
    if (abscissa >= -cfg.stab_tol) {
      throw ScareError(ErrorCode::NotHurwitz,
                       "Lyapunov coefficient is not Hurwitz (spectral abscissa " +
                           std::to_string(abscissa) + ")");
    }
  }
  const double a = alpha.value_or(default_shift(fro(e), static_cast<long>(n)));
  const CayleyForm cf = cayley_dare_form(e, c, a);

  LyapunovSolution sol;
  sol.alpha = a;
  Matrix ek = cf.a_d;
  SymMatrix y = cf.h_d;
  const double e0_norm = fro(ek);
  for (int k = 1; k <= cfg.max_doubling; ++k) {
    const SymMatrix increment = symmetrize(ek.transpose() * y * ek);
    y = symmetrize(y + increment);
    ek = ek * ek;
    sol.iterations = k;
    if (!y.allFinite() || !ek.allFinite() || fro(ek) > 1e150 * (1.0 + e0_norm)) {
      throw ScareError(ErrorCode::NotHurwitz, "Lyapunov doubling diverged");
    }
    sol.residual = lyapunov_residual(e, c, y);
    if (sol.residual <= cfg.inner_tol) break;
    // Once E_k has decayed the increments vanish below rounding and Y cannot move.
    const double y_norm = fro(y);
    if (fro(increment) <= kEps * y_norm || fro(ek) <= kEps) break;
    if (k == cfg.max_doubling) {
      throw ScareError(ErrorCode::NotConverged,
                       "L-SDA did not converge in " + std::to_string(cfg.max_doubling) + " steps");
    }
  }
  sol.y = std::move(y);
  return sol;
}

SymMatrix solve_lyapunov(const Matrix& e, const SymMatrix& c, std::optional<double> alpha,
                         const SolverConfig& cfg) {
  return solve_lyapunov_report(e, c, alpha, cfg).y;
}

}  // namespace scare
