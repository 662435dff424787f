#include "scare/care_sda.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace scare {

SdaState sda_initial_state(const Matrix& a, const SymMatrix& g, const SymMatrix& h, double gamma) {
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const LuSolver a_gamma(a - gamma * id, ErrorCode::SingularPivot, "A - gamma I");
  const Matrix a_gamma_inv = a_gamma.inverse();
  const Matrix w = (a - gamma * id).transpose() + h * a_gamma_inv * g;
  const LuSolver w_lu(w, ErrorCode::SingularPivot, "SDA initialization pivot");
  const Matrix w_inv = w_lu.inverse();

  SdaState s;
  s.e_k = id + 2.0 * gamma * w_inv.transpose();
  s.g_k = symmetrize(2.0 * gamma * w_inv.transpose() * g * a_gamma_inv.transpose());
  s.h_k = symmetrize(2.0 * gamma * w_inv * h * a_gamma_inv);
  return s;
}

SdaState sda_step(const SdaState& s) {
  const Eigen::Index n = s.e_k.rows();
  const LuSolver pivot(Matrix::Identity(n, n) + s.g_k * s.h_k, ErrorCode::SingularPivot,
                       "I + G_k H_k");
  const Matrix y_e = pivot.solve(s.e_k);
  const Matrix y_g = pivot.solve(s.g_k * s.e_k.transpose());
  SdaState out;
  out.e_k = s.e_k * y_e;
  out.g_k = symmetrize(s.g_k + s.e_k * y_g);
  out.h_k = symmetrize(s.h_k + s.e_k.transpose() * s.h_k * y_e);
  out.iteration = s.iteration + 1;
  return out;
}

double care_residual(const Matrix& a, const SymMatrix& g, const SymMatrix& h, const SymMatrix& x) {
  const Matrix atx = a.transpose() * x;
  const Matrix xgx = x * g * x;
  const double num = fro(atx + atx.transpose() - xgx + h);
  const double den = 2.0 * fro(atx) + fro(xgx) + fro(h);
  return den > 0.0 ? num / den : num;
}

namespace {

CareSolution run_doubling(const Matrix& a, const SymMatrix& g, const SymMatrix& h, double gamma,
                          const SolverConfig& cfg) {
  SdaState s = sda_initial_state(a, g, h, gamma);
  auto check_psd = [&](const SdaState& st) {
    if (!is_psd(st.h_k, cfg.psd_tol)) {
      throw ScareError(ErrorCode::LossOfPsd,
                       "SDA iterate H_k lost positive semidefiniteness at step " +
                           std::to_string(st.iteration));
    }
  };
  check_psd(s);

  double prev_change = std::numeric_limits<double>::infinity();
  bool done = false;
  while (s.iteration < cfg.max_doubling) {
    SdaState next = sda_step(s);
    if (!next.h_k.allFinite()) {
      throw ScareError(ErrorCode::NotConverged, "SDA iterates became non-finite");
    }
    check_psd(next);
    const double scale = fro(next.h_k);
    const double change = scale > 0.0 ? fro(next.h_k - s.h_k) / scale : fro(next.h_k - s.h_k);
    s = std::move(next);
    // Past the quadratic phase the change sits at roundoff and stops shrinking.
    if (change <= cfg.inner_tol || (change < 1e-8 && change > 0.5 * prev_change) ||
        change == 0.0) {
      done = true;
      break;
    }
    prev_change = change;
  }
  if (!done) {
    throw ScareError(ErrorCode::NotConverged,
                     "SDA did not converge in " + std::to_string(cfg.max_doubling) + " steps");
  }

  CareSolution sol;
  sol.x = s.h_k;
  sol.iterations = s.iteration;
  sol.gamma = gamma;
  sol.care_residual = care_residual(a, g, h, sol.x);
  sol.closed_loop_abscissa = a.rows() <= cfg.hurwitz_check_max
                                 ? spectral_abscissa(a - g * sol.x)
                                 : std::numeric_limits<double>::quiet_NaN();
  return sol;
}

constexpr double kGammaRetryResidual = 1e-10;

}  // namespace

CareSolution solve_care(const Matrix& a, const SymMatrix& g, const SymMatrix& h,
                        const SolverConfig& cfg) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || g.rows() != n || g.cols() != n || h.rows() != n || h.cols() != n) {
    throw ScareError(ErrorCode::DimensionMismatch, "solve_care: A, G, H must be n x n");
  }
  double gamma = cfg.gamma.value_or(default_shift(fro(a), static_cast<long>(n)));
  CareSolution sol;
  for (int attempt = 0;; ++attempt) {
    try {
      sol = run_doubling(a, g, h, gamma, cfg);
      break;
    } catch (const ScareError& e) {
      if (e.code() != ErrorCode::SingularPivot || attempt >= 5) throw;
      gamma *= 2.0;
    }
  }
  if (cfg.gamma || sol.care_residual <= kGammaRetryResidual) return sol;
  for (int k = 0; k < 2; ++k) {
    gamma *= 2.0;
    try {
      CareSolution alt = run_doubling(a, g, h, gamma, cfg);
      if (!(alt.care_residual >= sol.care_residual)) sol = std::move(alt);
    } catch (const ScareError&) {
    }
  }
  return sol;
}

}  // namespace scare
