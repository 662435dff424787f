#include "scare/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "scare/care_sda.hpp"
#include "scare/lyap_sda.hpp"
#include "scare/moebius.hpp"

namespace scare {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Fpc: return "fpc";
    case Phase::Nt: return "nt";
    case Phase::Mnt: return "mnt";
    case Phase::Gl: return "gl";
  }
  return "fpc";
}

std::string_view to_string(Monotone direction) {
  switch (direction) {
    case Monotone::Nondecreasing: return "nondecreasing";
    case Monotone::Nonincreasing: return "nonincreasing";
    case Monotone::None: return "none";
  }
  return "none";
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Fpc: return "fpc";
    case SolverKind::Nt: return "nt";
    case SolverKind::Mnt: return "mnt";
    case SolverKind::FpcNt: return "fpc-nt";
    case SolverKind::FpcMnt: return "fpc-mnt";
    case SolverKind::GlFp: return "gl-fp";
  }
  return "fpc";
}

SolverKind parse_solver(std::string_view text) {
  for (SolverKind k : {SolverKind::Fpc, SolverKind::Nt, SolverKind::Mnt, SolverKind::FpcNt,
                       SolverKind::FpcMnt, SolverKind::GlFp}) {
    if (text == to_string(k)) return k;
  }
  throw ScareError(ErrorCode::InvalidInput, "unknown solver: " + std::string(text));
}

namespace {

using Clock = std::chrono::steady_clock;

/// Accumulates history, iterates and the observed Loewner direction.
class Tracker {
 public:
  Tracker(const SymMatrix& x0, const SolverConfig& cfg)
      : cfg_(cfg), start_(Clock::now()), last_(x0) {
    report_.x = x0;
    if (cfg.record_iterates) report_.iterates.push_back(x0);
  }

  /// Records X_{k+1}; returns its NRes.
  double push(const ScareProblem& p, const SymMatrix& x, Phase phase) {
    const double r = nres(p, x);
    const SymMatrix diff = x - last_;
    const double slack = cfg_.psd_tol * (1.0 + fro(last_));
    if (x.rows() <= kMonotoneCheckMax) {
      const Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -slack) increasing_ = false;
      if (es.eigenvalues().maxCoeff() > slack) decreasing_ = false;
    }
    last_spectral_step_ = spectral_norm(diff);
    last_spectral_norm_ = spectral_norm(x);
    last_ = x;
    report_.x = x;
    ++iter_;
    report_.history.push_back({iter_, phase, r, elapsed()});
    if (cfg_.record_iterates) report_.iterates.push_back(x);
    return r;
  }

  double last_step() const { return last_spectral_step_; }
  double last_norm() const { return last_spectral_norm_; }
  const SymMatrix& current() const { return last_; }
  SolveCounts& counts() { return report_.counts; }

  SolveReport finish(bool converged) {
    report_.converged = converged;
    if (increasing_ && !decreasing_) {
      report_.monotone_direction = Monotone::Nondecreasing;
    } else if (decreasing_ && !increasing_) {
      report_.monotone_direction = Monotone::Nonincreasing;
    } else if (increasing_ && decreasing_ && !report_.history.empty()) {
      report_.monotone_direction = Monotone::Nondecreasing;
    }
    report_.wall_ns = elapsed();
    return std::move(report_);
  }

 private:
  static constexpr Eigen::Index kMonotoneCheckMax = 400;

  std::int64_t elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
  }

  const SolverConfig& cfg_;
  Clock::time_point start_;
  SymMatrix last_;
  SolveReport report_;
  int iter_ = 0;
  bool increasing_ = true;
  bool decreasing_ = true;
  double last_spectral_step_ = 0.0;
  double last_spectral_norm_ = 0.0;
};

[[noreturn]] void rethrow_at(const ScareError& e, std::string_view phase, int step) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  throw ScareError(e.code(), std::string(phase) + " step " + std::to_string(step) + ": " + msg);
}

void check_start(const ScareProblem& p, const SymMatrix& x0, const SolverConfig& cfg) {
  cfg.check();
  if (x0.rows() != p.n() || x0.cols() != p.n()) {
    throw ScareError(ErrorCode::DimensionMismatch, "x0 must be n x n");
  }
}

enum class Stop { Converged, Warm, Capped };

Stop run_fpc(const ScareProblem& p, Tracker& t, const SolverConfig& cfg, bool warm) {
  for (int k = 1; k <= cfg.max_outer; ++k) {
    double r = 0.0;
    try {
      const CareCoefficients c = assemble_care(p, t.current());
      const CareSolution sol = solve_care(c.a_c, c.g_c, c.h_c, cfg);
      ++t.counts().care_solves;
      r = t.push(p, sol.x, Phase::Fpc);
    } catch (const ScareError& e) {
      rethrow_at(e, "fpc", k);
    }
    if (r <= cfg.outer_tol) return Stop::Converged;
    const double scale = cfg.warm_relative ? std::max(1.0, t.last_norm()) : 1.0;
    if (warm && t.last_step() < cfg.warm_threshold * scale) return Stop::Warm;
  }
  return Stop::Capped;
}

bool run_nt(const ScareProblem& p, Tracker& t, const SolverConfig& cfg) {
  const double inner_tol = cfg.effective_newton_inner_tol();
  for (int k = 1; k <= cfg.max_outer; ++k) {
    double r = 0.0;
    try {
      const NewtonOperators op = newton_operators(p, t.current());
      SymMatrix y = t.current();
      bool inner_done = false;
      for (int j = 1; j <= cfg.max_inner; ++j) {
        const SymMatrix c = symmetrize(op.project(pi_of(p, y)) + op.m_xk);
        SymMatrix next = solve_lyapunov(op.a_xk, c, cfg.alpha, cfg);
        ++t.counts().lyap_solves;
        const double moved = fro(next - y);
        y = std::move(next);
        if (newton_step_residual(p, op, y) <= inner_tol || moved <= 10.0 * kEps * fro(y)) {
          inner_done = true;
          break;
        }
      }
      if (!inner_done) {
        throw ScareError(ErrorCode::InnerStalled, "inner fixed-point sweeps exceeded max_inner");
      }
      ++t.counts().newton_steps;
      r = t.push(p, y, Phase::Nt);
    } catch (const ScareError& e) {
      rethrow_at(e, "nt", k);
    }
    if (r <= cfg.outer_tol) return true;
  }
  return false;
}

bool run_mnt(const ScareProblem& p, Tracker& t, const SolverConfig& cfg) {
  for (int k = 1; k <= cfg.max_outer; ++k) {
    double r = 0.0;
    try {
      const NewtonOperators op = newton_operators(p, t.current());
      const SymMatrix c = symmetrize(op.project(pi_of(p, t.current())) + op.m_xk);
      SymMatrix y = solve_lyapunov(op.a_xk, c, cfg.alpha, cfg);
      ++t.counts().lyap_solves;
      ++t.counts().newton_steps;
      r = t.push(p, y, Phase::Mnt);
    } catch (const ScareError& e) {
      rethrow_at(e, "mnt", k);
    }
    if (r <= cfg.outer_tol) return true;
  }
  return false;
}

SolveReport hybrid(const ScareProblem& p, const SolverConfig& cfg, bool modified) {
  const SymMatrix x0 = SymMatrix::Zero(p.n(), p.n());
  check_start(p, x0, cfg);
  Tracker t(x0, cfg);
  run_fpc(p, t, cfg, true);
  const bool ok = modified ? run_mnt(p, t, cfg) : run_nt(p, t, cfg);
  return t.finish(ok);
}

}  // namespace

double newton_step_residual(const ScareProblem& p, const NewtonOperators& op, const SymMatrix& y) {
  const Matrix aty = op.a_xk.transpose() * y;
  const SymMatrix rhs = symmetrize(op.project(pi_of(p, y)) + op.m_xk);
  const double num = fro(aty + aty.transpose() + rhs);
  const double den = 2.0 * fro(aty) + fro(rhs);
  return den > 0.0 ? num / den : num;
}

SymMatrix mnt_equivalence_residual(const ScareProblem& p, const SymMatrix& xk,
                                   const SymMatrix& xk1) {
  const CareCoefficients c = assemble_care(p, xk);
  const Matrix d = xk1 - xk;
  const Matrix atx = c.a_c.transpose() * xk1;
  return symmetrize(atx + atx.transpose() - xk1 * c.g_c * xk1 + c.h_c + d * c.g_c * d);
}

SolveReport fp_care_sda(const ScareProblem& p, const SymMatrix& x0, const SolverConfig& cfg) {
  check_start(p, x0, cfg);
  Tracker t(x0, cfg);
  const Stop s = run_fpc(p, t, cfg, false);
  return t.finish(s == Stop::Converged);
}

SolveReport nt_fp_lyap_sda(const ScareProblem& p, const SymMatrix& x0, const SolverConfig& cfg) {
  check_start(p, x0, cfg);
  Tracker t(x0, cfg);
  const bool ok = run_nt(p, t, cfg);
  return t.finish(ok);
}

SolveReport mnt_fp_lyap_sda(const ScareProblem& p, const SymMatrix& x0, const SolverConfig& cfg) {
  check_start(p, x0, cfg);
  Tracker t(x0, cfg);
  const bool ok = run_mnt(p, t, cfg);
  return t.finish(ok);
}

SolveReport fpc_nt(const ScareProblem& p, const SolverConfig& cfg) { return hybrid(p, cfg, false); }

SolveReport fpc_mnt(const ScareProblem& p, const SolverConfig& cfg) { return hybrid(p, cfg, true); }

SymMatrix initial_iterate(const ScareProblem& p, const SolverConfig& cfg,
                          const std::optional<SymMatrix>& given) {
  const Eigen::Index n = p.n();
  switch (cfg.x0_policy) {
    case X0Policy::Zero: return SymMatrix::Zero(n, n);
    case X0Policy::Given:
      if (!given) throw ScareError(ErrorCode::InvalidInput, "x0 policy 'given' needs a matrix");
      if (given->rows() != n || given->cols() != n) {
        throw ScareError(ErrorCode::DimensionMismatch, "x0 must be n x n");
      }
      return symmetrize(*given);
    case X0Policy::WarmCare: {
      const CareCoefficients c = assemble_care(p, SymMatrix::Zero(n, n));
      return solve_care(c.a_c, c.g_c, c.h_c, cfg).x;
    }
  }
  return SymMatrix::Zero(n, n);
}

SolveReport solve(const ScareProblem& p, SolverKind kind, const SymMatrix& x0,
                  const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::Fpc: return fp_care_sda(p, x0, cfg);
    case SolverKind::Nt: return nt_fp_lyap_sda(p, x0, cfg);
    case SolverKind::Mnt: return mnt_fp_lyap_sda(p, x0, cfg);
    case SolverKind::FpcNt: return fpc_nt(p, cfg);
    case SolverKind::FpcMnt: return fpc_mnt(p, cfg);
    case SolverKind::GlFp: return fp_scare(p, cfg.gamma, cfg);
  }
  throw ScareError(ErrorCode::InvalidInput, "unknown solver");
}

}  // namespace scare
