#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scare/config.hpp"
#include "scare/problem.hpp"

namespace scare {

enum class Phase { Fpc, Nt, Mnt, Gl };
enum class Monotone { Nondecreasing, Nonincreasing, None };

std::string_view to_string(Phase phase);
std::string_view to_string(Monotone direction);

struct HistoryEntry {
  int iter = 0;  // 1-based, continuing across phases
  Phase phase = Phase::Fpc;
  double nres = 0.0;
  std::int64_t wall_ns = 0;  // since the start of the solve
};

struct SolveCounts {
  int care_solves = 0;
  int lyap_solves = 0;
  int newton_steps = 0;
  int fp_iterations = 0;
};

struct SolveReport {
  SymMatrix x;
  bool converged = false;
  std::vector<HistoryEntry> history;
  SolveCounts counts;
  Monotone monotone_direction = Monotone::None;
  /// X_0, X_1, ... when cfg.record_iterates is set.
  std::vector<SymMatrix> iterates;
  std::int64_t wall_ns = 0;

  double final_nres() const { return history.empty() ? 0.0 : history.back().nres; }
};

/// Algorithm selector shared by the CLI, the campaign runner and the bindings.
enum class SolverKind { Fpc, Nt, Mnt, FpcNt, FpcMnt, GlFp };

std::string_view to_string(SolverKind kind);
/// Accepts fpc, nt, mnt, fpc-nt, fpc-mnt, gl-fp; throws InvalidInput otherwise.
SolverKind parse_solver(std::string_view text);

/// Fixed-point iteration on frozen CAREs, each solved by SDA.
SolveReport fp_care_sda(const ScareProblem& p, const SymMatrix& x0, const SolverConfig& cfg = {});
/// Newton's method; each step solves its generalized Lyapunov equation by
/// fixed-point sweeps of standard Lyapunov solves.
SolveReport nt_fp_lyap_sda(const ScareProblem& p, const SymMatrix& x0,
                           const SolverConfig& cfg = {});
/// Modified Newton: one Lyapunov solve per step with right-hand side mnt_rhs.
SolveReport mnt_fp_lyap_sda(const ScareProblem& p, const SymMatrix& x0,
                            const SolverConfig& cfg = {});
/// fp_care_sda from zero until ‖X_k − X_{k−1}‖₂ < cfg.warm_threshold (scaled by
/// max(1, ‖X_k‖₂) when cfg.warm_relative), then Newton.
SolveReport fpc_nt(const ScareProblem& p, const SolverConfig& cfg = {});
/// As fpc_nt with modified Newton in the second phase.
SolveReport fpc_mnt(const ScareProblem& p, const SolverConfig& cfg = {});

/// Starting matrix per cfg.x0_policy: zero, `given` (required for Given), or
/// the stabilizing solution of the frozen CARE at X = 0 (WarmCare).
SymMatrix initial_iterate(const ScareProblem& p, const SolverConfig& cfg,
                          const std::optional<SymMatrix>& given = std::nullopt);

/// Dispatches to the algorithm; x0 is ignored by the hybrids and gl-fp.
SolveReport solve(const ScareProblem& p, SolverKind kind, const SymMatrix& x0,
                  const SolverConfig& cfg = {});

/// ‖AᵀY + YA + Π_{X_k}(Y) + M‖_F / (2‖AᵀY‖_F + ‖Π_{X_k}(Y) + M‖_F) for the
/// Newton-step equation at X_k.
double newton_step_residual(const ScareProblem& p, const NewtonOperators& op, const SymMatrix& y);

}  // namespace scare

namespace scare {

/// Residual of the modified-Newton step written as a perturbed CARE,
/// A_kᵀX + XA_k − XG_kX + H_k + (X − X_k)G_k(X − X_k), with the frozen
/// coefficients taken at X_k. Vanishes at X = X_{k+1}.
SymMatrix mnt_equivalence_residual(const ScareProblem& p, const SymMatrix& xk,
                                   const SymMatrix& xk1);

}  // namespace scare
