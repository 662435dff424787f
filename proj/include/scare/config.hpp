#pragma once

#include <optional>
#include <string_view>

namespace scare {

enum class X0Policy { Zero, Given, WarmCare };

std::string_view to_string(X0Policy policy);
/// Accepts "zero", "given", "warm-care"; throws InvalidInput otherwise.
X0Policy parse_x0_policy(std::string_view text);

struct SolverConfig {
  double outer_tol = 1e-12;
  double inner_tol = 1e-14;
  int max_outer = 500;
  int max_inner = 200;
  int max_doubling = 60;
  /// Cap on Möbius fixed-point iterations (gl-fp needs several hundred on the
  /// stiffer benchmarks, more than max_outer allows).
  int max_fp_iter = 5000;
  double warm_threshold = 0.01;
  /// Scale the hybrid switch test by max(1, ‖X_k‖₂), i.e. switch when
  /// ‖X_k − X_{k−1}‖₂ < warm_threshold · max(1, ‖X_k‖₂). When false the
  /// threshold is absolute.
  bool warm_relative = true;
  std::optional<double> gamma;  // empty = auto
  std::optional<double> alpha;  // empty = auto
  X0Policy x0_policy = X0Policy::Zero;
  double psd_tol = 1e-10;
  double stab_tol = 1e-10;
  /// Tolerance for the inner fixed-point loop of the Newton method; empty
  /// means outer_tol.
  std::optional<double> newton_inner_tol;
  /// Eigenvalue-based Hurwitz pre-checks run only up to this order.
  int hurwitz_check_max = 200;
  /// Keep every outer iterate in SolveReport::iterates.
  bool record_iterates = false;

  double effective_newton_inner_tol() const { return newton_inner_tol.value_or(outer_tol); }

  /// Throws InvalidInput on nonpositive tolerances or caps.
  void check() const;
};

/// max(1, ‖m‖_F / √n)
double default_shift(double frobenius_norm, long n);

}  // namespace scare
