#pragma once

#include "scare/config.hpp"
#include "scare/linalg.hpp"

namespace scare {

struct CareSolution {
  SymMatrix x;
  int iterations = 0;
  /// ‖AᵀX + XA − XGX + H‖_F / (2‖AᵀX‖_F + ‖XGX‖_F + ‖H‖_F)
  double care_residual = 0.0;
  double gamma = 0.0;
  /// Largest real part of eig(A − GX); NaN when the order exceeds
  /// cfg.hurwitz_check_max.
  double closed_loop_abscissa = 0.0;
};

/// Doubling state (E_k, G_k, H_k) of the first standard form.
struct SdaState {
  Matrix e_k;
  SymMatrix g_k;
  SymMatrix h_k;
  int iteration = 0;
};

/// Initial doubling state for the Cayley shift gamma. Throws SingularPivot.
SdaState sda_initial_state(const Matrix& a, const SymMatrix& g, const SymMatrix& h, double gamma);
/// One doubling step; throws SingularPivot when I + G_k H_k cannot be factored.
SdaState sda_step(const SdaState& s);

double care_residual(const Matrix& a, const SymMatrix& g, const SymMatrix& h, const SymMatrix& x);

/// Stabilizing solution of AᵀX + XA − XGX + H = 0 by structure-preserving
/// doubling. γ defaults to max(1, ‖A‖_F/√n) and is doubled on a singular
/// initialization (at most five retries). With automatic γ, a relative CARE
/// residual above 1e−10 triggers re-solves at 2γ and 4γ; the solution with
/// the smallest residual is returned.
CareSolution solve_care(const Matrix& a, const SymMatrix& g, const SymMatrix& h,
                        const SolverConfig& cfg = {});

}  // namespace scare
