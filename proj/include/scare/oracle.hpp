#pragma once

#include "scare/config.hpp"
#include "scare/problem.hpp"

namespace scare {

/// Solves (I⊗Eᵀ + Eᵀ⊗I) vec(Y) = −vec(C) densely. n ≤ 64.
SymMatrix kron_lyap_solve(const Matrix& e, const SymMatrix& c);

/// Classical Newton–Kleinman from a stabilizing x0, inner solves by
/// kron_lyap_solve. n ≤ 32.
SymMatrix newton_kleinman_care(const Matrix& a, const SymMatrix& g, const SymMatrix& h,
                               const SymMatrix& x0, int max_iter = 100);

/// PSD stabilizing root of a scalar (n = m = 1) SCARE by bracketed bisection.
double scalar_scare_solve(const ScareProblem& p);

/// Largest real part of eig(m) is below −stab_tol.
bool is_hurwitz(const Matrix& m, double stab_tol = 1e-10);

bool hautus_stabilizable(const Matrix& a, const Matrix& b, double stab_tol = 1e-10);
bool hautus_detectable(const Matrix& c, const Matrix& a, double stab_tol = 1e-10);

/// Mean-square stability of the closed loop (A + BF, {A0ⁱ + B0ⁱF}). Uses the
/// spectrum of the n²-order generalized Lyapunov operator when n² ≤ 4096;
/// above that, Hurwitz A + BF plus a certified bound ρ(−L⁻¹Π_F) < 1 from a
/// power iteration on the PSD cone.
bool mean_square_stable(const ScareProblem& p, const Matrix& f, double stab_tol = 1e-10);

struct RateCertificate {
  double rho = 0.0;       // on the symmetric subspace
  double rho_full = 0.0;  // on all of R^{n×n}
  Eigen::Index dimension = 0;  // n², order of the full operator
};

/// ρ(ℒ⁻¹Ψ) at a converged solution, the linear rate of the frozen-CARE
/// fixed-point iteration. n² ≤ 4096.
RateCertificate rlinear_rate(const ScareProblem& p, const SymMatrix& x_hat);

/// x0 ⪰ x̂, A_c(x0) − G_c(x0)x0 Hurwitz and ℛ(x0) ⪯ 0 (within tolerances).
bool check_decreasing_start(const ScareProblem& p, const SymMatrix& x0, const SymMatrix& x_hat,
                            double psd_tol = 1e-10, double stab_tol = 1e-10);

/// ρ(L⁻¹P) where L is the Lyapunov operator of A_{X₀} and P: Z ↦ Π_{X₀}(Z).
double newton_start_radius(const ScareProblem& p, const SymMatrix& x0);
/// A_{X₀} Hurwitz and newton_start_radius < 1. n² ≤ 4096.
bool check_newton_start(const ScareProblem& p, const SymMatrix& x0, double stab_tol = 1e-10);

}  // namespace scare
