#pragma once

#include <optional>

#include "scare/config.hpp"
#include "scare/problem.hpp"
#include "scare/solvers.hpp"

namespace scare {

using Permutation = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic>;

/// Perfect shuffle Π of order n·r: Πᵀ(X ⊗ I_r)Π = I_r ⊗ X.
Permutation shuffle_permutation(Eigen::Index n, Eigen::Index r);
/// Π̂ of order n(r+1): Π̂ᵀ(X ⊗ I_{r+1})Π̂ = diag(X, X ⊗ I_r).
Permutation shuffle_hat_permutation(Eigen::Index n, Eigen::Index r);

struct MoebiusData {
  Matrix a_hat;      // A − BR⁻¹Lᵀ
  Matrix b_hat;      // BR^(−1/2)
  Matrix c_hat;      // ℓ×n, ĉᵀĉ = Q − LR⁻¹Lᵀ
  Permutation perm_shuffle;
  Permutation perm_hat;
  Matrix script_a;   // nr×n
  Matrix script_b;   // nr×m
  double gamma = 0.0;
  Matrix z_gamma;    // ĈÂ_γ⁻¹B̂
  Matrix e_gamma;    // n(r+1)×n
  SymMatrix h_gamma;
  SymMatrix g_gamma;
  /// ℓ < n; informational only.
  bool rank_deficient = false;
};

/// Assembles the discrete-time data of the Möbius-transformed equation.
/// Throws SingularShift when Â − γI (or a derived pivot) is singular.
MoebiusData build_moebius(const ScareProblem& p, double gamma);

/// X₁ = H_γ, X_{k+1} = E_γᵀ(X_k⊗I)(I + G_γ(X_k⊗I))⁻¹E_γ + H_γ, stopped on the
/// NRes of the original equation. γ defaults to max(1, ‖Â‖_F/√n) and is
/// doubled (at most five times) on a singular shift.
SolveReport fp_scare(const ScareProblem& p, std::optional<double> gamma = std::nullopt,
                     const SolverConfig& cfg = {});

}  // namespace scare
