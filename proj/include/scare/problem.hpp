#pragma once

#include <vector>

#include "scare/linalg.hpp"

namespace scare {

/// Coefficients of one stochastic CARE
///
///   AᵀX + XA + Π₁₁(X) + Q − (XB + L + Π₁₂(X))(R + Π₂₂(X))⁻¹(XB + L + Π₁₂(X))ᵀ = 0
///
/// with Π(X) = Σᵢ [A0ᵢ B0ᵢ]ᵀ X [A0ᵢ B0ᵢ]. An empty noise list (r = 0) is the
/// deterministic CARE.
struct ScareProblem {
  Matrix a;
  Matrix b;
  SymMatrix q;
  SymMatrix r;
  Matrix l;
  std::vector<Matrix> a0;
  std::vector<Matrix> b0;

  Eigen::Index n() const { return a.rows(); }
  Eigen::Index m() const { return b.cols(); }
  std::size_t noise_count() const { return a0.size(); }
};

/// Builds a problem with L = 0 when `l` is empty.
ScareProblem make_problem(Matrix a, Matrix b, SymMatrix q, SymMatrix r, Matrix l = {},
                          std::vector<Matrix> a0 = {}, std::vector<Matrix> b0 = {});

struct ValidationOptions {
  double symmetry_tol = 1e-10;
  double psd_tol = 1e-10;
};

/// Throws DimensionMismatch / InvalidProblem unless dimensions agree, Q and R
/// are symmetric, R ≻ 0 and Q − L R⁻¹ Lᵀ ⪰ 0.
void validate(const ScareProblem& p, const ValidationOptions& opts = {});

struct PiBlocks {
  SymMatrix pi11;
  Matrix pi12;
  SymMatrix pi22;

  /// [pi11 pi12; pi12ᵀ pi22]
  SymMatrix stacked() const;
};

struct CareCoefficients {
  Matrix a_c;
  SymMatrix g_c;
  SymMatrix h_c;
  SymMatrix q_c;
  Matrix l_c;
  SymMatrix r_c;
};

struct NewtonOperators {
  Matrix a_xk;   // A − B R_k⁻¹ S_kᵀ
  Matrix s_xk;   // X_k B + L + Π₁₂(X_k)
  Matrix p_k;    // [I; −R_k⁻¹ S_kᵀ], (n+m)×n
  SymMatrix m_xk;
  SymMatrix r_k;

  /// Π_{X_k}(Y) = P_kᵀ Π(Y) P_k
  SymMatrix project(const PiBlocks& pi) const;
};

struct ResidualReport {
  SymMatrix residual_matrix;
  double nres = 0.0;
  double residual_norm = 0.0;
  double ax_term = 0.0;  // 2‖AX‖_F
  double q_term = 0.0;   // ‖Q‖_F
  double pi11_term = 0.0;
  double b_term = 0.0;   // ‖𝓑(X)‖_F
  bool degenerate_denominator = false;
};

PiBlocks pi_of(const ScareProblem& p, const SymMatrix& x);
CareCoefficients assemble_care(const ScareProblem& p, const SymMatrix& x);
SymMatrix residual(const ScareProblem& p, const SymMatrix& x);
ResidualReport normalized_residual(const ScareProblem& p, const SymMatrix& x);
double nres(const ScareProblem& p, const SymMatrix& x);
/// Ω(X) = [−G_c, −A_c; −A_cᵀ, H_c], order 2n.
SymMatrix omega(const ScareProblem& p, const SymMatrix& x);
NewtonOperators newton_operators(const ScareProblem& p, const SymMatrix& xk);
/// C_k = Π_{X_k}(X_k) + M_{X_k}; the right-hand side of the modified Newton step.
SymMatrix mnt_rhs(const ScareProblem& p, const SymMatrix& xk);
/// F = −(R + Π₂₂)⁻¹(BᵀX + Π₁₂ᵀ + Lᵀ), m×n.
Matrix feedback_gain(const ScareProblem& p, const SymMatrix& x);

}  // namespace scare
