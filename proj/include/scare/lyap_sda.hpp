#pragma once

#include "scare/config.hpp"
#include "scare/linalg.hpp"

namespace scare {

struct CayleyForm {
  Matrix a_d;      // I + 2α(E − αI)⁻¹
  SymMatrix h_d;   // 2α(Eᵀ − αI)⁻¹ C (E − αI)⁻¹
};

/// Discrete-time form Y = a_dᵀ Y a_d + h_d of EᵀY + YE + C = 0. Throws
/// SingularShift when E − αI is singular.
CayleyForm cayley_dare_form(const Matrix& e, const SymMatrix& c, double alpha);

/// ‖EᵀY + YE + C‖_F / (2‖EᵀY‖_F + ‖C‖_F)
double lyapunov_residual(const Matrix& e, const SymMatrix& c, const SymMatrix& y);

struct LyapunovSolution {
  SymMatrix y;
  int iterations = 0;
  double residual = 0.0;
  double alpha = 0.0;
};

/// Solves EᵀY + YE + C = 0 for Hurwitz E by the doubling iteration
/// E_{k+1} = E_k², Y_{k+1} = Y_k + E_kᵀ Y_k E_k. α defaults to max(1, ‖E‖_F/√n).
LyapunovSolution solve_lyapunov_report(const Matrix& e, const SymMatrix& c,
                                       std::optional<double> alpha = std::nullopt,
                                       const SolverConfig& cfg = {});

SymMatrix solve_lyapunov(const Matrix& e, const SymMatrix& c,
                         std::optional<double> alpha = std::nullopt, const SolverConfig& cfg = {});

}  // namespace scare
