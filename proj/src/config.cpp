#include "scare/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scare/errors.hpp"

namespace scare {

std::string_view to_string(X0Policy policy) {
  switch (policy) {
    case X0Policy::Zero: return "zero";
    case X0Policy::Given: return "given";
    case X0Policy::WarmCare: return "warm-care";
  }
  return "zero";
}

X0Policy parse_x0_policy(std::string_view text) {
  if (text == "zero") return X0Policy::Zero;
  if (text == "given") return X0Policy::Given;
  if (text == "warm-care") return X0Policy::WarmCare;
  throw ScareError(ErrorCode::InvalidInput, "unknown x0 policy: " + std::string(text));
}

void SolverConfig::check() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ScareError(ErrorCode::InvalidInput, std::string(name) + " must be positive");
    }
  };
  positive(outer_tol, "outer_tol");
  positive(inner_tol, "inner_tol");
  positive(warm_threshold, "warm_threshold");
  positive(psd_tol, "psd_tol");
  positive(stab_tol, "stab_tol");
  if (gamma) positive(*gamma, "gamma");
  if (alpha) positive(*alpha, "alpha");
  if (newton_inner_tol) positive(*newton_inner_tol, "newton_inner_tol");
  if (max_outer <= 0 || max_inner <= 0 || max_doubling <= 0 || max_fp_iter <= 0) {
    throw ScareError(ErrorCode::InvalidInput, "iteration caps must be positive");
  }
}

double default_shift(double frobenius_norm, long n) {
  return std::max(1.0, frobenius_norm / std::sqrt(static_cast<double>(std::max(n, 1L))));
}

}  // namespace scare
