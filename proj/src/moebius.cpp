#include "scare/moebius.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace scare {

Permutation shuffle_permutation(Eigen::Index n, Eigen::Index r) {
  Permutation p(n * r);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index i = 0; i < n; ++i) p.indices()(a * n + i) = static_cast<int>(i * r + a);
  }
  return p;
}

Permutation shuffle_hat_permutation(Eigen::Index n, Eigen::Index r) {
  Permutation p(n * (r + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    p.indices()(i) = static_cast<int>(i * (r + 1));
    for (Eigen::Index a = 0; a < r; ++a) {
      p.indices()(n + i * r + a) = static_cast<int>(i * (r + 1) + a + 1);
    }
  }
  return p;
}

namespace {

Matrix stack(const std::vector<Matrix>& blocks, Eigen::Index rows, Eigen::Index cols) {
  Matrix out(rows * static_cast<Eigen::Index>(blocks.size()), cols);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.middleRows(static_cast<Eigen::Index>(i) * rows, rows) = blocks[i];
  }
  return out;
}

}  // namespace

MoebiusData build_moebius(const ScareProblem& p, double gamma) {
  if (!(gamma > 0.0)) throw ScareError(ErrorCode::InvalidInput, "gamma must be positive");
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  const auto r = static_cast<Eigen::Index>(p.noise_count());
  const Matrix id = Matrix::Identity(n, n);

  const SymSolver r_solver(p.r, "R");
  const Matrix rinv_lt = r_solver.solve(p.l.transpose());
  const Eigen::SelfAdjointEigenSolver<Matrix> r_eig(symmetrize(p.r));
  const Matrix r_inv_sqrt = r_eig.eigenvectors() *
                            r_eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            r_eig.eigenvectors().transpose();

  MoebiusData d;
  d.gamma = gamma;
  d.a_hat = p.a - p.b * rinv_lt;
  d.b_hat = p.b * r_inv_sqrt;

  const Eigen::SelfAdjointEigenSolver<Matrix> q_eig(symmetrize(p.q - p.l * rinv_lt));
  const Vector& lam = q_eig.eigenvalues();
  const double lam_max = lam.size() ? lam.maxCoeff() : 0.0;
  const double cut = static_cast<double>(n) * kEps * lam_max;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam_max > 0.0 && lam(i) > cut) kept.push_back(i);
  }
  const auto ell = static_cast<Eigen::Index>(kept.size());
  d.c_hat.resize(ell, n);
  for (Eigen::Index k = 0; k < ell; ++k) {
    d.c_hat.row(k) = std::sqrt(lam(kept[k])) * q_eig.eigenvectors().col(kept[k]).transpose();
  }
  d.rank_deficient = ell < n;

  d.perm_shuffle = shuffle_permutation(n, r);
  d.perm_hat = shuffle_hat_permutation(n, r);
  const Matrix sa = stack(p.a0, n, n);
  const Matrix sb = stack(p.b0, n, m);
  d.script_a = d.perm_shuffle * (sa - sb * rinv_lt);
  d.script_b = d.perm_shuffle * (sb * r_inv_sqrt);

  const Matrix a_gamma = d.a_hat - gamma * id;
  const LuSolver a_gamma_lu(a_gamma, ErrorCode::SingularShift, "A_hat - gamma I");
  const Matrix a_gamma_inv = a_gamma_lu.inverse();
  const Matrix aib = a_gamma_inv * d.b_hat;
  d.z_gamma = d.c_hat * aib;

  const Matrix zt_c = d.z_gamma.transpose() * d.c_hat;  // m×n
  const LuSolver k_lu(id + aib * zt_c, ErrorCode::SingularShift, "I + A_gamma^-1 B Z^T C");
  const Matrix k = k_lu.solve(a_gamma_inv);
  Matrix top(n * (r + 1), n);
  top.topRows(n) = a_gamma + 2.0 * gamma * id + d.b_hat * zt_c;
  top.bottomRows(n * r) = std::sqrt(2.0 * gamma) * (d.script_a + d.script_b * zt_c);
  d.e_gamma = d.perm_hat * (top * k);

  const Matrix ell_id = Matrix::Identity(ell, ell);
  const SymSolver zz(ell_id + d.z_gamma * d.z_gamma.transpose(), "I + Z Z^T");
  const Matrix c_ai = d.c_hat * a_gamma_inv;
  d.h_gamma = symmetrize(2.0 * gamma * c_ai.transpose() * zz.solve(c_ai));

  Matrix f(n * (r + 1), m);
  f.topRows(n) = std::sqrt(2.0 * gamma) * aib;
  f.bottomRows(n * r) = d.script_a * aib - d.script_b;
  const SymSolver ztz(Matrix::Identity(m, m) + d.z_gamma.transpose() * d.z_gamma, "I + Z^T Z");
  const Matrix pf = d.perm_hat * f;
  d.g_gamma = symmetrize(pf * ztz.solve(pf.transpose()));
  return d;
}

SolveReport fp_scare(const ScareProblem& p, std::optional<double> gamma, const SolverConfig& cfg) {
  cfg.check();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                start)
        .count();
  };
  const Eigen::Index n = p.n();
  const auto s = static_cast<Eigen::Index>(p.noise_count()) + 1;
  const Eigen::Index big = n * s;

  double g = gamma.value_or(0.0);
  if (!gamma) {
    const SymSolver r_solver(p.r, "R");
    g = default_shift(fro(p.a - p.b * r_solver.solve(p.l.transpose())), static_cast<long>(n));
  }
  MoebiusData d;
  for (int attempt = 0;; ++attempt) {
    try {
      d = build_moebius(p, g);
      break;
    } catch (const ScareError& e) {
      if (e.code() != ErrorCode::SingularShift || attempt >= 5) throw;
      g *= 2.0;
    }
  }

  // Reorder so that X ⊗ I_s becomes the block diagonal I_s ⊗ X.
  const Permutation q = shuffle_permutation(n, s);
  const Matrix e = q.transpose() * d.e_gamma;
  const Matrix gq = q.transpose() * d.g_gamma * q;
  const Matrix id = Matrix::Identity(big, big);

  SolveReport rep;
  SymMatrix x = d.h_gamma;
  SymMatrix prev = SymMatrix::Zero(n, n);
  bool increasing = true;
  bool decreasing = true;
  auto record = [&](int k) {
    const double r = nres(p, x);
    rep.history.push_back({k, Phase::Gl, r, elapsed()});
    rep.counts.fp_iterations = k;
    if (cfg.record_iterates) rep.iterates.push_back(x);
    if (n <= 400) {
      const double slack = cfg.psd_tol * (1.0 + fro(prev));
      const Eigen::SelfAdjointEigenSolver<Matrix> es(x - prev, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -slack) increasing = false;
      if (es.eigenvalues().maxCoeff() > slack) decreasing = false;
    }
    return r;
  };
  if (cfg.record_iterates) rep.iterates.push_back(prev);

  bool converged = record(1) <= cfg.outer_tol;
  for (int k = 2; !converged && k <= cfg.max_fp_iter; ++k) {
    Matrix gx(big, big);
    for (Eigen::Index b = 0; b < s; ++b) gx.middleCols(b * n, n) = gq.middleCols(b * n, n) * x;
    const LuSolver sys(id + gx, ErrorCode::SingularInnerSystem, "I + G_gamma (X kron I)");
    Matrix t = sys.solve(e);
    for (Eigen::Index b = 0; b < s; ++b) t.middleRows(b * n, n) = x * t.middleRows(b * n, n);
    prev = x;
    x = symmetrize(e.transpose() * t + d.h_gamma);
    if (!x.allFinite()) {
      throw ScareError(ErrorCode::NotConverged,
                       "gl step " + std::to_string(k) + ": iterate became non-finite");
    }
    converged = record(k) <= cfg.outer_tol;
  }
  rep.x = x;
  rep.converged = converged;
  if (increasing && !decreasing) rep.monotone_direction = Monotone::Nondecreasing;
  else if (decreasing && !increasing) rep.monotone_direction = Monotone::Nonincreasing;
  else if (increasing) rep.monotone_direction = Monotone::Nondecreasing;
  rep.wall_ns = elapsed();
  return rep;
}

}  // namespace scare
