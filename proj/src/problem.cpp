#include "scare/problem.hpp"

#include <string>

namespace scare {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ScareError(ErrorCode::DimensionMismatch, what);
}

void check_square(const Matrix& x, Eigen::Index n, const char* name) {
  require(x.rows() == n && x.cols() == n,
          std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

}  // namespace

ScareProblem make_problem(Matrix a, Matrix b, SymMatrix q, SymMatrix r, Matrix l,
                          std::vector<Matrix> a0, std::vector<Matrix> b0) {
  ScareProblem p;
  if (l.size() == 0) l = Matrix::Zero(a.rows(), b.cols());
  p.a = std::move(a);
  p.b = std::move(b);
  p.q = std::move(q);
  p.r = std::move(r);
  p.l = std::move(l);
  p.a0 = std::move(a0);
  p.b0 = std::move(b0);
  return p;
}

void validate(const ScareProblem& p, const ValidationOptions& opts) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  require(n > 0 && m > 0, "n and m must be positive");
  check_square(p.a, n, "A");
  require(p.b.rows() == n, "B must have n rows");
  check_square(p.q, n, "Q");
  check_square(p.r, m, "R");
  require(p.l.rows() == n && p.l.cols() == m, "L must be n x m");
  require(p.a0.size() == p.b0.size(), "A0 and B0 must have the same length");
  for (std::size_t i = 0; i < p.a0.size(); ++i) {
    check_square(p.a0[i], n, "A0[i]");
    require(p.b0[i].rows() == n && p.b0[i].cols() == m, "B0[i] must be n x m");
  }
  const double qs = fro(p.q - p.q.transpose());
  const double rs = fro(p.r - p.r.transpose());
  if (qs > opts.symmetry_tol * (1.0 + fro(p.q)) || rs > opts.symmetry_tol * (1.0 + fro(p.r))) {
    throw ScareError(ErrorCode::InvalidProblem, "Q and R must be symmetric");
  }
  Eigen::LLT<Matrix> llt(symmetrize(p.r));
  if (llt.info() != Eigen::Success || lambda_min(symmetrize(p.r)) <= 0.0) {
    throw ScareError(ErrorCode::InvalidProblem, "R must be positive definite");
  }
  const SymMatrix schur = symmetrize(p.q - p.l * llt.solve(p.l.transpose()));
  if (!is_psd(schur, opts.psd_tol)) {
    throw ScareError(ErrorCode::InvalidProblem, "Q - L R^-1 L^T must be positive semidefinite");
  }
}

SymMatrix PiBlocks::stacked() const {
  const Eigen::Index n = pi11.rows();
  const Eigen::Index m = pi22.rows();
  SymMatrix out(n + m, n + m);
  out << pi11, pi12, pi12.transpose(), pi22;
  return out;
}

SymMatrix NewtonOperators::project(const PiBlocks& pi) const {
  return symmetrize(p_k.transpose() * pi.stacked() * p_k);
}

PiBlocks pi_of(const ScareProblem& p, const SymMatrix& x) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  check_square(x, n, "X");
  require(p.a0.size() == p.b0.size(), "A0 and B0 must have the same length");
  PiBlocks out{SymMatrix::Zero(n, n), Matrix::Zero(n, m), SymMatrix::Zero(m, m)};
  for (std::size_t i = 0; i < p.a0.size(); ++i) {
    const Matrix xa = x * p.a0[i];
    const Matrix xb = x * p.b0[i];
    out.pi11.noalias() += p.a0[i].transpose() * xa;
    out.pi12.noalias() += p.a0[i].transpose() * xb;
    out.pi22.noalias() += p.b0[i].transpose() * xb;
  }
  out.pi11 = symmetrize(out.pi11);
  out.pi22 = symmetrize(out.pi22);
  return out;
}

CareCoefficients assemble_care(const ScareProblem& p, const SymMatrix& x) {
  const PiBlocks pi = pi_of(p, x);
  CareCoefficients c;
  c.l_c = p.l + pi.pi12;
  c.r_c = symmetrize(p.r + pi.pi22);
  c.q_c = symmetrize(p.q + pi.pi11);
  const SymSolver rc(c.r_c, "R + Pi22(X)");
  const Matrix k = rc.solve(c.l_c.transpose());
  c.a_c = p.a - p.b * k;
  c.g_c = symmetrize(p.b * rc.solve(p.b.transpose()));
  c.h_c = symmetrize(c.q_c - c.l_c * k);
  return c;
}

namespace {

struct ResidualParts {
  SymMatrix residual;
  Matrix ax;
  SymMatrix pi11;
  SymMatrix b_term;
};

ResidualParts residual_parts(const ScareProblem& p, const SymMatrix& x) {
  const PiBlocks pi = pi_of(p, x);
  const Matrix s = x * p.b + p.l + pi.pi12;
  const SymSolver rc(symmetrize(p.r + pi.pi22), "R + Pi22(X)");
  ResidualParts out;
  out.ax = p.a * x;
  const Matrix atx = p.a.transpose() * x;
  out.b_term = symmetrize(s * rc.solve(s.transpose()));
  out.residual = symmetrize(atx + atx.transpose() + p.q + pi.pi11 - out.b_term);
  out.pi11 = pi.pi11;
  return out;
}

}  // namespace

SymMatrix residual(const ScareProblem& p, const SymMatrix& x) {
  return residual_parts(p, x).residual;
}

ResidualReport normalized_residual(const ScareProblem& p, const SymMatrix& x) {
  ResidualParts parts = residual_parts(p, x);
  ResidualReport rep;
  rep.residual_norm = fro(parts.residual);
  rep.ax_term = 2.0 * fro(parts.ax);
  rep.q_term = fro(p.q);
  rep.pi11_term = fro(parts.pi11);
  rep.b_term = fro(parts.b_term);
  const double den = rep.ax_term + rep.q_term + rep.pi11_term + rep.b_term;
  if (den == 0.0) {
    rep.degenerate_denominator = true;
    rep.nres = rep.residual_norm;
  } else {
    rep.nres = rep.residual_norm / den;
  }
  rep.residual_matrix = std::move(parts.residual);
  return rep;
}

double nres(const ScareProblem& p, const SymMatrix& x) { return normalized_residual(p, x).nres; }

SymMatrix omega(const ScareProblem& p, const SymMatrix& x) {
  const CareCoefficients c = assemble_care(p, x);
  const Eigen::Index n = p.n();
  SymMatrix out(2 * n, 2 * n);
  out << -c.g_c, -c.a_c, -c.a_c.transpose(), c.h_c;
  return out;
}

NewtonOperators newton_operators(const ScareProblem& p, const SymMatrix& xk) {
  const Eigen::Index n = p.n();
  const Eigen::Index m = p.m();
  const PiBlocks pi = pi_of(p, xk);
  NewtonOperators op;
  op.s_xk = xk * p.b + p.l + pi.pi12;
  op.r_k = symmetrize(p.r + pi.pi22);
  const SymSolver rk(op.r_k, "R + Pi22(X_k)");
  const Matrix k = rk.solve(op.s_xk.transpose());
  op.a_xk = p.a - p.b * k;
  op.p_k.resize(n + m, n);
  op.p_k << Matrix::Identity(n, n), -k;
  SymMatrix weight(n + m, n + m);
  weight << p.q, p.l, p.l.transpose(), p.r;
  op.m_xk = symmetrize(op.p_k.transpose() * weight * op.p_k);
  return op;
}

SymMatrix mnt_rhs(const ScareProblem& p, const SymMatrix& xk) {
  const NewtonOperators op = newton_operators(p, xk);
  return symmetrize(op.project(pi_of(p, xk)) + op.m_xk);
}

Matrix feedback_gain(const ScareProblem& p, const SymMatrix& x) {
  const PiBlocks pi = pi_of(p, x);
  const SymSolver rc(symmetrize(p.r + pi.pi22), "R + Pi22(X)");
  return -rc.solve(p.b.transpose() * x + pi.pi12.transpose() + p.l.transpose());
}

}  // namespace scare
