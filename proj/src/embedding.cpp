#include "sepred/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepred/error.hpp"

namespace sepred {

namespace {

double relative_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  const double diff = max_abs_diff(a, b);
  return scale > 0.0 ? diff / scale : diff;
}

void require_vector_dims(const PureVector& v, std::size_t a, std::size_t b, const char* what) {
  if (v.dim_a != a || v.dim_b != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected dims (" + std::to_string(a) + ", " +
                    std::to_string(b) + "), got (" + std::to_string(v.dim_a) + ", " +
                    std::to_string(v.dim_b) + ")");
  }
}

PureVector apply(const ComplexMatrix& m, const PureVector& v, std::size_t da, std::size_t db) {
  const ComplexMatrix out = m * ComplexMatrix::column(v.vec);
  return {da, db, std::vector<cplx>(out.entries().begin(), out.entries().end())};
}

}  // namespace

EmbeddingPair build_embedding(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) {
    throw Error(ErrorKind::DimensionMismatch, "build_embedding: k and m must be positive");
  }
  const std::size_t n = k + m;
  EmbeddingPair e;
  e.k = k;
  e.m = m;
  e.c = ComplexMatrix(n * n, k * m);
  e.q = ComplexMatrix(n * n, k * m);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t col = a * m + b;
      // e_a ⊗ e_{k+b} and its flip e_{k+b} ⊗ e_a.
      const std::size_t direct = a * n + (k + b);
      const std::size_t flipped = (k + b) * n + a;
      e.c(direct, col) = 1.0;
      e.q(direct, col) = 0.5;
      e.q(flipped, col) = -0.5;
    }
  return e;
}

PureVector lift(const EmbeddingPair& e, const PureVector& v) {
  require_vector_dims(v, e.k, e.m, "lift");
  return apply(e.c, v, e.n(), e.n());
}

PureVector lift_antisymmetric(const EmbeddingPair& e, const PureVector& v) {
  require_vector_dims(v, e.k, e.m, "lift_antisymmetric");
  return apply(e.q, v, e.n(), e.n());
}

PureVector compress(const EmbeddingPair& e, const PureVector& v) {
  require_vector_dims(v, e.n(), e.n(), "compress");
  std::vector<cplx> out(e.k * e.m);
  for (std::size_t a = 0; a < e.k; ++a)
    for (std::size_t b = 0; b < e.m; ++b) out[a * e.m + b] = v.vec[a * e.n() + e.k + b];
  return {e.k, e.m, std::move(out)};
}

void require_state(const EmbeddingPair& e, const BipartiteOperator& gamma) {
  if (gamma.dim_a() != e.k || gamma.dim_b() != e.m) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dims (" + std::to_string(gamma.dim_a()) + ", " +
                    std::to_string(gamma.dim_b()) + ") do not match embedding (" +
                    std::to_string(e.k) + ", " + std::to_string(e.m) + ")");
  }
  if (gamma.matrix().max_abs() == 0.0) throw Error(ErrorKind::ZeroState, "state is zero");
  EigResult eig;
  try {
    eig = hermitian_eig(gamma.matrix());
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NotHermitian) throw Error(ErrorKind::NotAState, err.what());
    throw;
  }
  const double lmin = eig.eigenvalues.front();
  const double lmax = eig.eigenvalues.back();
  if (!(lmax > 0.0)) throw Error(ErrorKind::NotAState, "state has no positive eigenvalue");
  if (lmin < -kStateTol * lmax) {
    throw Error(ErrorKind::NotAState, "smallest eigenvalue " + std::to_string(lmin) +
                                          " below −1e−10 · " + std::to_string(lmax));
  }
}

BipartiteOperator embed_state(const EmbeddingPair& e, const BipartiteOperator& gamma) {
  require_state(e, gamma);
  ComplexMatrix beta = e.q * gamma.matrix() * e.q.adjoint();
  return {e.n(), e.n(), hermitian_part(beta)};
}

void require_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= kDefaultEpsilon)) {
    throw Error(ErrorKind::EpsilonOutOfRange,
                "epsilon " + std::to_string(eps) + " outside ]0, 1/6]");
  }
}

BipartiteOperator embed_t(const EmbeddingPair& e, const BipartiteOperator& gamma, double eps) {
  require_epsilon(eps);
  const BipartiteOperator beta = embed_state(e, gamma);
  const double t = beta.trace();
  ComplexMatrix out = proj_sym(e.n()).matrix() * t;
  out += beta.matrix() * eps;
  return {e.n(), e.n(), std::move(out)};
}

BipartiteOperator normalize(const BipartiteOperator& op) {
  const double t = op.trace();
  if (!(std::abs(t) > 0.0)) throw Error(ErrorKind::ZeroState, "normalize: zero trace");
  return op.scaled(1.0 / t);
}

double distance_to_sym(const EmbeddingPair& e, const BipartiteOperator& gamma, double eps) {
  const BipartiteOperator beta = embed_state(e, gamma);
  const BipartiteOperator t_gamma = embed_t(e, gamma, eps);
  const ComplexMatrix diff = t_gamma.matrix() * (1.0 / beta.trace()) - proj_sym(e.n()).matrix();
  return trace_norm(diff);
}

SpcReport verify_spc(const BipartiteOperator& delta, double tol) {
  if (delta.dim_a() != delta.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "verify_spc: needs dimA == dimB");
  }
  if (!is_hermitian(delta.matrix(), tol)) {
    throw Error(ErrorKind::NotHermitian, "verify_spc: input is not Hermitian");
  }
  SpcReport r;
  const double scale = delta.matrix().max_abs();
  r.flip_residual =
      scale > 0.0 ? max_abs_diff(flip_conjugate(delta).matrix(), delta.matrix()) / scale : 0.0;

  const BipartiteOperator pt{delta.dim_a(), delta.dim_b(),
                             hermitian_part(partial_transpose(delta).matrix())};
  const EigResult pt_eig = hermitian_eig(pt.matrix());
  r.lambda_min_pt = pt_eig.eigenvalues.front();
  r.pt_norm = std::max(std::abs(pt_eig.eigenvalues.front()), std::abs(pt_eig.eigenvalues.back()));

  const ComplexMatrix realigned = realign(pt);
  const double rscale = realigned.max_abs();
  r.realign_hermitian_residual =
      rscale > 0.0 ? max_abs_diff(realigned, realigned.adjoint()) / rscale : 0.0;
  // On flip-symmetric inputs R(δ^Γ) is Hermitian; elsewhere only its
  // Hermitian part is examined.
  const EigResult r_eig = hermitian_eig(hermitian_part(realigned));
  r.lambda_min_realign_pt = r_eig.eigenvalues.front();
  r.realign_pt_norm = operator_norm(realigned);

  r.ppt = r.lambda_min_pt > tol * r.pt_norm;
  r.spc = r.ppt && r.lambda_min_realign_pt > tol * r.realign_pt_norm;
  return r;
}

EmbeddedDiagnostics embedded_diagnostics(const BipartiteOperator& delta,
                                         const EmbeddedSplit& split) {
  const std::size_t n = delta.dim_a();
  const double t = split.trace_q_part;
  const double eps = split.epsilon;
  const BipartiteOperator& beta = split.q_part;

  EmbeddedDiagnostics d;
  d.epsilon = eps;
  d.trace_q_part = t;
  const BipartiteOperator beta_pt = partial_transpose(beta);
  d.pt_norm = operator_norm(beta_pt.matrix());
  d.marginal_norm = operator_norm(marginal_a(beta));
  d.eps_bound_lhs = eps * d.pt_norm / t;
  d.distance_to_sym = trace_norm(delta.matrix() * (1.0 / t) - proj_sym(n).matrix());
  d.lambda_bound = (0.5 - eps) * t;

  const ComplexMatrix uu = max_ent_vec(n).projector().matrix();
  ComplexMatrix expected = (ComplexMatrix::identity(n * n) + uu) * (0.5 * t);
  expected -= beta_pt.matrix() * eps;
  d.closed_form_residual = relative_diff(realign(partial_transpose(delta)), expected);

  const ComplexMatrix beta_rpt = realign(beta_pt);
  d.antisym_realign_residual = relative_diff(beta_rpt, beta_pt.matrix() * -1.0);
  return d;
}

SpcReport verify_embedded(const EmbeddingPair& e, const BipartiteOperator& gamma, double eps,
                          double tol) {
  require_epsilon(eps);
  const BipartiteOperator beta = embed_state(e, gamma);
  const double t = beta.trace();
  ComplexMatrix tm = proj_sym(e.n()).matrix() * t;
  tm += beta.matrix() * eps;
  const BipartiteOperator delta{e.n(), e.n(), std::move(tm)};
  SpcReport r = verify_spc(delta, tol);
  r.embedded = embedded_diagnostics(delta, EmbeddedSplit{t, eps, beta});
  return r;
}

std::optional<EmbeddedSplit> split_embedded(const BipartiteOperator& delta, double tol) {
  if (delta.dim_a() != delta.dim_b()) return std::nullopt;
  const std::size_t n = delta.dim_a();
  const double scale = delta.matrix().max_abs();
  if (scale == 0.0) return std::nullopt;
  if (max_abs_diff(flip_conjugate(delta).matrix(), delta.matrix()) > tol * scale) {
    return std::nullopt;
  }
  const ComplexMatrix ps = proj_sym(n).matrix();
  const ComplexMatrix pa = proj_anti(n).matrix();
  const ComplexMatrix sym_block = ps * delta.matrix() * ps;
  const ComplexMatrix anti_block = pa * delta.matrix() * pa;
  const ComplexMatrix cross = ps * delta.matrix() * pa;
  if (cross.max_abs() > tol * scale) return std::nullopt;

  const double t = sym_block.trace().real() / ps.trace().real();
  if (!(t > 0.0)) return std::nullopt;
  if (max_abs_diff(sym_block, ps * t) > tol * scale) return std::nullopt;
  const double anti_trace = anti_block.trace().real();
  if (!(anti_trace > tol * scale)) return std::nullopt;
  const double eps = anti_trace / t;
  return EmbeddedSplit{t, eps, BipartiteOperator{n, n, hermitian_part(anti_block) * (1.0 / eps)}};
}

}  // namespace sepred
