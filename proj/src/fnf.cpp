#include "sepred/fnf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepred/error.hpp"

namespace sepred {

namespace {

double cond(const ComplexMatrix& m) {
  const SvdResult d = svd(m);
  return d.s.back() > 0.0 ? d.s.front() / d.s.back() : INFINITY;
}

void require_filterable(const BipartiteOperator& delta) {
  if (delta.dim_a() != delta.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "sinkhorn: needs dimA == dimB");
  }
  if (!is_hermitian(delta.matrix(), kEigTol)) {
    throw Error(ErrorKind::NotAState, "sinkhorn: input is not Hermitian");
  }
  if (delta.matrix().max_abs() == 0.0) throw Error(ErrorKind::NotAState, "sinkhorn: zero input");
  const EigResult eig = hermitian_eig(delta.matrix());
  if (!(eig.eigenvalues.back() > 0.0) ||
      eig.eigenvalues.front() < -kStateTol * eig.eigenvalues.back()) {
    throw Error(ErrorKind::NotAState, "sinkhorn: input is not positive semidefinite");
  }
}

BipartiteOperator with_trace(const BipartiteOperator& op, double target) {
  return {op.dim_a(), op.dim_b(), hermitian_part(op.matrix()) * (target / op.trace())};
}

ComplexMatrix inv_sqrt_marginal(const ComplexMatrix& marginal, double floor_tol,
                                std::size_t iteration) {
  try {
    return inv_sqrt_psd(hermitian_part(marginal), floor_tol);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::SingularMarginal) throw;
    throw Error(ErrorKind::SingularMarginal,
                "iteration " + std::to_string(iteration) + ": " + err.what());
  }
}

// Keeps accumulated filters at unit max-entry so long stalled runs stay finite.
void rescale(ComplexMatrix& m) {
  const double s = m.max_abs();
  if (s > 0.0) m *= 1.0 / s;
}

void finish(SinkhornResult& r, const BipartiteOperator& input) {
  const BipartiteOperator raw = local_filter(input, r.filter_a, r.filter_b);
  r.scale = r.filtered.trace() / raw.trace();
  r.iterations = r.residuals.size() - 1;
  for (std::size_t i = 2; i < r.residuals.size(); ++i) {
    if (r.residuals[i] > r.residuals[i - 1] + 1e-12) {
      r.monotone = false;
      break;
    }
  }
}

}  // namespace

const char* to_string(SinkhornStatus s) noexcept {
  switch (s) {
    case SinkhornStatus::Converged: return "converged";
    case SinkhornStatus::MaxIterations: return "max_iterations";
    case SinkhornStatus::FilterDegenerate: return "filter_degenerate";
  }
  return "unknown";
}

double marginal_residual(const BipartiteOperator& op) {
  const ComplexMatrix id_a = ComplexMatrix::identity(op.dim_a());
  const ComplexMatrix id_b = ComplexMatrix::identity(op.dim_b());
  return std::max(operator_norm(marginal_a(op) - id_a), operator_norm(marginal_b(op) - id_b));
}

SinkhornResult sinkhorn_two_sided(const BipartiteOperator& delta, const SinkhornOptions& opts) {
  require_filterable(delta);
  const std::size_t n = delta.dim_a();
  const ComplexMatrix id = ComplexMatrix::identity(n);

  SinkhornResult r;
  r.filter_a = id;
  r.filter_b = id;
  r.filtered = with_trace(delta, static_cast<double>(n));
  r.residuals.push_back(marginal_residual(r.filtered));

  std::size_t iter = 0;
  r.status = SinkhornStatus::MaxIterations;
  while (true) {
    if (r.residuals.back() <= opts.fnf_tol) {
      r.status = SinkhornStatus::Converged;
      break;
    }
    if (iter == opts.max_iter) break;
    const ComplexMatrix x = inv_sqrt_marginal(marginal_a(r.filtered), opts.floor_tol, iter);
    r.filtered = with_trace(local_filter(r.filtered, x, id), static_cast<double>(n));
    r.filter_a = x * r.filter_a;
    const ComplexMatrix y = inv_sqrt_marginal(marginal_b(r.filtered), opts.floor_tol, iter);
    r.filtered = with_trace(local_filter(r.filtered, id, y), static_cast<double>(n));
    r.filter_b = y * r.filter_b;
    rescale(r.filter_a);
    rescale(r.filter_b);
    ++iter;
    r.residuals.push_back(marginal_residual(r.filtered));
    if (cond(r.filter_a) * opts.floor_tol > 1.0 || cond(r.filter_b) * opts.floor_tol > 1.0) {
      r.status = r.residuals.back() <= opts.fnf_tol ? SinkhornStatus::Converged
                                                    : SinkhornStatus::FilterDegenerate;
      break;
    }
  }
  r.converged = r.status == SinkhornStatus::Converged;
  finish(r, delta);
  return r;
}

SinkhornResult sinkhorn_symmetric(const BipartiteOperator& delta, const SinkhornOptions& opts) {
  if (delta.dim_a() != delta.dim_b()) {
    throw Error(ErrorKind::DimensionMismatch, "sinkhorn_symmetric: needs dimA == dimB");
  }
  const double scale = delta.matrix().max_abs();
  const double flip_res =
      scale > 0.0 ? max_abs_diff(flip_conjugate(delta).matrix(), delta.matrix()) / scale : 0.0;
  if (flip_res > 1e-10) {
    throw Error(ErrorKind::NotFlipSymmetric,
                "‖FδF − δ‖ / ‖δ‖ = " + std::to_string(flip_res));
  }
  require_filterable(delta);
  const std::size_t n = delta.dim_a();

  SinkhornResult r;
  r.filter_a = ComplexMatrix::identity(n);
  r.filtered = with_trace(delta, static_cast<double>(n));
  r.residuals.push_back(marginal_residual(r.filtered));
  r.max_flip_residual = flip_res;

  std::size_t iter = 0;
  r.status = SinkhornStatus::MaxIterations;
  while (true) {
    if (r.residuals.back() <= opts.fnf_tol) {
      r.status = SinkhornStatus::Converged;
      break;
    }
    if (iter == opts.max_iter) break;
    const ComplexMatrix x = inv_sqrt_marginal(marginal_a(r.filtered), opts.floor_tol, iter);
    BipartiteOperator next = local_filter(r.filtered, x, x);
    const BipartiteOperator flipped = flip_conjugate(next);
    const double s = next.matrix().max_abs();
    r.max_flip_residual =
        std::max(r.max_flip_residual, max_abs_diff(flipped.matrix(), next.matrix()) / s);
    ComplexMatrix sym = (next.matrix() + flipped.matrix()) * 0.5;
    r.filtered = with_trace(BipartiteOperator{n, n, std::move(sym)}, static_cast<double>(n));
    r.filter_a = x * r.filter_a;
    rescale(r.filter_a);
    ++iter;
    r.residuals.push_back(marginal_residual(r.filtered));
    if (cond(r.filter_a) * opts.floor_tol > 1.0) {
      r.status = r.residuals.back() <= opts.fnf_tol ? SinkhornStatus::Converged
                                                    : SinkhornStatus::FilterDegenerate;
      break;
    }
  }
  r.filter_b = r.filter_a;
  r.converged = r.status == SinkhornStatus::Converged;
  finish(r, delta);
  return r;
}

RankWitness rank_witness(const EmbeddingPair& e, const BipartiteOperator& gamma,
                         double rank_tol) {
  if (e.k == e.m) {
    throw Error(ErrorKind::EqualDims, "rank_witness: k == m = " + std::to_string(e.k));
  }
  const BipartiteOperator beta = embed_state(e, gamma);
  const std::size_t n = e.n();
  std::vector<double> diag(n, 0.0);
  const bool upper = e.k > e.m;
  for (std::size_t i = 0; i < n; ++i) diag[i] = (upper ? i < e.k : i >= e.k) ? 1.0 : 0.0;

  RankWitness w;
  w.input_rank = std::max(e.k, e.m);
  w.witness_rank = numerical_rank(g_map(beta, ComplexMatrix::diagonal(diag)), rank_tol);
  w.bound = numerical_rank(upper ? marginal_b(gamma) : marginal_a(gamma), rank_tol);
  w.obstructed = w.witness_rank < w.input_rank;
  return w;
}

}  // namespace sepred
