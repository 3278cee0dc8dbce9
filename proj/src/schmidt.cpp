#include "sepred/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sepred/error.hpp"
#include "sepred/rng.hpp"

namespace sepred {

namespace {

// r orthonormal vectors in C^dim (columns), Gram–Schmidt with one
// reorthogonalization pass.
ComplexMatrix random_orthonormal(Rng& rng, std::size_t dim, std::size_t r) {
  ComplexMatrix q(dim, r);
  for (std::size_t j = 0; j < r; ++j) {
    double norm = 0.0;
    do {
      for (std::size_t i = 0; i < dim; ++i) q(i, j) = rng.complex_normal();
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < j; ++p) {
          cplx dot = 0.0;
          for (std::size_t i = 0; i < dim; ++i) dot += std::conj(q(i, p)) * q(i, j);
          for (std::size_t i = 0; i < dim; ++i) q(i, j) -= dot * q(i, p);
        }
      }
      norm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) norm += std::norm(q(i, j));
      norm = std::sqrt(norm);
    } while (norm < 1e-8);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) /= norm;
  }
  return q;
}

void track(RankCertReport& rep, const SchmidtDecomp& d) {
  rep.worst_retained = std::min(rep.worst_retained, d.smallest_retained);
  rep.worst_discarded = std::max(rep.worst_discarded, d.largest_discarded);
}

}  // namespace

SchmidtDecomp schmidt_decompose(const PureVector& v, double rank_tol) {
  if (v.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "schmidt_decompose: zero vector");
  const SvdResult d = svd(v.reshape());
  const double smax = d.s.front();
  SchmidtDecomp out;
  for (double s : d.s) {
    if (s > rank_tol * smax) {
      ++out.rank;
    } else {
      out.largest_discarded = std::max(out.largest_discarded, s / smax);
    }
  }
  out.coefficients.assign(d.s.begin(), d.s.begin() + static_cast<std::ptrdiff_t>(out.rank));
  out.smallest_retained = out.coefficients.back() / smax;
  out.left = ComplexMatrix(v.dim_a, out.rank);
  out.right = ComplexMatrix(v.dim_b, out.rank);
  // M = U S V*  ⇒  v = Σ s_i u_i ⊗ conj(v_i).
  for (std::size_t i = 0; i < out.rank; ++i) {
    for (std::size_t a = 0; a < v.dim_a; ++a) out.left(a, i) = d.u(a, i);
    for (std::size_t b = 0; b < v.dim_b; ++b) out.right(b, i) = std::conj(d.v(b, i));
  }
  return out;
}

std::size_t schmidt_rank(const PureVector& v, double rank_tol) {
  return schmidt_decompose(v, rank_tol).rank;
}

PureVector random_pure(std::size_t k, std::size_t m, std::size_t r, std::uint64_t seed) {
  if (r < 1 || r > std::min(k, m)) {
    throw Error(ErrorKind::RankOutOfRange, "random_pure: rank " + std::to_string(r) +
                                               " outside [1, " +
                                               std::to_string(std::min(k, m)) + "]");
  }
  Rng rng(seed);
  const ComplexMatrix a = random_orthonormal(rng, k, r);
  const ComplexMatrix b = random_orthonormal(rng, m, r);
  std::vector<cplx> v(k * m, 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double c = 0.1 + 0.9 * rng.uniform();
    norm2 += c * c;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < m; ++y) v[x * m + y] += c * a(x, i) * b(y, i);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& x : v) x *= inv;
  return {k, m, std::move(v)};
}

BipartiteOperator random_density(std::size_t k, std::size_t m, std::size_t rank,
                                 std::uint64_t seed) {
  if (rank < 1 || rank > k * m) {
    throw Error(ErrorKind::RankOutOfRange, "random_density: rank " + std::to_string(rank) +
                                               " outside [1, " + std::to_string(k * m) + "]");
  }
  Rng rng(seed);
  const ComplexMatrix g = rng.ginibre(k * m, rank);
  ComplexMatrix rho = hermitian_part(g * g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return {k, m, std::move(rho)};
}

BipartiteOperator generate(const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::GinibreDensity:
      return random_density(spec.k, spec.m, spec.rank, spec.seed);
    case EnsembleKind::PureRankR:
      return random_pure(spec.k, spec.m, spec.rank, spec.seed).projector();
    case EnsembleKind::SeparableMixture: {
      if (spec.terms < 1) throw Error(ErrorKind::RankOutOfRange, "separable mixture: no terms");
      Rng rng(spec.seed);
      ComplexMatrix rho(spec.k * spec.m, spec.k * spec.m);
      for (std::size_t t = 0; t < spec.terms; ++t) {
        const ComplexMatrix a = rng.ginibre(spec.k, 1);
        const ComplexMatrix b = rng.ginibre(spec.m, 1);
        rho += kron(a * a.adjoint(), b * b.adjoint()) * rng.uniform();
      }
      rho = hermitian_part(rho);
      rho *= 1.0 / rho.trace().real();
      return {spec.k, spec.m, std::move(rho)};
    }
  }
  throw Error(ErrorKind::RankOutOfRange, "generate: unknown ensemble kind");
}

RankCertReport certify_rank_maps(const EmbeddingPair& e, std::size_t trials, std::uint64_t seed,
                                 std::optional<std::size_t> rank, double rank_tol) {
  RankCertReport rep;
  const std::size_t max_rank = std::min(e.k, e.m);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i);
    const std::size_t r =
        rank ? *rank : static_cast<std::size_t>(Rng(mix64(trial_seed)).uniform_int(1, max_rank));
    const PureVector v = random_pure(e.k, e.m, r, trial_seed);

    const SchmidtDecomp lifted = schmidt_decompose(lift(e, v), rank_tol);
    const PureVector qv = lift_antisymmetric(e, v);
    const SchmidtDecomp doubled = schmidt_decompose(qv, rank_tol);
    const SchmidtDecomp halved = schmidt_decompose(compress(e, qv), rank_tol);
    track(rep, lifted);
    track(rep, doubled);
    track(rep, halved);

    const bool lift_ok = lifted.rank == r;
    const bool double_ok = doubled.rank == 2 * r;
    const bool half_ok = 2 * halved.rank == doubled.rank;
    rep.lift_failures += lift_ok ? 0 : 1;
    rep.doubling_failures += double_ok ? 0 : 1;
    rep.halving_failures += half_ok ? 0 : 1;
    rep.passed += (lift_ok && double_ok && half_ok) ? 1 : 0;
    ++rep.trials;
  }
  return rep;
}

}  // namespace sepred
