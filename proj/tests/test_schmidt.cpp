#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "sepred/embedding.hpp"
#include "sepred/rng.hpp"
#include "sepred/schmidt.hpp"
#include "support.hpp"

using namespace sepred;

namespace {

double reconstruction_error(const PureVector& v, const SchmidtDecomp& d) {
  double err = 0.0;
  for (std::size_t a = 0; a < v.dim_a; ++a)
    for (std::size_t b = 0; b < v.dim_b; ++b) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d.rank; ++i) s += d.coefficients[i] * d.left(a, i) * d.right(b, i);
      err = std::max(err, std::abs(s - v.vec[a * v.dim_b + b]));
    }
  return err;
}

}  // namespace

TEST_CASE("rng is reproducible and splits streams") {
  Rng a(123), b(123), c(124);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.normal() != c.normal());
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(42, i));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));

  Rng r(5);
  for (int i = 0; i < 200; ++i) {
    const auto x = r.uniform_int(3, 7);
    CHECK(x >= 3);
    CHECK(x <= 7);
  }
}

TEST_CASE("rng gaussian moments") {
  Rng r(9);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const cplx z = r.complex_normal();
    sum += z.real();
    sum_sq += std::norm(z);
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.03);
}

TEST_CASE("schmidt examples") {
  const PureVector e11{2, 2, {1.0, 0.0, 0.0, 0.0}};
  const SchmidtDecomp d1 = schmidt_decompose(e11);
  CHECK(d1.rank == 1);
  CHECK(d1.coefficients == std::vector<double>{1.0});

  const double r = 1.0 / std::sqrt(2.0);
  const SchmidtDecomp d2 = schmidt_decompose({2, 2, {r, 0.0, 0.0, r}});
  CHECK(d2.rank == 2);
  CHECK(std::abs(d2.coefficients[0] - r) < 1e-15);
  CHECK(std::abs(d2.coefficients[1] - r) < 1e-15);

  for (std::size_t n = 1; n <= 5; ++n) {
    const SchmidtDecomp du = schmidt_decompose(max_ent_vec(n));
    CHECK(du.rank == n);
    for (double c : du.coefficients) CHECK(std::abs(c - 1.0) < 1e-14);
  }

  CHECK(testing::thrown_kind([] { schmidt_decompose({2, 3, std::vector<cplx>(6, 0.0)}); }) ==
        ErrorKind::ZeroVector);
}

TEST_CASE("schmidt reconstruction and norm conservation") {
  Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t a = 1 + rng.uniform_int(0, 7), b = 1 + rng.uniform_int(0, 7);
    std::vector<cplx> v(a * b);
    for (auto& x : v) x = rng.complex_normal();
    const PureVector pv{a, b, v};
    const SchmidtDecomp d = schmidt_decompose(pv);
    CHECK(reconstruction_error(pv, d) <= 1e-11);
    double s2 = 0.0;
    for (double c : d.coefficients) s2 += c * c;
    CHECK(std::abs(s2 - pv.norm() * pv.norm()) <= 1e-12 * std::max(1.0, s2));
    CHECK(std::is_sorted(d.coefficients.rbegin(), d.coefficients.rend()));
    // Left and right Schmidt vectors are orthonormal.
    CHECK(max_abs_diff(d.left.adjoint() * d.left, ComplexMatrix::identity(d.rank)) <= 1e-12);
    CHECK(max_abs_diff(d.right.adjoint() * d.right, ComplexMatrix::identity(d.rank)) <= 1e-12);
  }
}

TEST_CASE("random_pure") {
  for (auto [k, m] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 4}, {5, 2}}) {
    for (std::size_t r = 1; r <= std::min(k, m); ++r) {
      const PureVector v = random_pure(k, m, r, 1000 * k + 10 * m + r);
      CHECK(std::abs(v.norm() - 1.0) < 1e-14);
      const SchmidtDecomp d = schmidt_decompose(v);
      CHECK(d.rank == r);
      CHECK(d.smallest_retained >= 0.05);
      CHECK(d.largest_discarded <= 1e-12);
    }
  }
  const PureVector a = random_pure(3, 3, 2, 77), b = random_pure(3, 3, 2, 77);
  CHECK(a.vec == b.vec);
  CHECK(random_pure(3, 3, 2, 78).vec != a.vec);
  CHECK(testing::thrown_kind([] { random_pure(2, 3, 0, 1); }) == ErrorKind::RankOutOfRange);
  CHECK(testing::thrown_kind([] { random_pure(2, 3, 3, 1); }) == ErrorKind::RankOutOfRange);
}

TEST_CASE("random_density") {
  const BipartiteOperator p = random_density(2, 3, 1, 5);
  CHECK(numerical_rank(p.matrix()) == 1);
  CHECK(max_abs_diff(p.matrix() * p.matrix(), p.matrix()) < 1e-14);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteOperator g = random_density(2, 2, 4, seed);
    CHECK(std::abs(g.trace() - 1.0) <= 1e-14);
    CHECK(hermitian_eig(g.matrix()).eigenvalues.front() > 0.0);
    CHECK(g.matrix() == g.matrix().adjoint());
  }
  CHECK(random_density(3, 2, 4, 11).matrix() == random_density(3, 2, 4, 11).matrix());
  CHECK(testing::thrown_kind([] { random_density(2, 2, 0, 1); }) == ErrorKind::RankOutOfRange);
}

TEST_CASE("ensembles") {
  EnsembleSpec spec;
  spec.k = 2;
  spec.m = 3;
  spec.seed = 4;
  for (EnsembleKind kind :
       {EnsembleKind::GinibreDensity, EnsembleKind::PureRankR, EnsembleKind::SeparableMixture}) {
    spec.kind = kind;
    spec.rank = 2;
    const BipartiteOperator g = generate(spec);
    CHECK(g.dim_a() == 2);
    CHECK(g.dim_b() == 3);
    CHECK(std::abs(g.trace() - 1.0) < 1e-14);
    CHECK(hermitian_eig(g.matrix()).eigenvalues.front() > -1e-14);
    CHECK(generate(spec).matrix() == g.matrix());
  }
  // A separable mixture has a positive partial transpose.
  spec.kind = EnsembleKind::SeparableMixture;
  const BipartiteOperator s = generate(spec);
  CHECK(hermitian_eig(partial_transpose(s).matrix()).eigenvalues.front() > -1e-14);
}

TEST_CASE("rank maps of the embedding") {
  const RankCertReport r23 = certify_rank_maps(build_embedding(2, 3), 100, 1);
  CHECK(r23.trials == 100);
  CHECK(r23.passed == 100);
  CHECK(r23.lift_failures == 0);
  CHECK(r23.doubling_failures == 0);
  CHECK(r23.halving_failures == 0);

  const EmbeddingPair e11 = build_embedding(1, 1);
  const PureVector one{1, 1, {1.0}};
  CHECK(schmidt_rank(lift_antisymmetric(e11, one)) == 2);
  CHECK(schmidt_rank(lift(e11, one)) == 1);

  const EmbeddingPair e44 = build_embedding(4, 4);
  const PureVector v = random_pure(4, 4, 4, 3);
  const PureVector qv = lift_antisymmetric(e44, v);
  CHECK(schmidt_rank(qv) == 8);
  CHECK(schmidt_rank(compress(e44, qv)) == 4);

  const RankCertReport fixed = certify_rank_maps(e44, 10, 2, 3);
  CHECK(fixed.passed == 10);
  CHECK(fixed.worst_retained > 1e-3);
  CHECK(fixed.worst_discarded < 1e-12);
}
