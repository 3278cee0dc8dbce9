#include <doctest.h>

#include <cmath>
#include <vector>

#include "sepred/embedding.hpp"
#include "sepred/schmidt.hpp"
#include "support.hpp"

using namespace sepred;
using testing::rel_diff;

namespace {

// (a × 0) ⊗ (0 × b) on C^(k+m) ⊗ C^(k+m), written out directly.
std::vector<cplx> split_product(std::size_t k, std::size_t m, const std::vector<cplx>& a,
                                const std::vector<cplx>& b, bool swapped) {
  const std::size_t n = k + m;
  std::vector<cplx> out(n * n, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (swapped) out[(k + j) * n + i] += b[j] * a[i];
      else out[i * n + (k + j)] += a[i] * b[j];
    }
  return out;
}

}  // namespace

TEST_CASE("k = m = 1 embedding pair") {
  const EmbeddingPair e = build_embedding(1, 1);
  REQUIRE(e.c.rows() == 4);
  REQUIRE(e.c.cols() == 1);
  const std::vector<cplx> c = {0.0, 1.0, 0.0, 0.0}, q = {0.0, 0.5, -0.5, 0.0};
  CHECK(e.c == ComplexMatrix::column(c));
  CHECK(e.q == ComplexMatrix::column(q));
}

TEST_CASE("embedding pair identities for k, m ≤ 4") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t m = 1; m <= 4; ++m) {
      const EmbeddingPair e = build_embedding(k, m);
      const ComplexMatrix ca = e.c.adjoint();
      const ComplexMatrix id = ComplexMatrix::identity(k * m);
      CHECK(max_abs_diff(ca * e.c, id) <= 1e-14);
      CHECK((ca * flip(k + m).matrix() * e.c).max_abs() <= 1e-14);
      CHECK(max_abs_diff(ca * e.q, id * 0.5) <= 1e-14);
    }
  CHECK(testing::thrown_kind([] { build_embedding(0, 2); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("compress") {
  const std::size_t k = 2, m = 3;
  const EmbeddingPair e = build_embedding(k, m);
  Rng rng(1);
  std::vector<cplx> a(k), b(m);
  for (auto& x : a) x = rng.complex_normal();
  for (auto& x : b) x = rng.complex_normal();
  // The swapped wedge term is annihilated.
  std::vector<cplx> wedge = split_product(k, m, a, b, false);
  const std::vector<cplx> swapped = split_product(k, m, a, b, true);
  for (std::size_t i = 0; i < wedge.size(); ++i) wedge[i] -= swapped[i];
  const PureVector c = compress(e, PureVector{k + m, k + m, wedge});
  const PureVector ab = tensor(a, b);
  for (std::size_t i = 0; i < ab.vec.size(); ++i) CHECK(std::abs(c.vec[i] - ab.vec[i]) < 1e-15);

  // Two orthonormal wedge terms: SR 4 before compression, 2 after.
  std::vector<cplx> v((k + m) * (k + m), 0.0);
  for (std::size_t t = 0; t < 2; ++t) {
    std::vector<cplx> at(k, 0.0), bt(m, 0.0);
    at[t] = 1.0;
    bt[t] = 1.0;
    const auto p = split_product(k, m, at, bt, false), s = split_product(k, m, at, bt, true);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += p[i] - s[i];
  }
  const PureVector vw{k + m, k + m, v};
  CHECK(schmidt_rank(vw) == 4);
  CHECK(schmidt_rank(compress(e, vw)) == 2);

  const PureVector zero = compress(e, PureVector{k + m, k + m, std::vector<cplx>(25, 0.0)});
  for (const cplx& x : zero.vec) CHECK(x == 0.0);
}

TEST_CASE("embed_state") {
  const EmbeddingPair e11 = build_embedding(1, 1);
  const BipartiteOperator one{1, 1, ComplexMatrix::identity(1)};
  const BipartiteOperator b = embed_state(e11, one);
  const std::vector<cplx> w = {0.0, 0.5, -0.5, 0.0};
  const ComplexMatrix wc = ComplexMatrix::column(w);
  CHECK(max_abs_diff(b.matrix(), wc * wc.adjoint()) < 1e-16);
  CHECK(b.trace() == doctest::Approx(0.5));

  const EmbeddingPair e = build_embedding(2, 3);
  const BipartiteOperator g = random_density(2, 3, 6, 9);
  const BipartiteOperator q = embed_state(e, g);
  CHECK(rel_diff(e.c.adjoint() * q.matrix() * e.c, g.matrix() * 0.25) <= 1e-14);
  const ComplexMatrix pa = proj_anti(5).matrix();
  CHECK(rel_diff(pa * q.matrix() * pa, q.matrix()) <= 1e-14);

  for (std::size_t r = 1; r <= 2; ++r) {
    const PureVector v = random_pure(2, 3, r, 10 + r);
    const BipartiteOperator qv = embed_state(e, v.projector());
    const PureVector lifted = lift_antisymmetric(e, v);
    CHECK(rel_diff(qv.matrix(), lifted.projector().matrix()) <= 1e-14);
    CHECK(schmidt_rank(lifted) == 2 * r);
  }
}

TEST_CASE("state validation") {
  const EmbeddingPair e = build_embedding(2, 2);
  CHECK(testing::thrown_kind([&] { embed_state(e, BipartiteOperator(2, 2, ComplexMatrix(4, 4))); }) ==
        ErrorKind::ZeroState);
  const double d[] = {1, 1, 1, -1};
  CHECK(testing::thrown_kind([&] {
          embed_state(e, BipartiteOperator(2, 2, ComplexMatrix::diagonal(d)));
        }) == ErrorKind::NotAState);
  ComplexMatrix nh = ComplexMatrix::identity(4);
  nh(0, 1) = 0.5;
  CHECK(testing::thrown_kind([&] { embed_state(e, BipartiteOperator(2, 2, nh)); }) ==
        ErrorKind::NotAState);
  CHECK(testing::thrown_kind([&] { embed_state(e, BipartiteOperator::identity(3, 2)); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("epsilon range") {
  const EmbeddingPair e = build_embedding(1, 2);
  const BipartiteOperator g = random_density(1, 2, 2, 3);
  CHECK_NOTHROW(embed_t(e, g, 1.0 / 6.0));
  CHECK(testing::thrown_kind([&] { embed_t(e, g, 0.0); }) == ErrorKind::EpsilonOutOfRange);
  CHECK(testing::thrown_kind([&] { embed_t(e, g, 0.2); }) == ErrorKind::EpsilonOutOfRange);
  CHECK(testing::thrown_kind([&] { embed_t(e, g, -0.1); }) == ErrorKind::EpsilonOutOfRange);
}

TEST_CASE("T(γ) for k = m = 1 is P_sym/2 + ww*/6") {
  const EmbeddingPair e = build_embedding(1, 1);
  const BipartiteOperator t = embed_t(e, BipartiteOperator{1, 1, ComplexMatrix::identity(1)});
  const std::vector<cplx> w = {0.0, 0.5, -0.5, 0.0};
  const ComplexMatrix wc = ComplexMatrix::column(w);
  const ComplexMatrix expect = proj_sym(2).matrix() * 0.5 + wc * wc.adjoint() * (1.0 / 6.0);
  CHECK(max_abs_diff(t.matrix(), expect) < 1e-16);
  CHECK(max_abs_diff(flip_conjugate(t).matrix(), t.matrix()) == 0.0);
}

TEST_CASE("verify_spc on embedded states meets the eigenvalue bounds") {
  std::uint64_t seed = 100;
  for (auto [k, m] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 2}, {2, 3}, {3, 1}}) {
    const EmbeddingPair e = build_embedding(k, m);
    for (int trial = 0; trial < 5; ++trial) {
      const BipartiteOperator g = random_density(k, m, k * m, seed++);
      const SpcReport s = verify_embedded(e, g);
      REQUIRE(s.embedded);
      const EmbeddedDiagnostics& d = *s.embedded;
      CHECK(s.ppt);
      CHECK(s.spc);
      CHECK(s.lambda_min_pt >= d.lambda_bound - 1e-10);
      CHECK(s.lambda_min_realign_pt >= d.lambda_bound - 1e-10);
      CHECK(d.closed_form_residual <= 1e-11);
      CHECK(d.antisym_realign_residual <= 1e-12);
      CHECK(d.eps_bound_lhs <= d.epsilon + 1e-15);
      CHECK(d.pt_norm <= d.marginal_norm * (1 + 1e-12));
      CHECK(d.marginal_norm <= d.trace_q_part * (1 + 1e-12));
      CHECK(std::abs(d.distance_to_sym - d.epsilon) <= 1e-12);
      CHECK(s.flip_residual <= 1e-15);
      CHECK(s.realign_hermitian_residual <= 1e-14);
    }
  }
}

TEST_CASE("verify_spc boundary cases") {
  // P_anti / tr at n = 3: P_anti^Γ = (Id − uu^t)/2 has eigenvalue (1 − n)/2.
  const BipartiteOperator pa = normalize(proj_anti(3));
  const SpcReport s = verify_spc(pa);
  CHECK_FALSE(s.ppt);
  CHECK_FALSE(s.spc);
  CHECK(std::abs(s.lambda_min_pt - (-1.0) / 3.0) < 1e-14);

  // Id / n²: δ^Γ = δ ≻ 0, R(δ^Γ) = uu^t/n² has λ_min = 0.
  const BipartiteOperator id = normalize(BipartiteOperator::identity(3, 3));
  const SpcReport t = verify_spc(id);
  CHECK(t.ppt);
  CHECK_FALSE(t.spc);
  CHECK(std::abs(t.lambda_min_realign_pt) < 1e-15);

  ComplexMatrix nh = ComplexMatrix::identity(4);
  nh(0, 3) = 1.0;
  CHECK(testing::thrown_kind([&] { verify_spc(BipartiteOperator(2, 2, nh)); }) ==
        ErrorKind::NotHermitian);
  CHECK(testing::thrown_kind([] { verify_spc(BipartiteOperator::identity(2, 3)); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("distance to P_sym equals ε") {
  for (double eps : {1.0 / 6.0, 0.01, 0.1}) {
    for (auto [k, m] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 3}, {3, 3}}) {
      const EmbeddingPair e = build_embedding(k, m);
      const BipartiteOperator g = random_density(k, m, 1 + (k * m) / 2, 7 * k + m);
      CHECK(std::abs(distance_to_sym(e, g, eps) - eps) <= 1e-12);
    }
  }
  const EmbeddingPair e11 = build_embedding(1, 1);
  CHECK(std::abs(distance_to_sym(e11, BipartiteOperator{1, 1, ComplexMatrix::identity(1)}) -
                 1.0 / 6.0) <= 1e-12);
}

TEST_CASE("split_embedded recovers the embedded structure") {
  const EmbeddingPair e = build_embedding(2, 2);
  const BipartiteOperator g = random_density(2, 2, 3, 77);
  const double eps = 0.05;
  const BipartiteOperator t = embed_t(e, g, eps);
  const auto split = split_embedded(t);
  REQUIRE(split);
  CHECK(std::abs(split->epsilon - eps) < 1e-13);
  CHECK(std::abs(split->trace_q_part - embed_state(e, g).trace()) < 1e-13);
  CHECK(rel_diff(split->q_part.matrix(), embed_state(e, g).matrix()) < 1e-12);

  const BipartiteOperator scaled = normalize(t);
  const auto s2 = split_embedded(scaled);
  REQUIRE(s2);
  CHECK(std::abs(s2->epsilon - eps) < 1e-13);

  // Id = P_sym + P_anti splits too, with ε = tr(P_anti) / 1 = n(n − 1)/2.
  const auto s3 = split_embedded(normalize(BipartiteOperator::identity(4, 4)));
  REQUIRE(s3);
  CHECK(std::abs(s3->epsilon - 6.0) < 1e-12);
  CHECK_FALSE(split_embedded(normalize(proj_anti(3))));
  Rng rng(3);
  CHECK_FALSE(split_embedded(BipartiteOperator{3, 3, testing::random_psd(rng, 9)}));
}
