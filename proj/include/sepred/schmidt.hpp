#pragma once

// Schmidt decomposition of pure bipartite vectors, seeded ensembles, and
// pure-state certificates for the rank maps of the embedding.
//
// The Schmidt number of a mixed state γ is the minimum, over decompositions
// γ = Σ v_i v_i*, of max_i SR(v_i). It is not computed here; only the pure
// rank identities it rests on are checked.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sepred/bipartite.hpp"
#include "sepred/embedding.hpp"

namespace sepred {

struct SchmidtDecomp {
  std::vector<double> coefficients;  // descending, retained only
  ComplexMatrix left;                // dimA x rank
  ComplexMatrix right;               // dimB x rank
  std::size_t rank = 0;
  /// Smallest retained and largest discarded coefficient, relative to the
  /// largest; the gap to rank_tol shows how fragile the rank call is.
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
};

/// Throws ZeroVector for v = 0.
SchmidtDecomp schmidt_decompose(const PureVector& v, double rank_tol = kRankTol);

std::size_t schmidt_rank(const PureVector& v, double rank_tol = kRankTol);

/// Unit vector Σ_{i<r} c_i a_i ⊗ b_i with orthonormal a_i, b_i and c_i
/// drawn from [0.1, 1]. Throws RankOutOfRange unless 1 ≤ r ≤ min(k, m).
PureVector random_pure(std::size_t k, std::size_t m, std::size_t r, std::uint64_t seed);

/// GG* / tr(GG*) with G a (km) x rank Ginibre matrix.
BipartiteOperator random_density(std::size_t k, std::size_t m, std::size_t rank,
                                 std::uint64_t seed);

enum class EnsembleKind { GinibreDensity, PureRankR, SeparableMixture };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GinibreDensity;
  std::size_t k = 2;
  std::size_t m = 2;
  std::size_t rank = 1;   // Ginibre rank, or Schmidt rank for PureRankR
  std::size_t terms = 4;  // product terms for SeparableMixture
  std::uint64_t seed = 0;
};

/// Unit-trace state drawn from `spec`.
BipartiteOperator generate(const EnsembleSpec& spec);

struct RankCertReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t lift_failures = 0;       // SR(Cv) != SR(v)
  std::size_t doubling_failures = 0;   // SR(Qv) != 2 SR(v)
  std::size_t halving_failures = 0;    // SR(C*Qv) != SR(Qv) / 2
  double worst_retained = 1.0;         // min smallest_retained over all decompositions
  double worst_discarded = 0.0;        // max largest_discarded over all decompositions
};

/// Draws `trials` vectors (trial i from derive_seed(seed, i)) with Schmidt
/// rank `rank`, or a per-trial random rank in [1, min(k, m)] when absent.
RankCertReport certify_rank_maps(const EmbeddingPair& e, std::size_t trials, std::uint64_t seed,
                                 std::optional<std::size_t> rank = std::nullopt,
                                 double rank_tol = kRankTol);

}  // namespace sepred
