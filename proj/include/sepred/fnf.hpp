#pragma once

// Operator Sinkhorn scaling to the filter normal form: local invertible
// filters that bring both marginals of a state on C^n ⊗ C^n to Id_n, with
// the trace fixed at n.

#include <cstddef>
#include <vector>

#include "sepred/bipartite.hpp"
#include "sepred/embedding.hpp"

namespace sepred {

inline constexpr double kFnfTol = 1e-10;
inline constexpr std::size_t kFnfMaxIter = 10'000;

enum class SinkhornStatus {
  Converged,
  MaxIterations,
  /// The accumulated filter's condition number passed 1 / floor_tol: the
  /// iteration is driving the filter towards a singular limit.
  FilterDegenerate,
};

const char* to_string(SinkhornStatus s) noexcept;

struct SinkhornOptions {
  double fnf_tol = kFnfTol;
  std::size_t max_iter = kFnfMaxIter;
  double floor_tol = kFloorTol;
};

struct SinkhornResult {
  ComplexMatrix filter_a;
  ComplexMatrix filter_b;
  BipartiteOperator filtered;
  /// residuals[0] is the input's; residuals[i] follows round i.
  std::vector<double> residuals;
  bool converged = false;
  std::size_t iterations = 0;
  SinkhornStatus status = SinkhornStatus::MaxIterations;
  /// filtered = scale · (A ⊗ B) δ_in (A ⊗ B)*.
  double scale = 1.0;
  /// Largest ‖FδF − δ‖_max / ‖δ‖_max seen before re-symmetrization (symmetric mode).
  double max_flip_residual = 0.0;
  /// Residuals non-increasing after the first round, up to 1e−12 jitter.
  bool monotone = true;
};

/// max(‖δ_A − Id‖_∞, ‖δ_B − Id‖_∞).
double marginal_residual(const BipartiteOperator& op);

/// Alternating A-side / B-side scaling. Throws SingularMarginal (with the
/// iteration index) when a marginal breaks the eigenvalue floor.
SinkhornResult sinkhorn_two_sided(const BipartiteOperator& delta,
                                  const SinkhornOptions& opts = {});

/// Scaling by O ⊗ O; requires F δ F = δ (throws NotFlipSymmetric otherwise).
SinkhornResult sinkhorn_symmetric(const BipartiteOperator& delta,
                                  const SinkhornOptions& opts = {});

struct RankWitness {
  std::size_t witness_rank = 0;  // rank of G_{QγQ*}(P)
  std::size_t bound = 0;         // rank of the smaller side's marginal of γ
  std::size_t input_rank = 0;    // rank of P = max(k, m)
  bool obstructed = false;       // witness_rank < input_rank
};

/// Evaluates G_{QγQ*} on the projection onto the larger block of
/// C^(k+m). For k > m that is diag(Id_k, 0); for k < m, diag(0, Id_m).
/// Throws EqualDims when k == m.
RankWitness rank_witness(const EmbeddingPair& e, const BipartiteOperator& gamma,
                         double rank_tol = kRankTol);

}  // namespace sepred
