#pragma once

// Embedding of states on C^k ⊗ C^m into flip-symmetric states on
// C^(k+m) ⊗ C^(k+m) whose partial transpose and realigned partial transpose
// are positive definite.
//
//   C = [Id_k; 0] ⊗ [0; Id_m]        ((a ⊗ b) ↦ (a × 0) ⊗ (0 × b))
//   Q = P_anti C
//   T(γ) = tr(QγQ*) P_sym + ε QγQ*,  0 < ε ≤ 1/6

#include <cstddef>
#include <optional>

#include "sepred/bipartite.hpp"

namespace sepred {

inline constexpr double kDefaultEpsilon = 1.0 / 6.0;
inline constexpr double kSpcTol = 1e-9;
/// Relative eigenvalue slack accepted for "positive semidefinite" inputs.
inline constexpr double kStateTol = 1e-10;

struct EmbeddingPair {
  std::size_t k = 0;
  std::size_t m = 0;
  ComplexMatrix c;  // (k+m)^2 x km
  ComplexMatrix q;  // (k+m)^2 x km

  std::size_t n() const noexcept { return k + m; }
};

EmbeddingPair build_embedding(std::size_t k, std::size_t m);

/// C v for v on C^k ⊗ C^m.
PureVector lift(const EmbeddingPair& e, const PureVector& v);
/// Q v for v on C^k ⊗ C^m.
PureVector lift_antisymmetric(const EmbeddingPair& e, const PureVector& v);
/// C* v for v on C^(k+m) ⊗ C^(k+m). Schmidt rank halves for v inside
/// (C^k × 0) ∧ (0 × C^m).
PureVector compress(const EmbeddingPair& e, const PureVector& v);

/// Throws NotAState / ZeroState / DimensionMismatch unless γ is a nonzero
/// positive semidefinite operator on C^k ⊗ C^m.
void require_state(const EmbeddingPair& e, const BipartiteOperator& gamma);

/// QγQ*, supported on the antisymmetric subspace.
BipartiteOperator embed_state(const EmbeddingPair& e, const BipartiteOperator& gamma);

/// Throws EpsilonOutOfRange unless 0 < ε ≤ 1/6.
void require_epsilon(double eps);

/// T(γ). No trace normalization is applied.
BipartiteOperator embed_t(const EmbeddingPair& e, const BipartiteOperator& gamma,
                          double eps = kDefaultEpsilon);

/// δ / tr(δ).
BipartiteOperator normalize(const BipartiteOperator& op);

/// ‖T(γ)/tr(QγQ*) − P_sym‖_1.
double distance_to_sym(const EmbeddingPair& e, const BipartiteOperator& gamma,
                       double eps = kDefaultEpsilon);

/// Diagnostics for an operator whose Q-part is known.
struct EmbeddedDiagnostics {
  double epsilon = 0.0;
  double trace_q_part = 0.0;          // tr(QγQ*)
  double pt_norm = 0.0;               // ‖(QγQ*)^Γ‖_∞
  double marginal_norm = 0.0;         // ‖(QγQ*)_A‖_∞
  double eps_bound_lhs = 0.0;         // ε ‖(QγQ*)^Γ‖_∞ / tr(QγQ*)
  double distance_to_sym = 0.0;       // ‖δ/tr(QγQ*) − P_sym‖_1
  double closed_form_residual = 0.0;  // R(δ^Γ) vs tr·(Id+uu^t)/2 − ε(QγQ*)^Γ, relative
  double antisym_realign_residual = 0.0;  // R(β^Γ) + β^Γ with β = QγQ*, relative
  double lambda_bound = 0.0;          // (1/2 − ε) tr(QγQ*)
};

struct SpcReport {
  double lambda_min_pt = 0.0;          // λ_min(δ^Γ)
  double lambda_min_realign_pt = 0.0;  // λ_min of the Hermitian part of R(δ^Γ)
  double pt_norm = 0.0;                // ‖δ^Γ‖_∞
  double realign_pt_norm = 0.0;        // ‖R(δ^Γ)‖_∞
  double realign_hermitian_residual = 0.0;  // ‖M − M*‖_max / ‖M‖_max, M = R(δ^Γ)
  double flip_residual = 0.0;          // ‖FδF − δ‖_max / ‖δ‖_max
  bool ppt = false;                    // δ^Γ ≻ 0 at the threshold
  bool spc = false;                    // δ^Γ ≻ 0 and R(δ^Γ) ≻ 0
  std::optional<EmbeddedDiagnostics> embedded;
};

/// Positive-definiteness report for δ^Γ and R(δ^Γ). Flags use the strict
/// threshold λ_min > tol · ‖·‖_∞. Throws NotHermitian, DimensionMismatch.
SpcReport verify_spc(const BipartiteOperator& delta, double tol = kSpcTol);

/// verify_spc(T(γ)) plus the diagnostics that need γ.
SpcReport verify_embedded(const EmbeddingPair& e, const BipartiteOperator& gamma,
                          double eps = kDefaultEpsilon, double tol = kSpcTol);

/// Splits a flip-symmetric δ = t P_sym + β with β supported on the
/// antisymmetric subspace, when δ has that shape within `tol`; returns
/// nothing otherwise.
struct EmbeddedSplit {
  double trace_q_part = 0.0;  // t = tr(β)/ε recovered from the symmetric block
  double epsilon = 0.0;       // tr(β) / t
  BipartiteOperator q_part;   // β / ε
};
std::optional<EmbeddedSplit> split_embedded(const BipartiteOperator& delta,
                                            double tol = kSpcTol);

/// Diagnostics computed from a split.
EmbeddedDiagnostics embedded_diagnostics(const BipartiteOperator& delta,
                                         const EmbeddedSplit& split);

}  // namespace sepred
