#pragma once

// End-to-end runs behind the CLI: verification of a single state and the
// random γ → T(γ) → verify → symmetric FNF → re-verify demo.

#include <cstddef>
#include <cstdint>

#include <json.hpp>

#include "sepred/bipartite.hpp"
#include "sepred/embedding.hpp"
#include "sepred/fnf.hpp"
#include "sepred/report.hpp"

namespace sepred {

struct Tolerances {
  double spc_tol = kSpcTol;
  double rank_tol = kRankTol;
  double fnf_tol = kFnfTol;
  double floor_tol = kFloorTol;
  std::size_t max_iter = kFnfMaxIter;

  SinkhornOptions sinkhorn() const { return {fnf_tol, max_iter, floor_tol}; }
};

/// Defaults, overridden by SEPRED_SPC_TOL, SEPRED_RANK_TOL, SEPRED_FNF_TOL,
/// SEPRED_FLOOR_TOL and SEPRED_MAX_ITER when set.
Tolerances tolerances_from_env();

nlohmann::json to_json(const Tolerances& tol);

// Fixed tolerances for exact identities.
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kClosedFormTol = 1e-11;
inline constexpr double kBoundSlack = 1e-10;
inline constexpr double kCovarianceTol = 1e-9;

/// Checks on an arbitrary bipartite state: positive definiteness of δ^Γ and
/// R(δ^Γ), the antisymmetric realignment identity when δF = −δ, and the full
/// set of embedded-state bounds when δ splits as t·P_sym + ε·β.
Report verify_report(const BipartiteOperator& delta, const Tolerances& tol);

struct DemoOptions {
  std::size_t k = 2;
  std::size_t m = 2;
  std::uint64_t seed = 42;
  double eps = kDefaultEpsilon;
  std::size_t rank_trials = 20;
  Tolerances tol;
};

Report run_demo(const DemoOptions& opts);

}  // namespace sepred
