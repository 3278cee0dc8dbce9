#include "sepred/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sepred/error.hpp"
#include "sepred/rng.hpp"
#include "sepred/schmidt.hpp"

namespace sepred {

namespace {

double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  const double d = max_abs_diff(a, b);
  return scale > 0.0 ? d / scale : d;
}

double env_double(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw Error(ErrorKind::ParseError, std::string(name) + "='" + raw + "' is not a positive number");
  }
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void embedded_checks(Report& rep, const SpcReport& s, const EmbeddedDiagnostics& d) {
  const double t = d.trace_q_part;
  rep.pass_if("embedded.epsilon_range", "0 < ε ≤ 1/6",
              d.epsilon > 0.0 && d.epsilon <= kDefaultEpsilon * (1.0 + kIdentityTol),
              "ε = " + fmt(d.epsilon));
  rep.at_most("embedded.eps_chain", "ε‖(QγQ*)^Γ‖_∞ / tr(QγQ*) ≤ ε", d.eps_bound_lhs - d.epsilon,
              kBoundSlack);
  rep.at_most("embedded.pt_norm_bound", "‖(QγQ*)^Γ‖_∞ ≤ ‖(QγQ*)_A‖_∞",
              (d.pt_norm - d.marginal_norm) / t, kBoundSlack);
  rep.at_most("embedded.marginal_trace_bound", "‖(QγQ*)_A‖_∞ ≤ tr(QγQ*)",
              (d.marginal_norm - t) / t, kBoundSlack);
  rep.at_most("embedded.lambda_pt_bound", "λ_min(T(γ)^Γ) ≥ (1/2 − ε) tr(QγQ*)",
              d.lambda_bound - s.lambda_min_pt, kBoundSlack);
  rep.at_most("embedded.lambda_realign_bound", "λ_min(R(T(γ)^Γ)) ≥ (1/2 − ε) tr(QγQ*)",
              d.lambda_bound - s.lambda_min_realign_pt, kBoundSlack);
  rep.at_most("embedded.closed_form", "R(T(γ)^Γ) = tr(QγQ*)(Id + uu^t)/2 − ε(QγQ*)^Γ",
              d.closed_form_residual, kClosedFormTol);
  rep.at_most("embedded.q_part_realignment", "R((QγQ*)^Γ) = −(QγQ*)^Γ",
              d.antisym_realign_residual, kIdentityTol);
  rep.at_most("embedded.ball_distance", "‖T(γ)/tr(QγQ*) − P_sym‖_1 = ε",
              std::abs(d.distance_to_sym - d.epsilon), kIdentityTol);
}

}  // namespace

Tolerances tolerances_from_env() {
  Tolerances t;
  t.spc_tol = env_double("SEPRED_SPC_TOL", t.spc_tol);
  t.rank_tol = env_double("SEPRED_RANK_TOL", t.rank_tol);
  t.fnf_tol = env_double("SEPRED_FNF_TOL", t.fnf_tol);
  t.floor_tol = env_double("SEPRED_FLOOR_TOL", t.floor_tol);
  t.max_iter = static_cast<std::size_t>(
      env_double("SEPRED_MAX_ITER", static_cast<double>(t.max_iter)));
  return t;
}

nlohmann::json to_json(const Tolerances& tol) {
  return {{"spc_tol", tol.spc_tol},     {"rank_tol", tol.rank_tol},
          {"fnf_tol", tol.fnf_tol},     {"floor_tol", tol.floor_tol},
          {"max_iter", tol.max_iter},   {"identity_tol", kIdentityTol},
          {"closed_form_tol", kClosedFormTol}, {"bound_slack", kBoundSlack},
          {"covariance_tol", kCovarianceTol}};
}

Report verify_report(const BipartiteOperator& delta, const Tolerances& tol) {
  const auto start = std::chrono::steady_clock::now();
  Report rep("verify");
  rep.parameters() = {{"dimA", delta.dim_a()}, {"dimB", delta.dim_b()},
                      {"tolerances", to_json(tol)}};

  const SpcReport s = verify_spc(delta, tol.spc_tol);
  rep.above("spc.pt_positive_definite", "δ^Γ positive definite", s.lambda_min_pt,
            tol.spc_tol * s.pt_norm);
  rep.above("spc.realigned_pt_positive_definite", "R(δ^Γ) positive definite",
            s.lambda_min_realign_pt, tol.spc_tol * s.realign_pt_norm);
  if (s.flip_residual <= 1e-10) {
    rep.at_most("spc.realigned_pt_hermitian", "R(δ^Γ) Hermitian when FδF = δ",
                s.realign_hermitian_residual, tol.spc_tol);
  } else {
    rep.skip("spc.realigned_pt_hermitian", "R(δ^Γ) Hermitian when FδF = δ",
             "input is not flip symmetric");
  }

  const std::size_t n = delta.dim_a();
  const ComplexMatrix delta_f = delta.matrix() * flip(n).matrix();
  if (rel_diff(delta_f, delta.matrix() * -1.0) <= 1e-10) {
    const BipartiteOperator pt = partial_transpose(delta);
    rep.at_most("bipartite.antisymmetric_realignment", "R(δ^Γ) = −δ^Γ when δF = −δ",
                rel_diff(realign(pt), pt.matrix() * -1.0), kIdentityTol);
  } else {
    rep.skip("bipartite.antisymmetric_realignment", "R(δ^Γ) = −δ^Γ when δF = −δ",
             "δF ≠ −δ");
  }

  if (const auto split = split_embedded(delta, 1e-10)) {
    embedded_checks(rep, s, embedded_diagnostics(delta, *split));
  } else {
    for (const char* id :
         {"embedded.epsilon_range", "embedded.eps_chain", "embedded.pt_norm_bound",
          "embedded.marginal_trace_bound", "embedded.lambda_pt_bound",
          "embedded.lambda_realign_bound", "embedded.closed_form",
          "embedded.q_part_realignment", "embedded.ball_distance"}) {
      rep.skip(id, "embedded-state bound", "input is not of the form t·P_sym + ε·QγQ*");
    }
  }
  rep.set_runtime(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return rep;
}

Report run_demo(const DemoOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  require_epsilon(opts.eps);
  const Tolerances& tol = opts.tol;
  Report rep("demo");
  rep.parameters() = {{"k", opts.k},           {"m", opts.m},
                      {"seed", opts.seed},     {"eps", opts.eps},
                      {"rank_trials", opts.rank_trials}, {"tolerances", to_json(tol)}};

  const EmbeddingPair e = build_embedding(opts.k, opts.m);
  const std::size_t n = e.n();
  const std::size_t km = opts.k * opts.m;
  const ComplexMatrix id_km = ComplexMatrix::identity(km);
  const ComplexMatrix f = flip(n).matrix();
  const ComplexMatrix c_adj = e.c.adjoint();

  // Embedding pair.
  rep.at_most("embedding.isometry", "C*C = Id", max_abs_diff(c_adj * e.c, id_km), 1e-14);
  rep.at_most("embedding.flip_annihilation", "C*FC = 0", (c_adj * f * e.c).max_abs(), 1e-14);
  rep.at_most("embedding.half_identity", "C*Q = Id/2", max_abs_diff(c_adj * e.q, id_km * 0.5),
              1e-14);

  // Pure-state rank maps and Schmidt decomposition.
  const RankCertReport cert =
      certify_rank_maps(e, opts.rank_trials, derive_seed(opts.seed, 1), std::nullopt, tol.rank_tol);
  rep.at_most("schmidt.rank_maps", "SR(Cv) = SR(v), SR(Qv) = 2 SR(v), SR(C*Qv) = SR(Qv)/2",
              static_cast<double>(cert.trials - cert.passed), 0.0,
              std::to_string(cert.passed) + "/" + std::to_string(cert.trials) +
                  " trials; worst retained " + fmt(cert.worst_retained) +
                  ", worst discarded " + fmt(cert.worst_discarded));
  {
    const PureVector v =
        random_pure(opts.k, opts.m, std::min(opts.k, opts.m), derive_seed(opts.seed, 2));
    const SchmidtDecomp d = schmidt_decompose(v, tol.rank_tol);
    std::vector<cplx> rebuilt(v.vec.size(), 0.0);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < d.rank; ++i) {
      sum_sq += d.coefficients[i] * d.coefficients[i];
      for (std::size_t a = 0; a < v.dim_a; ++a)
        for (std::size_t b = 0; b < v.dim_b; ++b)
          rebuilt[a * v.dim_b + b] += d.coefficients[i] * d.left(a, i) * d.right(b, i);
    }
    double err = 0.0;
    for (std::size_t i = 0; i < rebuilt.size(); ++i) err = std::max(err, std::abs(rebuilt[i] - v.vec[i]));
    rep.at_most("schmidt.reconstruction", "v = Σ s_i a_i ⊗ b_i", err, 1e-11);
    rep.at_most("schmidt.norm_conservation", "Σ s_i² = ‖v‖²", std::abs(sum_sq - v.norm() * v.norm()),
                kIdentityTol);
  }

  // The embedded state.
  const BipartiteOperator gamma = random_density(opts.k, opts.m, km, derive_seed(opts.seed, 0));
  const BipartiteOperator beta = embed_state(e, gamma);
  const BipartiteOperator t_gamma = embed_t(e, gamma, opts.eps);
  const double tq = beta.trace();
  rep.at_most("embedding.compression", "C*(QγQ*)C = γ/4",
              rel_diff(c_adj * beta.matrix() * e.c, gamma.matrix() * 0.25), kIdentityTol);
  const ComplexMatrix pa = proj_anti(n).matrix();
  rep.at_most("embedding.antisymmetric_support", "P_anti QγQ* P_anti = QγQ*",
              rel_diff(pa * beta.matrix() * pa, beta.matrix()), kIdentityTol);
  rep.at_most("embedding.flip_symmetry", "F T(γ) F = T(γ)",
              rel_diff(flip_conjugate(t_gamma).matrix(), t_gamma.matrix()), kIdentityTol);
  const double expected_trace = tq * (static_cast<double>(n * (n + 1)) / 2.0 + opts.eps);
  rep.at_most("embedding.trace", "tr T(γ) = tr(QγQ*)(n(n+1)/2 + ε)",
              std::abs(t_gamma.trace() - expected_trace) / expected_trace, kIdentityTol);

  const SpcReport spc = verify_embedded(e, gamma, opts.eps, tol.spc_tol);
  rep.pass_if("embedding.spc", "T(γ)^Γ and R(T(γ)^Γ) positive definite", spc.spc,
              "λ_min " + fmt(spc.lambda_min_pt) + ", " + fmt(spc.lambda_min_realign_pt));
  embedded_checks(rep, spc, *spc.embedded);

  // Bipartite calculus.
  const ComplexMatrix uu = max_ent_vec(n).projector().matrix();
  const ComplexMatrix id_nn = ComplexMatrix::identity(n * n);
  rep.at_most("bipartite.flip_partial_transpose", "F^Γ = uu^t",
              max_abs_diff(partial_transpose(flip(n)).matrix(), uu), kIdentityTol);
  rep.at_most("bipartite.realign_fixed_point", "R(Id + uu^t) = Id + uu^t",
              max_abs_diff(realign(BipartiteOperator{n, n, id_nn + uu}), id_nn + uu), kIdentityTol);
  Rng rng(derive_seed(opts.seed, 3));
  {
    const ComplexMatrix g = rng.ginibre(n * n, n * n);
    const BipartiteOperator anti{n, n, hermitian_part(pa * hermitian_part(g) * pa)};
    const BipartiteOperator pt = partial_transpose(anti);
    rep.at_most("bipartite.antisymmetric_realignment", "R(δ^Γ) = −δ^Γ when δF = −δ",
                rel_diff(realign(pt), pt.matrix() * -1.0), kIdentityTol);
  }
  {
    const ComplexMatrix o = ComplexMatrix::identity(n) + rng.ginibre(n, n) * 0.3;
    const BipartiteOperator conj_t = local_filter(t_gamma, o, o);
    const ComplexMatrix lhs = realign(partial_transpose(conj_t));
    const ComplexMatrix rhs = kron(o, o.conjugate()) * realign(partial_transpose(t_gamma)) *
                              kron(o.adjoint(), o.transpose());
    rep.at_most("bipartite.realign_covariance", "R(((O⊗O)δ(O⊗O)*)^Γ) = (O⊗Ō)R(δ^Γ)(O*⊗O^t)",
                rel_diff(lhs, rhs), 1e-10);
  }
  {
    const BipartiteOperator pt = partial_transpose(gamma);
    const double herm = max_abs_diff(pt.matrix(), pt.matrix().adjoint());
    rep.at_most("bipartite.pt_trace_hermitian", "tr δ^Γ = tr δ and (δ^Γ)* = δ^Γ",
                std::max(std::abs(pt.trace() - gamma.trace()), herm), kIdentityTol);
    const double marg = std::max(max_abs_diff(marginal_a(pt), marginal_a(gamma)),
                                 max_abs_diff(marginal_b(pt), marginal_b(gamma).transpose()));
    rep.at_most("bipartite.pt_marginals", "(δ^Γ)_A = δ_A, (δ^Γ)_B = (δ_B)^t", marg, kIdentityTol);
    const BipartiteOperator lifted{n, n, hermitian_part(e.c * gamma.matrix() * c_adj)};
    rep.at_most("bipartite.flip_swaps_marginals", "(FδF)_A = δ_B",
                max_abs_diff(marginal_a(flip_conjugate(lifted)), marginal_b(lifted)), kIdentityTol);
  }
  {
    const BipartiteOperator pt = partial_transpose(t_gamma);
    const EigResult eig = hermitian_eig(hermitian_part(pt.matrix()));
    rep.at_most("linalg.eig_reconstruction", "‖H − VΛV*‖ ≤ eig_tol ‖H‖",
                rel_diff(reconstruct(eig), pt.matrix()), kEigTol);
  }

  // Filter normal form.
  const BipartiteOperator delta = normalize(t_gamma);
  const SinkhornResult fnf = sinkhorn_symmetric(delta, tol.sinkhorn());
  rep.pass_if("fnf.converged", "(O⊗O)T(γ)(O⊗O)* reaches the filter normal form", fnf.converged,
              std::string(to_string(fnf.status)) + " after " + std::to_string(fnf.iterations) +
                  " iterations");
  rep.at_most("fnf.marginals", "δ_A = δ_B = Id", fnf.residuals.back(), tol.fnf_tol);
  const BipartiteOperator raw = local_filter(delta, fnf.filter_a, fnf.filter_b);
  rep.at_most("fnf.filter_reconstruction", "filtered = c (O⊗O) δ (O⊗O)*",
              rel_diff(fnf.filtered.matrix(), raw.matrix() * fnf.scale), 1e-10);
  rep.at_most("fnf.flip_preserved", "FδF = δ at every step", fnf.max_flip_residual, 1e-10);
  const SpcReport after = verify_spc(fnf.filtered, tol.spc_tol);
  rep.pass_if("fnf.spc_preserved", "R(δ^Γ) positive definite after filtering", after.spc,
              "λ_min " + fmt(after.lambda_min_pt) + ", " + fmt(after.lambda_min_realign_pt));
  {
    const ComplexMatrix& o = fnf.filter_a;
    const ComplexMatrix lhs = realign(partial_transpose(fnf.filtered));
    const ComplexMatrix rhs = kron(o, o.conjugate()) * realign(partial_transpose(delta)) *
                              kron(o.adjoint(), o.transpose()) * fnf.scale;
    rep.at_most("fnf.realign_covariance", "R(δ_O^Γ) = (O⊗Ō)R(δ^Γ)(O*⊗O^t)", rel_diff(lhs, rhs),
                kCovarianceTol);
  }
  if (fnf.monotone) {
    rep.pass_if("fnf.residual_monotone", "marginal residual non-increasing", true);
  } else {
    rep.skip("fnf.residual_monotone", "marginal residual non-increasing",
             "diagnostic: residual increased after the first iteration");
  }

  // Without the P_sym term the embedded state cannot be filtered when k ≠ m.
  if (opts.k != opts.m) {
    const RankWitness w = rank_witness(e, gamma, tol.rank_tol);
    rep.pass_if("fnf.rank_witness", "rank G_{QγQ*}(P) ≤ rank(marginal) ≤ min(k,m) < max(k,m)",
                w.obstructed && w.witness_rank <= w.bound,
                "witness rank " + std::to_string(w.witness_rank) + ", bound " +
                    std::to_string(w.bound) + ", input rank " + std::to_string(w.input_rank));
    const SinkhornResult bare = sinkhorn_symmetric(normalize(beta), tol.sinkhorn());
    rep.pass_if("fnf.obstruction", "QγQ* has no filter normal form for k ≠ m", !bare.converged,
                std::string(to_string(bare.status)) + " after " +
                    std::to_string(bare.iterations) + " iterations, residual " +
                    fmt(bare.residuals.back()));
  } else {
    rep.skip("fnf.rank_witness", "rank G_{QγQ*}(P) < max(k,m)", "k == m");
    rep.skip("fnf.obstruction", "QγQ* has no filter normal form for k ≠ m", "k == m");
  }

  rep.set_runtime(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return rep;
}

}  // namespace sepred
