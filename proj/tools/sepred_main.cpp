// sepred: command-line front end for the embedding, verification and
// filter-normal-form pipeline.
//
// Exit codes: 0 success, 1 checks failed, 2 parse error, 3 validation error,
// 4 numerical failure, 5 Sinkhorn did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepred/embedding.hpp"
#include "sepred/error.hpp"
#include "sepred/fnf.hpp"
#include "sepred/pipeline.hpp"
#include "sepred/schmidt.hpp"
#include "sepred/state_io.hpp"

using namespace sepred;
using nlohmann::json;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitNoConvergence = 5;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return kExitParse;
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularMarginal: return kExitNumerical;
    default: return kExitValidation;
  }
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--spc-tol", tol.spc_tol, "relative positive-definiteness threshold")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rank-tol", tol.rank_tol, "relative singular-value cutoff")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--floor-tol", tol.floor_tol, "marginal eigenvalue floor")
      ->check(CLI::PositiveNumber);
}

void emit_report(const Report& rep, const std::string& path, bool text) {
  const std::string body = rep.to_json().dump(2) + "\n";
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out << body;
  }
  if (text) std::cout << rep.to_text();
  else if (path.empty()) std::cout << body;
}

json residual_trace(const std::vector<double>& r) {
  constexpr std::size_t kShown = 10;
  if (r.size() <= 2 * kShown) return r;
  const std::vector<double> head(r.begin(), r.begin() + kShown);
  const std::vector<double> tail(r.end() - kShown, r.end());
  return {{"head", head}, {"tail", tail}, {"omitted", r.size() - 2 * kShown}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedding of bipartite states into PPT/SPC states, with verification and "
               "filter normal forms"};
  app.require_subcommand(1);

  Tolerances tol;
  try {
    tol = tolerances_from_env();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::string in_path, out_path, report_path;
  double eps = kDefaultEpsilon;
  bool text = false;

  auto* embed = app.add_subcommand("embed", "write T(γ) for the state in --in");
  embed->add_option("--in", in_path, "input state file")->required();
  embed->add_option("--eps", eps, "perturbation weight in ]0, 1/6]");
  embed->add_option("--out", out_path, "output state file")->required();
  add_tolerance_flags(embed, tol);

  auto* verify = app.add_subcommand("verify", "check PPT/SPC and the embedded-state bounds");
  verify->add_option("--in", in_path, "input state file")->required();
  verify->add_option("--report", report_path, "write the JSON report here");
  verify->add_flag("--text", text, "print a plain-text table instead of JSON");
  add_tolerance_flags(verify, tol);

  bool symmetric = false;
  auto* fnf = app.add_subcommand("fnf", "bring both marginals to Id by local filtering");
  fnf->add_option("--in", in_path, "input state file")->required();
  fnf->add_flag("--symmetric", symmetric, "filter by O ⊗ O (input must be flip symmetric)");
  fnf->add_option("--tol,--fnf-tol", tol.fnf_tol, "marginal residual target")
      ->check(CLI::PositiveNumber);
  fnf->add_option("--max-iter", tol.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  fnf->add_option("--out", out_path, "output state file")->required();
  add_tolerance_flags(fnf, tol);

  auto* rank = app.add_subcommand("rank", "Schmidt rank of a pure-vector file");
  rank->add_option("--in", in_path, "input vector file")->required();
  add_tolerance_flags(rank, tol);

  DemoOptions demo_opts;
  auto* demo = app.add_subcommand("demo", "random γ → T(γ) → verify → symmetric FNF → re-verify");
  demo->add_option("--k", demo_opts.k, "first factor dimension")->check(CLI::PositiveNumber);
  demo->add_option("--m", demo_opts.m, "second factor dimension")->check(CLI::PositiveNumber);
  demo->add_option("--seed", demo_opts.seed, "RNG seed");
  demo->add_option("--eps", eps, "perturbation weight in ]0, 1/6]");
  demo->add_option("--rank-trials", demo_opts.rank_trials, "pure-state rank-map trials");
  demo->add_option("--fnf-tol", tol.fnf_tol, "marginal residual target")
      ->check(CLI::PositiveNumber);
  demo->add_option("--max-iter", tol.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  demo->add_option("--report", report_path, "write the JSON report here");
  demo->add_flag("--text", text, "print a plain-text table instead of JSON");
  add_tolerance_flags(demo, tol);

  std::string kind = "ginibre";
  EnsembleSpec spec;
  auto* gen = app.add_subcommand("gen", "draw a seeded random state");
  gen->add_option("--kind", kind, "ensemble")
      ->check(CLI::IsMember({"ginibre", "pure", "separable"}));
  gen->add_option("--k", spec.k, "first factor dimension")->check(CLI::PositiveNumber);
  gen->add_option("--m", spec.m, "second factor dimension")->check(CLI::PositiveNumber);
  gen->add_option("--rank", spec.rank, "Ginibre rank or Schmidt rank")->check(CLI::PositiveNumber);
  gen->add_option("--terms", spec.terms, "product terms for --kind separable")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", spec.seed, "RNG seed");
  gen->add_option("--out", out_path, "output state file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*embed) {
      const StateFile input = read_state_file(in_path);
      require_epsilon(eps);
      const BipartiteOperator gamma = input.density();
      const EmbeddingPair e = build_embedding(gamma.dim_a(), gamma.dim_b());
      const BipartiteOperator t = embed_t(e, gamma, eps);
      const SpcReport s = verify_embedded(e, gamma, eps, tol.spc_tol);
      const EmbeddedDiagnostics& d = *s.embedded;
      StateFile out{t, {}, {}};
      out.metadata = {{"generator", "sepred embed"},
                      {"k", e.k},
                      {"m", e.m},
                      {"epsilon", eps},
                      {"trace_q_part", d.trace_q_part}};
      if (!input.metadata.empty()) out.metadata["source"] = input.metadata;
      write_state_file(out_path, out);
      const json summary = {{"k", e.k},
                            {"m", e.m},
                            {"n", e.n()},
                            {"epsilon", eps},
                            {"trace_q_part", d.trace_q_part},
                            {"lambda_min_pt", s.lambda_min_pt},
                            {"lambda_min_realign_pt", s.lambda_min_realign_pt},
                            {"lambda_bound", d.lambda_bound},
                            {"ppt", s.ppt},
                            {"spc", s.spc},
                            {"out", out_path}};
      std::cout << summary.dump(2) << '\n';
      return 0;
    }

    if (*verify) {
      const Report rep = verify_report(read_state_file(in_path).density(), tol);
      emit_report(rep, report_path, text);
      return rep.all_passed() ? 0 : kExitChecksFailed;
    }

    if (*fnf) {
      const BipartiteOperator delta = read_state_file(in_path).density();
      const SinkhornResult r = symmetric ? sinkhorn_symmetric(delta, tol.sinkhorn())
                                         : sinkhorn_two_sided(delta, tol.sinkhorn());
      StateFile out{r.filtered, {}, {}};
      out.attachments = {{"filterA", r.filter_a}, {"filterB", r.filter_b}};
      out.metadata = {{"generator", "sepred fnf"},
                      {"mode", symmetric ? "symmetric" : "two_sided"},
                      {"status", to_string(r.status)},
                      {"iterations", r.iterations},
                      {"residual", r.residuals.back()},
                      {"scale", r.scale}};
      write_state_file(out_path, out);
      const json summary = {{"mode", symmetric ? "symmetric" : "two_sided"},
                            {"status", to_string(r.status)},
                            {"converged", r.converged},
                            {"iterations", r.iterations},
                            {"residual", r.residuals.back()},
                            {"fnf_tol", tol.fnf_tol},
                            {"max_iter", tol.max_iter},
                            {"scale", r.scale},
                            {"monotone", r.monotone},
                            {"max_flip_residual", r.max_flip_residual},
                            {"residual_trace", residual_trace(r.residuals)},
                            {"out", out_path}};
      std::cout << summary.dump(2) << '\n';
      return r.converged ? 0 : kExitNoConvergence;
    }

    if (*rank) {
      const StateFile input = read_state_file(in_path);
      if (!input.is_pure()) throw Usage("rank needs a file with a \"vector\" entry");
      const SchmidtDecomp d = schmidt_decompose(std::get<PureVector>(input.content), tol.rank_tol);
      const json summary = {{"dimA", input.dim_a()},
                            {"dimB", input.dim_b()},
                            {"schmidt_rank", d.rank},
                            {"coefficients", d.coefficients},
                            {"smallest_retained", d.smallest_retained},
                            {"largest_discarded", d.largest_discarded},
                            {"rank_tol", tol.rank_tol}};
      std::cout << summary.dump(2) << '\n';
      return 0;
    }

    if (*demo) {
      demo_opts.eps = eps;
      demo_opts.tol = tol;
      const Report rep = run_demo(demo_opts);
      emit_report(rep, report_path, text);
      return rep.all_passed() ? 0 : kExitChecksFailed;
    }

    if (*gen) {
      StateFile out{BipartiteOperator::identity(1, 1), {}, {}};
      if (kind == "pure") {
        out.content = random_pure(spec.k, spec.m, spec.rank, spec.seed);
      } else {
        spec.kind = kind == "ginibre" ? EnsembleKind::GinibreDensity : EnsembleKind::SeparableMixture;
        out.content = generate(spec);
      }
      out.metadata = {{"generator", "sepred gen"}, {"kind", kind},    {"k", spec.k},
                      {"m", spec.m},               {"rank", spec.rank}, {"seed", spec.seed}};
      if (kind == "separable") out.metadata["terms"] = spec.terms;
      write_state_file(out_path, out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
