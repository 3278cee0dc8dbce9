#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "sepred/embedding.hpp"
#include "sepred/error.hpp"
#include "sepred/pipeline.hpp"
#include "sepred/report.hpp"
#include "sepred/schmidt.hpp"

using namespace sepred;

TEST_CASE("report records and summary") {
  Report rep("unit");
  rep.parameters()["k"] = 2;
  rep.at_most("a", "x ≤ 1", 0.5, 1.0);
  rep.at_most("b", "x ≤ 1", 2.0, 1.0, "too big");
  rep.above("c", "x > 0", 1e-3, 0.0);
  rep.pass_if("d", "flag", false);
  rep.skip("e", "n/a", "not applicable");
  rep.at_most("f", "NaN fails", std::numeric_limits<double>::quiet_NaN(), 1.0);
  CHECK_THROWS_AS(rep.at_most("a", "dup", 0.0, 1.0), std::logic_error);

  CHECK(rep.count(CheckStatus::Pass) == 2);
  CHECK(rep.count(CheckStatus::Fail) == 3);
  CHECK(rep.count(CheckStatus::Skipped) == 1);
  CHECK_FALSE(rep.all_passed());
  REQUIRE(rep.find("b"));
  CHECK(rep.find("b")->note == "too big");
  CHECK(rep.find("zz") == nullptr);

  const nlohmann::json j = rep.to_json();
  CHECK(j["command"] == "unit");
  CHECK(j["parameters"]["k"] == 2);
  CHECK(j["summary"]["passed"] == 2);
  CHECK(j["summary"]["failed"] == 3);
  CHECK(j["summary"]["skipped"] == 1);
  CHECK(j["checks"].size() == 6);
  CHECK(j["checks"][0]["check_id"] == "a");
  CHECK(j["checks"][0]["paper_anchor"] == "x ≤ 1");
  CHECK(j["checks"][2]["relation"] == ">");
  CHECK(j["checks"][4]["status"] == "skipped");
  CHECK(j["checks"][5]["residual"].is_null());
  CHECK(j.contains("timestamp"));

  const std::string text = rep.to_text();
  CHECK(text.find("passed 2, failed 3, skipped 1") != std::string::npos);
}

TEST_CASE("verify report on the example states") {
  const Tolerances tol;
  const EmbeddingPair e = build_embedding(2, 2);
  const Report good = verify_report(embed_t(e, random_density(2, 2, 4, 3)), tol);
  CHECK(good.all_passed());
  CHECK(good.find("embedded.closed_form")->status == CheckStatus::Pass);
  CHECK(good.find("bipartite.antisymmetric_realignment")->status == CheckStatus::Skipped);

  const Report anti = verify_report(normalize(proj_anti(3)), tol);
  CHECK(anti.find("spc.pt_positive_definite")->status == CheckStatus::Fail);
  CHECK(anti.find("bipartite.antisymmetric_realignment")->status == CheckStatus::Pass);
  CHECK(anti.find("embedded.closed_form")->status == CheckStatus::Skipped);

  const Report id = verify_report(normalize(BipartiteOperator::identity(3, 3)), tol);
  CHECK(id.find("spc.pt_positive_definite")->status == CheckStatus::Pass);
  CHECK(id.find("spc.realigned_pt_positive_definite")->status == CheckStatus::Fail);
  CHECK_FALSE(id.all_passed());

  // A non-Hermitian input is refused outright.
  ComplexMatrix nh = ComplexMatrix::identity(4);
  nh(0, 2) = 1.0;
  CHECK_THROWS_AS(verify_report(BipartiteOperator(2, 2, nh), tol), Error);
}

TEST_CASE("demo reports") {
  for (auto [k, m] : {std::pair<std::size_t, std::size_t>{2, 2}, {1, 1}, {3, 2}}) {
    DemoOptions opts;
    opts.k = k;
    opts.m = m;
    const Report rep = run_demo(opts);
    CHECK(rep.all_passed());
    std::set<std::string> ids, anchors;
    for (const CheckRecord& c : rep.checks()) {
      ids.insert(c.id);
      if (c.status != CheckStatus::Skipped) anchors.insert(c.anchor);
    }
    CHECK(ids.size() == rep.checks().size());
    CHECK(anchors.size() >= 12);
    const CheckRecord* witness = rep.find("fnf.rank_witness");
    REQUIRE(witness);
    CHECK(witness->status == (k == m ? CheckStatus::Skipped : CheckStatus::Pass));
  }
}

TEST_CASE("demo reports are deterministic apart from timing") {
  DemoOptions opts;
  opts.k = 2;
  opts.m = 3;
  opts.seed = 7;
  nlohmann::json a = run_demo(opts).to_json(), b = run_demo(opts).to_json();
  for (nlohmann::json* j : {&a, &b}) {
    j->erase("timestamp");
    (*j)["summary"].erase("runtime_seconds");
  }
  CHECK(a.dump() == b.dump());
  opts.seed = 8;
  nlohmann::json c = run_demo(opts).to_json();
  c.erase("timestamp");
  c["summary"].erase("runtime_seconds");
  CHECK(c.dump() != a.dump());
}

TEST_CASE("demo validates epsilon") {
  DemoOptions opts;
  opts.eps = 0.5;
  CHECK_THROWS_AS(run_demo(opts), Error);
}
