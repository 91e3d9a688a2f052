#include <string>

#include "doctest.h"

#include "bg/harness.hpp"

using namespace bg;

namespace {

ExperimentConfig small_partition() {
  ExperimentConfig cfg;
  cfg.experiment = "partition";
  cfg.seed = 4;
  cfg.samples = 2000;
  cfg.parameters = Json{{"cases", 2}, {"spaces", Json::array({Json{{"exponent", 2}, {"dimension", 3}}})}};
  return cfg;
}

}  // namespace

TEST_CASE("registry") {
  CHECK(experiments().size() == 9);
  CHECK(is_experiment("tent-scaling"));
  CHECK_FALSE(is_experiment("tent"));
  CHECK_THROWS_AS(run_experiment("nonsense", {}), UsageError);
}

TEST_CASE("config validation names the field") {
  CHECK_THROWS_WITH_AS(config_from_json(Json{{"sed", 3}}, "partition"), "config.sed: unknown field", UsageError);
  CHECK_THROWS_AS(config_from_json(Json{{"experiment", "dilation"}}, "partition"), UsageError);
  ExperimentConfig cfg;
  cfg.parameters = Json{{"cells", 16}, {"celz", 3}};
  CHECK_THROWS_WITH_AS(run_experiment("partition", cfg), "parameters.celz: unknown field", UsageError);
  cfg.parameters = Json{{"r", 1.5}};
  CHECK_THROWS_WITH_AS(run_experiment("tent-scaling", cfg), "parameters.r: need 1 < r < 1 / (p/2 + alpha p)",
                       UsageError);
  cfg.parameters = Json::object();
  cfg.samples = 10;
  CHECK_THROWS_AS(run_experiment("partition", cfg), UsageError);
}

TEST_CASE("judge") {
  ReportRow r;
  r.lhs = 1.0;
  r.rhs = 0.9;
  r.relation = "<=";
  r.tolerance = 0.05;
  judge(r);
  CHECK(r.asserted);
  CHECK_FALSE(r.passed);
  r.tolerance = 0.2;
  judge(r);
  CHECK(r.passed);
  r.relation = "<";
  judge(r);
  CHECK_FALSE(r.passed);
  r.relation = "report";
  judge(r);
  CHECK_FALSE(r.asserted);
  CHECK(r.passed);
}

TEST_CASE("reports are deterministic and versioned") {
  const Report a = run_experiment("partition", small_partition());
  const Report b = run_experiment("partition", small_partition());
  const std::string csv = to_csv(a);
  CHECK(csv == to_csv(b));
  CHECK(csv.rfind("# schema_version=1\n", 0) == 0);
  CHECK(a.passed());
  const Json s = summary_json(a);
  CHECK(s["schema_version"] == 1);
  CHECK(s["passed"] == true);
  CHECK(s["cases"].size() == 2);
  // Every asserted row records its tolerance.
  for (const auto& r : a.rows) {
    if (r.asserted) CHECK(r.tolerance >= 0.0);
  }
}
