// grpdouble: command-line front end for the doubling toolkit.
//
// Exit status: 0 on success, 1 when a guaranteed check fails (jump,
// Freiman refutation, missing Kneser or Hamidoune witness), 2 on bad input
// or an I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grpdouble/almost_periodic.hpp"
#include "grpdouble/error.hpp"
#include "grpdouble/group.hpp"
#include "grpdouble/serialize.hpp"
#include "grpdouble/structure.hpp"
#include "grpdouble/survey.hpp"

namespace {

using namespace grpdouble;

constexpr int kGuaranteedFailure = 1;
constexpr int kUsageError = 2;

void emit(const Json& j, const std::string& out) {
  const std::string text = dump(j);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_report(out, text);
  }
}

std::vector<Check> parse_checks(const std::vector<std::string>& names) {
  std::vector<Check> checks;
  for (const std::string& n : names) checks.push_back(parse_check(n));
  normalize_checks(checks);
  return checks;
}

bool wants(const std::vector<Check>& checks, Check c) {
  return checks.empty() || std::find(checks.begin(), checks.end(), c) != checks.end();
}

struct AnalyzeArgs {
  std::string group;
  std::string set;
  std::string epsilon;
  std::vector<std::string> checks;
  std::string out;
};

int analyze(const AnalyzeArgs& args) {
  const Group g = build_group(args.group);
  const Subset a = parse_set_spec(g, args.set);
  const std::vector<Check> checks = parse_checks(args.checks);
  const SubgroupCatalog catalog(g);
  bool failure = false;

  Json out{{"group", g.label()}, {"order", g.order()}, {"set", to_json(a)}};
  out["doubling"] = to_json(doubling_report(a));
  out["norms"] = to_json(norm_identity_check(a));
  if (wants(checks, Check::kJump)) {
    const JumpReport j = jump_check(a);
    failure |= !j.pass;
    out["jump"] = to_json(j);
  }
  if (wants(checks, Check::kFreiman)) {
    const FreimanResult f = freiman_coset(a);
    failure |= f.status == FreimanStatus::kRefuted;
    out["freiman"] = to_json(f);
  }
  if (wants(checks, Check::kKneser)) {
    if (g.is_abelian()) {
      const WitnessReport w = kneser_witness(a, catalog);
      failure |= !w.found;
      out["kneser"] = to_json(w);
    } else {
      out["kneser"] = "not-applicable";
    }
  }
  if (wants(checks, Check::kHamidoune)) {
    const WitnessReport w = hamidoune_witness(a, catalog);
    failure |= !w.found;
    out["hamidoune"] = to_json(w);
  }
  if (wants(checks, Check::kCovering)) {
    const CoveringFrontier frontier = covering_frontier(a, catalog);
    out["frontier"] = to_json(frontier);
    out["smallest_containing_coset"] = smallest_containing_coset(a, catalog);
    out["covering_bound"] = to_json(covering_bound_check(a, catalog));
    if (!args.epsilon.empty()) {
      const Rational eps = parse_rational(args.epsilon);
      const auto entry = bounded_cover(frontier, a, eps);
      out["bounded_cover"] = entry ? to_json(*entry) : Json(nullptr);
    }
  }
  if (wants(checks, Check::kPipeline) && !args.checks.empty()) {
    const Rational eps = args.epsilon.empty() ? make_rational(1, 2) : parse_rational(args.epsilon);
    out["pipeline"] = to_json(analytic_pipeline(a, eps));
  }
  emit(out, args.out);
  return failure ? kGuaranteedFailure : 0;
}

struct SurveyArgs {
  std::string config;
  std::vector<std::string> groups;
  std::string mode;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::vector<std::string> checks;
  std::string epsilon;
  std::string out;
  std::string format;
  unsigned workers = 1;
};

int survey(const SurveyArgs& args, const CLI::App& cmd) {
  SurveyConfig cfg;
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw Error("cannot read config '" + args.config + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw SpecError("config '" + args.config + "': " + e.what());
    }
    cfg = survey_config_from_json(j);
  }
  // Flags given on the command line override the config file.
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--group")) cfg.groups = args.groups;
  if (given("--mode")) cfg.mode = parse_subset_mode(args.mode);
  if (given("--count")) cfg.count = args.count;
  if (given("--seed")) cfg.seed = args.seed;
  if (given("--size")) cfg.size = args.size;
  if (given("--checks")) cfg.checks = parse_checks(args.checks);
  if (given("--epsilon")) cfg.epsilon = parse_rational(args.epsilon);
  if (given("--out")) cfg.output_path = args.out;
  if (given("--format")) cfg.format = parse_format(args.format);
  if (given("--workers")) cfg.workers = args.workers;
  if (cfg.mode == SubsetMode::kRandom && cfg.count == 0) cfg.count = 1000;

  const SurveySummary summary = run_survey(cfg);
  std::cout << dump(to_json(summary));
  return summary.guaranteed_failure ? kGuaranteedFailure : 0;
}

struct PipelineArgs {
  std::string group;
  std::string set;
  std::string epsilon = "1/2";
  std::uint64_t k = 8;
  std::string out;
};

int pipeline(const PipelineArgs& args) {
  const Group g = build_group(args.group);
  const Subset a = parse_set_spec(g, args.set);
  PipelineOptions options;
  options.k = args.k;
  const PipelineReport r = analytic_pipeline(a, parse_rational(args.epsilon), options);
  Json out{{"group", g.label()}, {"set", to_json(a)}};
  out["pipeline"] = to_json(r);
  emit(out, args.out);
  return 0;
}

struct ConvolveArgs {
  std::string group;
  std::string set_a;
  std::string set_b;
  std::string out;
};

int convolve(const ConvolveArgs& args) {
  const Group g = build_group(args.group);
  const Subset a = parse_set_spec(g, args.set_a);
  const Subset b = parse_set_spec(g, args.set_b);
  const std::vector<std::int64_t> counts = indicator_convolution(a, b);
  Json out{{"group", g.label()},
           {"a", to_json(a)},
           {"b", to_json(b)},
           {"convolution", counts},
           {"product_set", to_json(product_set(a, b))},
           {"identities", to_json(indicator_conv_identities(a, b))}};
  emit(out, args.out);
  return 0;
}

struct WitnessArgs {
  std::string group;
  std::string set;
  std::uint64_t k = 8;
  std::string out;
};

int cs_witness_cmd(const WitnessArgs& args) {
  const Group g = build_group(args.group);
  const Subset a = parse_set_spec(g, args.set);
  const CSWitness w = cs_witness(a, args.k);
  Json out{{"group", g.label()}, {"set", to_json(a)}};
  out["witness"] = to_json(w);
  emit(out, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubling, convolution and coset-structure checks on finite groups"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the structure checks on one set");
  analyze_cmd->add_option("--group", an.group, "Group spec, e.g. cyclic:8 or product:cyclic:2,dihedral:3")->required();
  analyze_cmd->add_option("--set", an.set, "Set spec: 0,1,5 | gen:<list> | random:<k>:<seed>")->required();
  analyze_cmd->add_option("--epsilon", an.epsilon, "Rational epsilon for bounded covers and the pipeline");
  analyze_cmd->add_option("--checks", an.checks, "Subset of jump,freiman,kneser,hamidoune,covering,pipeline")->delimiter(',');
  analyze_cmd->add_option("--out", an.out, "Write JSON here instead of stdout");

  SurveyArgs sv;
  auto* survey_cmd = app.add_subcommand("survey", "Sweep subsets of one or more groups");
  survey_cmd->add_option("--config", sv.config, "JSON survey config; flags override it");
  survey_cmd->add_option("--group", sv.groups, "Group spec (repeatable)");
  survey_cmd->add_option("--mode", sv.mode, "exhaustive | random | all-of-size")
      ->check(CLI::IsMember({"exhaustive", "random", "all-of-size"}));
  survey_cmd->add_option("--count", sv.count, "Random draws per group");
  survey_cmd->add_option("--seed", sv.seed, "64-bit seed for random mode");
  survey_cmd->add_option("--size", sv.size, "Subset size for all-of-size mode");
  survey_cmd->add_option("--checks", sv.checks, "Comma-separated checks")->delimiter(',');
  survey_cmd->add_option("--epsilon", sv.epsilon, "Rational epsilon for covering and pipeline");
  survey_cmd->add_option("--out", sv.out, "Report path");
  survey_cmd->add_option("--format", sv.format, "csv | table | json")
      ->check(CLI::IsMember({"csv", "table", "json"}));
  survey_cmd->add_option("--workers", sv.workers, "Worker threads");

  PipelineArgs pl;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Trace the covering argument on one set");
  pipeline_cmd->add_option("--group", pl.group, "Group spec")->required();
  pipeline_cmd->add_option("--set", pl.set, "Set spec")->required();
  pipeline_cmd->add_option("--epsilon", pl.epsilon, "Rational epsilon in (0, 1)")->capture_default_str();
  pipeline_cmd->add_option("--k", pl.k, "Power k for the almost-periodic set")->capture_default_str();
  pipeline_cmd->add_option("--out", pl.out, "Write JSON here instead of stdout");

  ConvolveArgs cv;
  auto* convolve_cmd = app.add_subcommand("convolve", "Indicator convolution 1_A * 1_B");
  convolve_cmd->add_option("--group", cv.group, "Group spec")->required();
  convolve_cmd->add_option("--set-a", cv.set_a, "Set spec for A")->required();
  convolve_cmd->add_option("--set-b", cv.set_b, "Set spec for B")->required();
  convolve_cmd->add_option("--out", cv.out, "Write JSON here instead of stdout");

  WitnessArgs cw;
  auto* witness_cmd = app.add_subcommand("cs-witness", "Search an almost-periodic neighbourhood");
  witness_cmd->add_option("--group", cw.group, "Group spec")->required();
  witness_cmd->add_option("--set", cw.set, "Set spec")->required();
  witness_cmd->add_option("--k", cw.k, "Power k")->capture_default_str();
  witness_cmd->add_option("--out", cw.out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*analyze_cmd) return analyze(an);
    if (*survey_cmd) return survey(sv, *survey_cmd);
    if (*pipeline_cmd) return pipeline(pl);
    if (*convolve_cmd) return convolve(cv);
    if (*witness_cmd) return cs_witness_cmd(cw);
  } catch (const std::exception& e) {
    std::cerr << "grpdouble: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
