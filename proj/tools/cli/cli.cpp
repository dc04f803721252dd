#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "bench.hpp"
#include "families.hpp"
#include "formats.hpp"
#include "report.hpp"
#include "testset/analysis.hpp"
#include "testset/core.hpp"
#include "testset/errors.hpp"
#include "testset/solvers.hpp"

namespace testset::cli {

namespace {

namespace fs = std::filesystem;

void add_tie_break(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--tie-break", o.tie_break, "lowest-index | natural | priority")
      ->check(CLI::IsMember({"lowest-index", "natural", "natural-order", "priority"}));
  cmd->add_option("--priority", o.priority, "test indices ranked first under --tie-break priority")->delimiter(',');
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text(path, text);
}

int cmd_gen(const std::string& family, const Json& given, std::uint64_t seed, const std::string& out_path, bool force,
            std::uint64_t max_items, std::ostream& out) {
  const Json params = effective_params(family, given);
  GeneratorLimits limits;
  limits.max_items = force ? UINT64_MAX : max_items;
  const std::optional<std::uint64_t> used_seed = family_uses_seed(family) ? std::optional(seed) : std::nullopt;

  Json sidecar;
  Json mparams = params;
  mparams["family"] = family;
  sidecar["manifest"] = manifest("gen", mparams, used_seed, std::nullopt);
  const auto predicted = predict(family, params);
  if (predicted) sidecar["predicted"] = size_json(*predicted);

  const LabeledInstance li = generate(family, params, seed, limits);
  SizePrediction actual{li.instance.item_count(), li.instance.group_count(), li.instance.test_count()};
  sidecar["actual"] = size_json(actual);
  sidecar["planted_optimal_size"] = li.planted_optimal.size();
  sidecar["adversarial_size"] = li.adversarial.size();
  sidecar["fingerprint"] = fingerprint(li);

  save_instance(out_path, li);
  write_text(out_path + ".size.json", dump(sidecar));
  out << "wrote " << out_path << " (n=" << actual.items << ", groups=" << actual.groups
      << ", tests=" << actual.tests << ")\n";
  return kOk;
}

int cmd_solve(const std::string& in, const SolveOptions& o, std::optional<std::size_t> budget,
              std::optional<std::size_t> m_star_flag, const std::string& trace_path, const std::string& out_path,
              std::ostream& out) {
  const LabeledInstance li = load_instance(in);
  const TieBreak tb = TieBreak::parse(o.tie_break, o.priority);
  Json params;
  params["input"] = fs::path(in).filename().string();
  params["instance_fingerprint"] = fingerprint(li);
  params["alg"] = o.alg;
  if (budget) params["budget"] = *budget;
  Json report;
  report["manifest"] = manifest("solve", params, std::nullopt, tb.name());
  report["instance"] = instance_summary(li.instance);

  try {
    const std::optional<SolveResult> result = solve_with(li.instance, o.alg, tb, budget);
    if (!result) {
      report["status"] = "budget_exhausted";
      emit(out, out_path, dump(report));
      return kFailure;
    }
    report["status"] = "ok";
    report["result"] = result_json(*result, li);
    const auto m_star = known_m_star(li, m_star_flag, false);
    report["reference"] = reference_json(li, *result, m_star);
    if (!trace_path.empty()) {
      std::optional<PhaseSchedule> schedule;
      if (m_star && *m_star >= 2 && o.alg != "sc-greedy" && li.instance.item_count() >= 2)
        schedule = phase_schedule(li.instance.item_count(), *m_star);
      write_text(trace_path, steps_csv(*result, schedule, false));
    }
  } catch (const InfeasibleError& e) {
    report["status"] = "infeasible";
    report["undifferentiable_pair"] = {e.first(), e.second()};
    report["error"] = e.what();
    if (!out_path.empty()) emit(out, out_path, dump(report));
    throw;
  }
  emit(out, out_path, dump(report));
  return kOk;
}

int cmd_trace(const std::string& in, std::size_t m_star, const SolveOptions& o, const std::string& out_path,
              const std::string& summary_path, std::ostream& out) {
  if (m_star < 2) throw std::invalid_argument("--m-star must be >= 2");
  const LabeledInstance li = load_instance(in);
  const TieBreak tb = TieBreak::parse(o.tie_break, o.priority);
  const SolveResult result = sga(li.instance, tb);
  const PhaseSchedule schedule = phase_schedule(li.instance.item_count(), m_star);
  const std::string steps = steps_csv(result, schedule, true);
  const std::string summary = phases_csv(trace_phases(result, schedule));
  if (summary_path.empty() && (out_path.empty() || out_path == "-")) {
    out << steps << "\n" << summary;
    return kOk;
  }
  emit(out, out_path, steps);
  emit(out, summary_path, summary);
  return kOk;
}

int cmd_convert(const std::string& in, const std::string& out_path, std::ostream& out) {
  const LabeledInstance li = load_instance(in);
  save_instance(out_path, li);
  out << "wrote " << out_path << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum test set solvers, adversarial instance generators, and analysis."};
  app.name("testset");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string family, gen_out;
  std::optional<std::int64_t> q, t, J, N, M, n_items, m_tests;
  std::optional<double> density;
  std::uint64_t seed = 0, max_items = GeneratorLimits{}.max_items;
  bool force = false, allow_infeasible = false;
  gen->add_option("family", family, "compact | atom | level | complete | sc-adv | random")
      ->required()
      ->check(CLI::IsMember(family_names()));
  gen->add_option("--q", q, "bits per coordinate");
  gen->add_option("--t", t, "level / number of coordinates");
  gen->add_option("--J", J, "number of levels");
  gen->add_option("--N", N, "sc-adv element count");
  gen->add_option("--m-star", M, "sc-adv planted optimum size");
  gen->add_option("--n", n_items, "random: items");
  gen->add_option("--m", m_tests, "random: tests");
  gen->add_option("--density", density, "random: membership probability in (0, 1]");
  gen->add_option("--seed", seed, "random: 64-bit seed");
  gen->add_flag("--allow-infeasible", allow_infeasible, "random: keep the first draw even if infeasible");
  gen->add_option("--out,-o", gen_out, "output path (.json instance file, otherwise matrix)")->required();
  gen->add_option("--max-items", max_items, "size cap");
  gen->add_flag("--force", force, "ignore the size cap");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string solve_in, trace_csv, solve_out;
  SolveOptions solve_opts;
  std::optional<std::size_t> budget, solve_m_star;
  solve->add_option("input", solve_in)->required()->check(CLI::ExistingFile);
  solve->add_option("--alg", solve_opts.alg, "sga | ich | exact | sc-greedy")
      ->check(CLI::IsMember({"sga", "ich", "exact", "sc-greedy"}));
  add_tie_break(solve, solve_opts);
  solve->add_option("--budget", budget, "exact: largest cardinality to try");
  solve->add_option("--m-star", solve_m_star, "optimum size for the trace's phase column");
  solve->add_option("--trace", trace_csv, "per-step CSV path");
  solve->add_option("--out,-o", solve_out, "report path (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "audits and bound formulas");
  analyze->require_subcommand(1);
  AnalyzeOptions ao;
  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) cmd->add_option("input", ao.input)->required()->check(CLI::ExistingFile);
    cmd->add_option("--out,-o", ao.out, "report path (default stdout)");
  };
  auto* a_dist = analyze->add_subcommand("distribution", "pair differentiation histogram of a test set");
  auto* a_lem = analyze->add_subcommand("lemmas", "counting lemma checks on a (candidate) optimal test set");
  auto* a_claims = analyze->add_subcommand("claims", "audit an SGA run against the adversarial claims");
  auto* a_ratio = analyze->add_subcommand("ratio", "solution size against the optimum and bound formulas");
  auto* a_bounds = analyze->add_subcommand("bounds", "evaluate the bound formulas");
  for (auto* cmd : {a_dist, a_lem}) {
    add_common(cmd, true);
    cmd->add_option("--tests", ao.tests, "test indices (default: planted optimum)")->delimiter(',');
    cmd->add_flag("--exact", ao.use_exact, "use the exact solver's optimum");
    cmd->add_flag("--force", ao.force, "ignore the pair-scan size guard");
  }
  a_lem->add_option("--m-star", ao.m_star, "optimum size (default: size of the test set)");
  add_common(a_claims, true);
  add_tie_break(a_claims, ao.solve);
  add_common(a_ratio, true);
  a_ratio->add_option("--alg", ao.solve.alg)->check(CLI::IsMember({"sga", "ich", "exact", "sc-greedy"}));
  add_tie_break(a_ratio, ao.solve);
  a_ratio->add_option("--m-star", ao.m_star, "optimum size");
  a_ratio->add_flag("--exact", ao.use_exact, "compute the optimum with the exact solver");
  add_common(a_bounds, false);
  a_bounds->add_option("--n", ao.n, "item count");
  a_bounds->add_option("--m-star", ao.m_star, "optimum size");
  a_bounds->add_option("--J", ao.J, "levels for the lower-bound coefficient");

  // trace
  auto* trace = app.add_subcommand("trace", "phase and potential trace of an SGA run");
  std::string trace_in, trace_out, trace_summary;
  std::size_t trace_m_star = 0;
  SolveOptions trace_opts;
  trace->add_option("input", trace_in)->required()->check(CLI::ExistingFile);
  trace->add_option("--m-star", trace_m_star, "optimum size (>= 2)")->required();
  add_tie_break(trace, trace_opts);
  trace->add_option("--out,-o", trace_out, "per-step CSV path (default stdout)");
  trace->add_option("--summary", trace_summary, "per-phase CSV path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "run a suite and write an aggregate CSV");
  BenchOptions bo;
  bench->add_option("suite", bo.suite, "suite JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("--seeds", bo.seeds, "seeds 0..k-1 for seeded families");
  bench->add_option("--out,-o", bo.out_dir, "output directory")->required();
  bench->add_option("--jobs,-j", bo.jobs, "worker threads");
  bench->add_flag("--timing", bo.timing, "add a wall_ms column (breaks byte-identical reruns)");

  // convert
  auto* convert = app.add_subcommand("convert", "convert between JSON instance files and matrix files");
  std::string conv_in, conv_out;
  convert->add_option("input", conv_in)->required()->check(CLI::ExistingFile);
  convert->add_option("output", conv_out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (gen->parsed()) {
      Json given = Json::object();
      if (q) given["q"] = *q;
      if (t) given["t"] = *t;
      if (J) given["J"] = *J;
      if (N) given["N"] = *N;
      if (M) given["M_star"] = *M;
      if (n_items) given["n"] = *n_items;
      if (m_tests) given["m"] = *m_tests;
      if (density) given["density"] = *density;
      if (allow_infeasible) given["feasible"] = false;
      return cmd_gen(family, given, seed, gen_out, force, max_items, out);
    }
    if (solve->parsed()) return cmd_solve(solve_in, solve_opts, budget, solve_m_star, trace_csv, solve_out, out);
    if (trace->parsed()) return cmd_trace(trace_in, trace_m_star, trace_opts, trace_out, trace_summary, out);
    if (convert->parsed()) return cmd_convert(conv_in, conv_out, out);
    if (bench->parsed()) return run_bench(bo, out, err);
    if (a_dist->parsed()) return analyze_distribution(ao, out);
    if (a_lem->parsed()) return analyze_lemmas(ao, out);
    if (a_claims->parsed()) return analyze_claims(ao, out);
    if (a_ratio->parsed()) return analyze_ratio(ao, out);
    if (a_bounds->parsed()) return analyze_bounds(ao, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SizeCapError& e) {
    err << "size cap: " << e.what() << "\n";
    return kSizeCap;
  } catch (const FormatError& e) {
    err << "i/o: " << e.what() << "\n";
    return kIo;
  } catch (const Json::exception& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::invalid_argument& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::domain_error& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kBadArgs;
  } catch (const ContractViolation& e) {
    err << "invalid arguments: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadArgs;
}

}  // namespace testset::cli
