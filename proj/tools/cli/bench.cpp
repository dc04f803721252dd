#include "bench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "families.hpp"
#include "formats.hpp"
#include "report.hpp"
#include "testset/solvers.hpp"

namespace testset::cli {

namespace {

struct Job {
  std::string family;
  Json params;
  std::optional<std::uint64_t> seed;
};

struct Row {
  std::string family, params, seed, alg;
  std::string n, m, size, m_star, m_star_source, ratio, formula_ratio;
  std::string status = "ok", error;
  double wall_ms = 0.0;
};

void expand(const std::string& family, const Json& grid, std::vector<std::pair<std::string, Json>>::size_type at,
            const std::vector<std::pair<std::string, Json>>& axes, Json& current, std::vector<Json>& out) {
  if (at == axes.size()) {
    out.push_back(current);
    return;
  }
  const auto& [key, values] = axes[at];
  if (values.is_array()) {
    if (values.empty()) throw std::invalid_argument(family + ": empty value list for " + key);
    for (const auto& v : values) {
      current[key] = v;
      expand(family, grid, at + 1, axes, current, out);
    }
  } else {
    current[key] = values;
    expand(family, grid, at + 1, axes, current, out);
  }
  current.erase(key);
}

struct Suite {
  std::vector<std::string> algorithms;
  std::string tie_break = "natural";
  std::size_t exact_max_items = 16;
  std::uint64_t max_items = GeneratorLimits{}.max_items;
  std::vector<Job> jobs;
};

Suite parse_suite(const Json& doc, std::uint64_t seeds) {
  if (!doc.is_object()) throw std::invalid_argument("suite must be a JSON object");
  Suite s;
  s.algorithms = doc.value("algorithms", std::vector<std::string>{"sga"});
  for (const auto& a : s.algorithms)
    if (a != "sga" && a != "ich" && a != "exact" && a != "sc-greedy")
      throw std::invalid_argument("suite: unknown algorithm '" + a + "'");
  s.tie_break = doc.value("tie_break", s.tie_break);
  TieBreak::parse(s.tie_break);
  s.exact_max_items = doc.value("exact_max_items", s.exact_max_items);
  s.max_items = doc.value("max_items", s.max_items);
  if (!doc.contains("runs") || !doc["runs"].is_array()) throw std::invalid_argument("suite needs a \"runs\" array");
  for (const auto& run : doc["runs"]) {
    if (!run.is_object() || !run.contains("family") || !run["family"].is_string())
      throw std::invalid_argument("suite: each run needs a \"family\"");
    const std::string family = run["family"].get<std::string>();
    std::vector<std::pair<std::string, Json>> axes;
    for (const auto& [k, v] : run.items())
      if (k != "family") axes.emplace_back(k, v);
    std::vector<Json> points;
    Json current = Json::object();
    expand(family, run, 0, axes, current, points);
    for (const auto& p : points) {
      const Json params = effective_params(family, p);
      if (family_uses_seed(family)) {
        for (std::uint64_t seed = 0; seed < seeds; ++seed) s.jobs.push_back({family, params, seed});
      } else {
        s.jobs.push_back({family, params, std::nullopt});
      }
    }
  }
  return s;
}

std::vector<Row> run_job(const Job& job, const Suite& suite) {
  std::vector<Row> rows;
  Row base;
  base.family = job.family;
  base.params = params_text(job.params);
  base.seed = job.seed ? std::to_string(*job.seed) : "";

  std::optional<LabeledInstance> li;
  std::optional<std::size_t> m_star;
  std::string build_error;
  try {
    GeneratorLimits limits;
    limits.max_items = suite.max_items;
    li.emplace(generate(job.family, job.params, job.seed.value_or(0), limits));
    base.n = std::to_string(li->instance.item_count());
    base.m = std::to_string(li->instance.test_count());
    if (li->optimal_known && !li->planted_optimal.empty()) {
      m_star = li->planted_optimal.size();
      base.m_star_source = "planted";
    } else if (li->instance.item_count() <= suite.exact_max_items) {
      if (auto r = exact(li->instance)) {
        m_star = r->size();
        base.m_star_source = "exact";
      }
    }
    if (m_star) base.m_star = std::to_string(*m_star);
    if (auto f = complete_formula_size(*li))
      base.formula_ratio = format_double(static_cast<double>(*f) / static_cast<double>(li->params.at("M_star")));
  } catch (const std::exception& e) {
    build_error = e.what();
  }

  const TieBreak tb = TieBreak::parse(suite.tie_break);
  for (const auto& alg : suite.algorithms) {
    Row row = base;
    row.alg = alg;
    if (!li) {
      row.status = "failed";
      row.error = build_error;
      rows.push_back(row);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto r = solve_with(li->instance, alg, tb);
      if (!r) throw std::runtime_error("no test set within budget");
      row.size = std::to_string(r->size());
      if (m_star && *m_star > 0) row.ratio = format_double(static_cast<double>(r->size()) / static_cast<double>(*m_star));
    } catch (const std::exception& e) {
      row.status = "failed";
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int run_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  Json doc;
  try {
    doc = Json::parse(read_text(options.suite));
  } catch (const Json::parse_error& e) {
    throw FormatError(options.suite + ": " + e.what());
  }
  const Suite suite = parse_suite(doc, options.seeds);

  std::vector<std::vector<Row>> results(suite.jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.jobs.size(); i = next++) results[i] = run_job(suite.jobs[i], suite);
  };
  const unsigned jobs = std::max(1U, options.jobs);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "family,params,seed,alg,n,m,size,m_star,m_star_source,ratio,formula_ratio,status,error";
  if (options.timing) csv += ",wall_ms";
  csv += '\n';
  std::size_t total = 0, failed = 0;
  for (const auto& rows : results)
    for (const auto& r : rows) {
      ++total;
      if (r.status != "ok") ++failed;
      csv += csv_escape(r.family) + ',' + csv_escape(r.params) + ',' + r.seed + ',' + r.alg + ',' + r.n + ',' + r.m +
             ',' + r.size + ',' + r.m_star + ',' + r.m_star_source + ',' + r.ratio + ',' + r.formula_ratio + ',' +
             r.status + ',' + csv_escape(r.error);
      if (options.timing) csv += ',' + format_double(r.wall_ms);
      csv += '\n';
    }

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw FormatError("cannot create " + options.out_dir + ": " + ec.message());
  const auto dir = std::filesystem::path(options.out_dir);
  write_text(dir / "bench.csv", csv);
  Json params;
  params["suite"] = doc;
  params["seeds"] = options.seeds;
  params["timing"] = options.timing;
  write_text(dir / "manifest.json", dump(manifest("bench", params, std::nullopt, suite.tie_break)));

  out << "bench: " << total << " rows, " << failed << " failed -> " << (dir / "bench.csv").string() << "\n";
  if (failed > 0) {
    err << "bench: " << failed << " row(s) failed\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace testset::cli
