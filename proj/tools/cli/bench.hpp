#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace testset::cli {

// Suite file:
//   {"algorithms": ["sga", "ich"], "tie_break": "natural", "exact_max_items": 16,
//    "max_items": 4194304,
//    "runs": [{"family": "random", "n": [8, 10], "m": 12, "density": 0.5},
//             {"family": "complete", "q": 3, "J": [2, 3]}]}
// Array-valued parameters expand to their cartesian product; seeded families
// run once per seed in [0, seeds).
struct BenchOptions {
  std::string suite;
  std::uint64_t seeds = 1;
  std::string out_dir;
  unsigned jobs = 1;
  bool timing = false;
};

// Writes <out>/bench.csv and <out>/manifest.json. Row order follows the
// suite, never completion order. Returns nonzero if any row failed.
int run_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

}  // namespace testset::cli
