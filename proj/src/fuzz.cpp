#include "squarepack/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace squarepack {

RunResult run_sequence(const std::vector<double>& heights, PackerConfig config, bool audit) {
  Packer packer(config);
  RunResult res;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const PlacementOutcome out = packer.place(heights[i]);
    if (!out.placed()) {
      res.failure = out.rejection();
      res.failed_at = i;
      break;
    }
  }
  res.squares = packer.size();
  res.area = packer.cumulative_area();
  const Snapshot& snap = packer.state();
  res.pair_closed = snap.pair_close.has_value();
  if (audit) {
    AuditReport rep = audit_all(snap);
    res.violations = std::move(rep.violations);
    if (res.pair_closed) res.pair_close_total = rep.stats["pair_close_total"];
    res.reservation_max_sum = rep.stats["large_reservation_max_sum"];
    res.min_closed_column_margin = rep.stats["min_closed_column_margin"];
    res.min_closed_shelf_margin = rep.stats["min_closed_shelf_margin"];
  }
  return res;
}

FuzzSummary run_fuzz(const FuzzOptions& opts) {
  std::vector<RunResult> results(opts.runs);
  std::atomic<std::size_t> next{0};
  const PackerConfig config{opts.enforce_budget, opts.budget};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= opts.runs) return;
      SequenceSpec spec;
      spec.seed = opts.seed + i;
      spec.budget = opts.budget;
      spec.distribution = opts.distribution;
      spec.max_squares = opts.max_squares;
      spec.overflow_retries = opts.overflow_retries;
      results[i] = run_sequence(generate(spec), config, opts.audit);
      results[i].seed = spec.seed;
    }
  };
  unsigned n = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(opts.runs, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  FuzzSummary sum;
  sum.runs = opts.runs;
  for (const RunResult& r : results) {
    sum.total_squares += r.squares;
    sum.max_area = std::max(sum.max_area, r.area);
    if (r.failure) ++sum.placement_failures;
    if (!r.violations.empty()) ++sum.audit_failures;
    if (r.ok()) ++sum.packed;
    if (r.pair_closed) {
      ++sum.pair_close_runs;
      sum.min_pair_close_total = std::min(sum.min_pair_close_total, r.pair_close_total);
    }
    sum.max_reservation_sum = std::max(sum.max_reservation_sum, r.reservation_max_sum);
    sum.min_closed_column_margin = std::min(sum.min_closed_column_margin, r.min_closed_column_margin);
    sum.min_closed_shelf_margin = std::min(sum.min_closed_shelf_margin, r.min_closed_shelf_margin);
    if (!r.ok()) {
      sum.failing_seeds.push_back(r.seed);
      if (sum.first_messages.size() < 5) {
        std::string msg = "seed " + std::to_string(r.seed) + ": ";
        if (r.failure) {
          msg += to_string(r.failure->reason) + " at square " + std::to_string(*r.failed_at) +
                 " (" + r.failure->detail + ")";
        } else {
          msg += r.violations.front().rule + ": " + r.violations.front().detail;
        }
        sum.first_messages.push_back(std::move(msg));
      }
    }
  }
  return sum;
}

}  // namespace squarepack
