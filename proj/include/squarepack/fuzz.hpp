#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "squarepack/generators.hpp"
#include "squarepack/packer.hpp"
#include "squarepack/verifier.hpp"

namespace squarepack {

struct FuzzOptions {
  std::size_t runs = 1000;
  std::uint64_t seed = 1;  // run i uses seed + i
  Distribution distribution = Distribution::uniform;
  double budget = 0.375;
  bool enforce_budget = false;
  bool audit = true;
  std::size_t overflow_retries = 0;
  std::size_t max_squares = 4000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct RunResult {
  std::uint64_t seed = 0;
  std::size_t squares = 0;
  double area = 0.0;
  std::optional<Rejection> failure;
  std::optional<std::size_t> failed_at;
  std::vector<Violation> violations;
  bool pair_closed = false;
  double pair_close_total = 0.0;
  double reservation_max_sum = 0.0;
  double min_closed_column_margin = 1.0;
  double min_closed_shelf_margin = 1.0;

  bool ok() const { return !failure && violations.empty(); }
};

/// Packs `heights` with a fresh packer (stopping at the first rejection) and,
/// if `audit`, runs every audit on the final state.
RunResult run_sequence(const std::vector<double>& heights, PackerConfig config, bool audit);

struct FuzzSummary {
  std::size_t runs = 0;
  std::size_t packed = 0;
  std::size_t placement_failures = 0;
  std::size_t audit_failures = 0;
  std::size_t total_squares = 0;
  std::size_t pair_close_runs = 0;
  double min_pair_close_total = 1.0;
  double max_reservation_sum = 0.0;
  double min_closed_column_margin = 1.0;
  double min_closed_shelf_margin = 1.0;
  double max_area = 0.0;
  std::vector<std::uint64_t> failing_seeds;
  std::vector<std::string> first_messages;

  bool clean() const { return placement_failures == 0 && audit_failures == 0; }
};

/// Independent packers per run, sharded over threads; the summary does not
/// depend on the thread count.
FuzzSummary run_fuzz(const FuzzOptions& opts);

}  // namespace squarepack
