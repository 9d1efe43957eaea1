#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "squarepack/packer.hpp"
#include "squarepack/rng.hpp"

namespace squarepack {

enum class Distribution { uniform, class_boundary, medium_heavy, very_small_heavy, mixed, scripted };

std::string to_string(Distribution d);
/// Throws std::invalid_argument for unknown names.
Distribution parse_distribution(const std::string& name);

/// Recipe for one input sequence.
///
/// Draws are taken one at a time; a draw that would push the total area past
/// `budget` is discarded, never clipped. Generation stops at the first such
/// draw (or, with `overflow_retries` > 0, once that many draws have been
/// discarded) or after `max_squares` heights.
///
///  - uniform: heights uniform in (0, min(1, sqrt(budget))].
///  - class_boundary: a class edge nudged inward by a factor 1 +- delta,
///    delta log-uniform in [1e-6, 1e-2].
///  - medium_heavy / very_small_heavy / mixed: weighted class choice, then
///    uniform inside the class interval.
///  - scripted: `script` in order.
struct SequenceSpec {
  std::uint64_t seed = 1;
  double budget = 0.375;
  Distribution distribution = Distribution::uniform;
  std::size_t max_squares = 4000;
  std::size_t overflow_retries = 0;
  std::vector<double> script;
};

/// Deterministic in `spec`. Throws std::invalid_argument if budget > 1/2.
std::vector<double> generate(const SequenceSpec& spec);

/// An online adversary: looks at the packer after every placement and picks
/// the next height, or stops.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual std::optional<double> next(const Packer& packer) = 0;
};

/// Names: medium-closer, pair-closer, column-churner, large-late.
std::vector<std::string> adversary_names();
/// Throws std::invalid_argument for unknown names.
std::unique_ptr<Adversary> make_adversary(const std::string& name, double budget = 0.375,
                                          std::uint64_t seed = 1);

struct AdversaryRun {
  std::vector<double> heights;
  std::optional<Rejection> failure;
  Snapshot final_state;
};

/// Plays `adversary` against a fresh packer until it stops, the packer
/// rejects a square, or `max_steps` squares were sent.
AdversaryRun run_adversary(Adversary& adversary, PackerConfig config = {},
                           std::size_t max_steps = 20000);

}  // namespace squarepack
