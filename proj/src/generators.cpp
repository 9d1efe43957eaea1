#include "squarepack/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace squarepack {

namespace {

// Class picked by a weighted draw. kind -1 = large, 0 = medium, 1 = sub.
struct ClassWeight {
  int kind;
  int sub;
  double weight;
};

SizeClass as_class(const ClassWeight& w) {
  if (w.kind < 0) return SizeClass::large();
  if (w.kind == 0) return SizeClass::medium();
  return SizeClass::subclass(w.sub);
}

template <std::size_t N>
SizeClass pick(Rng& rng, const std::array<ClassWeight, N>& table) {
  double total = 0.0;
  for (const auto& w : table) total += w.weight;
  double u = rng.uniform01() * total;
  for (const auto& w : table) {
    if (u < w.weight) return as_class(w);
    u -= w.weight;
  }
  return as_class(table.back());
}

double inside(Rng& rng, const SizeClass& c, double cap) {
  const double lo = class_lower(c);
  const double hi = std::min(class_upper(c), cap);
  double h = rng.uniform_open_closed(lo, hi);
  if (h <= lo) h = std::nextafter(lo, hi);
  return h;
}

constexpr std::array<ClassWeight, 11> kBoundaryWeights{{{-1, 0, 0.03},
                                                        {0, 0, 0.12},
                                                        {1, 0, 0.30},
                                                        {1, 1, 0.14},
                                                        {1, 2, 0.12},
                                                        {1, 3, 0.10},
                                                        {1, 4, 0.07},
                                                        {1, 5, 0.05},
                                                        {1, 6, 0.03},
                                                        {1, 7, 0.025},
                                                        {1, 8, 0.015}}};

constexpr std::array<ClassWeight, 7> kMediumHeavy{{{-1, 0, 0.03},
                                                   {0, 0, 0.60},
                                                   {1, 0, 0.25},
                                                   {1, 1, 0.03},
                                                   {1, 2, 0.03},
                                                   {1, 3, 0.03},
                                                   {1, 4, 0.03}}};

constexpr std::array<ClassWeight, 8> kVerySmallHeavy{{{0, 0, 0.03},
                                                      {1, 0, 0.10},
                                                      {1, 1, 0.145},
                                                      {1, 2, 0.145},
                                                      {1, 3, 0.145},
                                                      {1, 4, 0.145},
                                                      {1, 5, 0.145},
                                                      {1, 6, 0.145}}};

constexpr std::array<ClassWeight, 8> kMixed{{{-1, 0, 0.05},
                                             {0, 0, 0.20},
                                             {1, 0, 0.35},
                                             {1, 1, 0.08},
                                             {1, 2, 0.08},
                                             {1, 3, 0.08},
                                             {1, 4, 0.08},
                                             {1, 5, 0.08}}};

double draw(Rng& rng, const SequenceSpec& spec, std::size_t& script_pos, bool& exhausted) {
  const double cap = std::min(1.0, std::sqrt(spec.budget));
  switch (spec.distribution) {
    case Distribution::uniform:
      return rng.uniform_open_closed(0.0, cap);
    case Distribution::class_boundary: {
      const SizeClass c = pick(rng, kBoundaryWeights);
      const double delta = std::pow(10.0, -6.0 + 4.0 * rng.uniform01());
      if (c.is_large() || (rng.next() & 1U)) return class_lower(c) * (1.0 + delta);
      return class_upper(c) * (1.0 - delta);
    }
    case Distribution::medium_heavy:
      return inside(rng, pick(rng, kMediumHeavy), cap);
    case Distribution::very_small_heavy:
      return inside(rng, pick(rng, kVerySmallHeavy), cap);
    case Distribution::mixed:
      return inside(rng, pick(rng, kMixed), cap);
    case Distribution::scripted:
      break;
  }
  if (script_pos >= spec.script.size()) {
    exhausted = true;
    return 0.0;
  }
  return spec.script[script_pos++];
}

}  // namespace

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform:
      return "uniform";
    case Distribution::class_boundary:
      return "class_boundary";
    case Distribution::medium_heavy:
      return "medium_heavy";
    case Distribution::very_small_heavy:
      return "very_small_heavy";
    case Distribution::mixed:
      return "mixed";
    case Distribution::scripted:
      return "scripted";
  }
  return "uniform";
}

Distribution parse_distribution(const std::string& name) {
  for (Distribution d : {Distribution::uniform, Distribution::class_boundary,
                         Distribution::medium_heavy, Distribution::very_small_heavy,
                         Distribution::mixed, Distribution::scripted}) {
    if (to_string(d) == name) return d;
  }
  throw std::invalid_argument("unknown distribution: " + name);
}

std::vector<double> generate(const SequenceSpec& spec) {
  if (spec.budget > 0.5) throw std::invalid_argument("budget must not exceed 1/2");
  Rng rng(spec.seed);
  std::vector<double> out;
  double area = 0.0;
  std::size_t script_pos = 0;
  std::size_t discarded = 0;
  while (out.size() < spec.max_squares) {
    bool exhausted = false;
    const double h = draw(rng, spec, script_pos, exhausted);
    if (exhausted) break;
    if (area + h * h > spec.budget) {
      if (discarded++ >= spec.overflow_retries) break;
      continue;
    }
    area += h * h;
    out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adversaries

namespace {

constexpr double kNudge = 1e-6;

double remaining(const Packer& p, double budget) { return budget - p.cumulative_area(); }

bool affordable(const Packer& p, double budget, double h) {
  return h > 0.0 && p.cumulative_area() + h * h <= budget;
}

/// Lowest-density small square: just above h_0 r_0.
constexpr double kThinSmall = 0.125 * (1.0 + kNudge);

/// Largest height that still fits the remaining budget, capped at `cap`.
double largest_affordable(const Packer& p, double budget, double cap) {
  const double rem = remaining(p, budget);
  if (rem <= 0.0) return 0.0;
  return std::min(cap, std::sqrt(rem) * (1.0 - 1e-12));
}

/// Tail filler once the interesting part is over: the smallest useful small
/// square, else the largest very small one the budget allows.
std::optional<double> filler(const Packer& p, double budget) {
  if (affordable(p, budget, kThinSmall)) return kThinSmall;
  const double h = largest_affordable(p, budget, 0.125);
  if (h > 1e-3) return h;
  return std::nullopt;
}

class MediumCloser : public Adversary {
 public:
  MediumCloser(double budget, std::uint64_t seed) : budget_(budget), rng_(seed) {
    lead_smalls_ = static_cast<int>(rng_.below(5));
  }
  std::string name() const override { return "medium-closer"; }

  std::optional<double> next(const Packer& p) override {
    const Snapshot& s = p.state();
    if (lead_smalls_ > 0) {
      --lead_smalls_;
      const double h = rng_.uniform_open_closed(0.125, 0.25);
      if (affordable(p, budget_, h)) return h;
    }
    if (s.medium_phase == MediumPhase::bottom) {
      const double floor_x = std::max(s.shelf(shelf_ids::p1).frontier(),
                                      s.shelf(shelf_ids::p2).frontier());
      const double gap = s.medium_bottom_left - floor_x;
      const double quarter = 0.25 + kNudge;
      // Either close with one medium just wider than the gap, or first
      // shrink the gap below 1/4 so that the smallest medium closes it.
      // Cheapest way through: n equal mediums whose widths just exceed gap.
      const double n = std::floor(gap / 0.5) + 1.0;
      const double even = gap / n + kNudge;
      if (even > 0.25 && even <= 0.5 &&
          p.cumulative_area() + n * even * even <= budget_ && rng_.below(4) != 0) {
        return even;
      }
      const double exact = gap + kNudge;
      const bool exact_ok = exact > 0.25 && exact <= 0.5 && affordable(p, budget_, exact);
      if (gap < 0.25 && affordable(p, budget_, quarter)) return quarter;
      if (exact_ok && (gap > 0.5 - 2 * kNudge || rng_.below(2) == 0)) return exact;
      if (gap > 0.25) {
        const double shrink = std::clamp(gap - 0.5 + 0.01, quarter, 0.5);
        const double h = gap <= 0.5 ? std::max(quarter, gap - 0.25 + kNudge) : shrink;
        if (h <= gap && affordable(p, budget_, h)) return h;
      }
      if (exact_ok) return exact;
    }
    const double big = largest_affordable(p, budget_, 0.5);
    if (big > 0.25) return big;
    return filler(p, budget_);
  }

 private:
  double budget_;
  Rng rng_;
  int lead_smalls_ = 0;
};

class PairCloser : public Adversary {
 public:
  explicit PairCloser(double budget) : budget_(budget) {}
  std::string name() const override { return "pair-closer"; }

  std::optional<double> next(const Packer& p) override {
    const Snapshot& s = p.state();
    if (s.small_phase != SmallPhase::buffer_b0) {
      const bool lower = s.small_phase == SmallPhase::pair12;
      const int a = lower ? shelf_ids::p1 : shelf_ids::p3;
      const int b = lower ? shelf_ids::p2 : shelf_ids::p4;
      const double ga = p.right_bound(a) - s.shelf(a).frontier();
      const double gb = p.right_bound(b) - s.shelf(b).frontier();
      const double gap = std::max(ga, gb);
      if (gap < 0.25) {
        const double closer = std::max(gap + kNudge, kThinSmall);
        if (closer <= 0.25 && affordable(p, budget_, closer)) return closer;
      }
    }
    return filler(p, budget_);
  }

 private:
  double budget_;
};

class ColumnChurner : public Adversary {
 public:
  ColumnChurner(double budget, std::uint64_t seed) : budget_(budget), rng_(seed) {}
  std::string name() const override { return "column-churner"; }

  std::optional<double> next(const Packer& p) override {
    const Snapshot& s = p.state();
    for (int attempt = 0; attempt < 6; ++attempt) {
      const int k = 1 + static_cast<int>((cursor_ + attempt) % 6);
      const ClassParams cp = class_params(k);
      double free = kColumnLength;
      if (auto it = s.open_column.find(k); it != s.open_column.end()) {
        const Shelf& col = s.shelf(it->second);
        free = col.ell - col.used;
      }
      double h;
      if (free < cp.max_height) {
        h = cp.max_height;  // cannot fit: closes the column with maximal waste
        ++cursor_;
      } else {
        h = cp.min_height * (1.0 + kNudge);
      }
      if (rng_.below(8) == 0) h = cp.max_height * (1.0 - kNudge);
      if (affordable(p, budget_, h)) return h;
    }
    const double h = largest_affordable(p, budget_, 0.01);
    if (h > 1e-3) return h;
    return std::nullopt;
  }

 private:
  double budget_;
  Rng rng_;
  std::uint64_t cursor_ = 0;
};

constexpr double kReserveSlack = 1e-5;

class LargeLate : public Adversary {
 public:
  LargeLate(double budget, std::uint64_t seed) : budget_(budget), rng_(seed) {}
  std::string name() const override { return "large-late"; }

  std::optional<double> next(const Packer& p) override {
    if (!sent_large_) {
      const double h = rng_.below(3) == 0 ? class_params(1 + static_cast<int>(rng_.below(3)))
                                                    .min_height * (1.0 + kNudge)
                                          : kThinSmall;
      if (p.cumulative_area() + h * h <= 0.125) return h;
      // Top up to just under 1/8 before the large square arrives; at
      // exactly 1/8 the remaining budget only buys a medium.
      const double gap = 0.125 - kReserveSlack - p.cumulative_area();
      if (!topped_ && gap > 1e-6) {
        topped_ = true;
        return std::sqrt(gap);
      }
      sent_large_ = true;
      const double big = largest_affordable(p, budget_, 1.0);
      if (big > 0.5) return big;
    }
    return filler(p, budget_);
  }

 private:
  double budget_;
  Rng rng_;
  bool topped_ = false;
  bool sent_large_ = false;
};

}  // namespace

std::vector<std::string> adversary_names() {
  return {"medium-closer", "pair-closer", "column-churner", "large-late"};
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, double budget,
                                          std::uint64_t seed) {
  if (name == "medium-closer") return std::make_unique<MediumCloser>(budget, seed);
  if (name == "pair-closer") return std::make_unique<PairCloser>(budget);
  if (name == "column-churner") return std::make_unique<ColumnChurner>(budget, seed);
  if (name == "large-late") return std::make_unique<LargeLate>(budget, seed);
  throw std::invalid_argument("unknown adversary: " + name);
}

AdversaryRun run_adversary(Adversary& adversary, PackerConfig config, std::size_t max_steps) {
  Packer packer(config);
  AdversaryRun run;
  while (run.heights.size() < max_steps) {
    const auto h = adversary.next(packer);
    if (!h) break;
    run.heights.push_back(*h);
    const PlacementOutcome out = packer.place(*h);
    if (!out.placed()) {
      run.failure = out.rejection();
      break;
    }
  }
  run.final_state = packer.snapshot();
  return run;
}

}  // namespace squarepack
