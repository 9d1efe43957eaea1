#include "squarepack/size_classes.hpp"

#include <cmath>
#include <string>

namespace squarepack {

namespace {

constexpr double kTinyHeight = 1e-15;

// Ratios as exact hundredths.
int ratio_percent(int k) { return k == 0 ? 50 : k == 1 ? 71 : k == 2 ? 65 : 58; }

// h_k as the double nearest the exact product 0.25 * r_0 * ... * r_{k-1}.
// A plain double chain drifts by an ulp (0.25*0.5*0.71*0.65 lands just below
// 0.0576875), so the chain runs in extended precision on the exact
// hundredths and is rounded once.
double chain_height(int k) {
  long double h = 0.25L;
  for (int j = 0; j < k; ++j) h = h * ratio_percent(j) / 100;
  return static_cast<double>(h);
}

struct HeightTable {
  std::vector<double> heights;  // heights[k] = h_k

  HeightTable() {
    for (int k = 0;; ++k) {
      const double h = chain_height(k);
      if (h < kTinyHeight) break;
      heights.push_back(h);
    }
  }
};

const HeightTable& table() {
  static const HeightTable t;
  return t;
}

}  // namespace

std::string SizeClass::name() const {
  switch (kind) {
    case Kind::large:
      return "large";
    case Kind::medium:
      return "medium";
    case Kind::sub:
      break;
  }
  return "c" + std::to_string(sub);
}

double class_ratio(int k) {
  switch (k) {
    case 0:
      return 0.5;
    case 1:
      return 0.71;
    case 2:
      return 0.65;
    default:
      return 0.58;
  }
}

int max_subclass() { return static_cast<int>(table().heights.size()) - 2; }

ClassParams class_params(int k) {
  if (k < 0) throw std::out_of_range("negative subclass index");
  const auto& hs = table().heights;
  double h;
  double lower;
  if (static_cast<std::size_t>(k) + 1 < hs.size()) {
    h = hs[static_cast<std::size_t>(k)];
    lower = hs[static_cast<std::size_t>(k) + 1];
  } else {
    // Past the memoized table.
    h = chain_height(k);
    lower = chain_height(k + 1);
  }
  return {k, h, class_ratio(k), lower};
}

SizeClass classify(double height) {
  if (!(height > 0.0) || height > 1.0) {
    throw InvalidHeight("height must lie in (0, 1]");
  }
  if (height > 0.5) return SizeClass::large();
  if (height > 0.25) return SizeClass::medium();
  const auto& hs = table().heights;
  for (std::size_t k = 0; k + 1 < hs.size(); ++k) {
    if (height > hs[k + 1]) return SizeClass::subclass(static_cast<int>(k));
  }
  throw InvalidHeight("height below the smallest representable subclass");
}

double class_lower(const SizeClass& c) {
  switch (c.kind) {
    case SizeClass::Kind::large:
      return 0.5;
    case SizeClass::Kind::medium:
      return 0.25;
    case SizeClass::Kind::sub:
      break;
  }
  return class_params(c.sub).min_height;
}

double class_upper(const SizeClass& c) {
  switch (c.kind) {
    case SizeClass::Kind::large:
      return 1.0;
    case SizeClass::Kind::medium:
      return 0.5;
    case SizeClass::Kind::sub:
      break;
  }
  return class_params(c.sub).max_height;
}

std::vector<RatioMargin> validate_ratios(int last_k) {
  std::vector<RatioMargin> out;
  // c1 columns are exactly twice as long as they are wide, so a closed column
  // holds two squares of height > h_1 r_1.
  const double r1 = class_ratio(1);
  out.push_back({1, r1 * r1 - 0.5});
  for (int k = 2; k <= last_k; ++k) {
    const ClassParams p = class_params(k);
    const double density = p.ratio - p.max_height * p.ratio * p.ratio / kColumnLength;
    out.push_back({k, density - 0.5});
  }
  for (const auto& m : out) {
    if (!(m.margin > 0.0)) {
      throw ConstantsInconsistent("closed-column density bound fails for c" +
                                  std::to_string(m.k));
    }
  }
  return out;
}

double buffer_span(BufferGroup which) {
  switch (which) {
    case BufferGroup::b0_b3_row:
      return class_params(3).max_height + 0.25;
    case BufferGroup::b1_b2_b4plus_row:
      break;
  }
  const double tail = class_params(4).max_height / (1.0 - class_ratio(3));
  return class_params(1).max_height + class_params(2).max_height + tail;
}

}  // namespace squarepack
