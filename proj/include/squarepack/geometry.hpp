#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "squarepack/size_classes.hpp"

namespace squarepack {

/// Tolerance for every geometric boundary comparison.
inline constexpr double kEps = 1e-12;
/// Tolerance for density / area comparisons.
inline constexpr double kAreaEps = 1e-9;

/// Axis-aligned rectangle in container units (the container edge is 1).
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double top() const { return y + h; }
  double area() const { return w * h; }

  bool operator==(const Rect&) const = default;
};

inline constexpr Rect kUnitSquare{0.0, 0.0, 1.0, 1.0};

/// True iff the interiors intersect by more than kEps along both axes.
/// Shared edges and corners are not overlap.
bool rects_overlap(const Rect& a, const Rect& b);

/// True iff `inner` lies inside `outer` grown by `tol` on every side.
bool rect_contains(const Rect& outer, const Rect& inner, double tol);

/// Area of a ∩ b (0 when disjoint).
double intersection_area(const Rect& a, const Rect& b);

/// A square fixed in the container.
struct PlacedSquare {
  std::size_t id = 0;
  double height = 0.0;
  double x = 0.0;
  double y = 0.0;
  SizeClass size_class;
  std::optional<int> shelf_id;

  Rect rect() const { return {x, y, height, height}; }
  double area() const { return height * height; }
};

/// Uniform bucket grid over the unit square for candidate lookups.
///
/// Entries are rects with caller-chosen integer tags. Queries return every
/// entry whose bucket footprint touches the probe; callers still run the
/// exact predicate.
class RectGrid {
 public:
  explicit RectGrid(int cells_per_side = 32);

  void insert(const Rect& r, int tag);
  void clear();
  std::size_t size() const { return entries_.size(); }

  /// Tags of all entries that overlap `probe` (exact rects_overlap check).
  std::vector<int> overlapping(const Rect& probe) const;

 private:
  struct Entry {
    Rect rect;
    int tag;
  };

  int cell_lo(double v) const;
  int cell_hi(double v) const;

  int n_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::size_t>> cells_;
  mutable std::vector<std::size_t> stamp_;
  mutable std::size_t query_no_ = 0;
};

}  // namespace squarepack
