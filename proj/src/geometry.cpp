#include "squarepack/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace squarepack {

bool rects_overlap(const Rect& a, const Rect& b) {
  return a.x < b.right() - kEps && b.x < a.right() - kEps &&
         a.y < b.top() - kEps && b.y < a.top() - kEps;
}

bool rect_contains(const Rect& outer, const Rect& inner, double tol) {
  return inner.x >= outer.x - tol && inner.y >= outer.y - tol &&
         inner.right() <= outer.right() + tol && inner.top() <= outer.top() + tol;
}

double intersection_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double h = std::min(a.top(), b.top()) - std::max(a.y, b.y);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

RectGrid::RectGrid(int cells_per_side)
    : n_(std::max(1, cells_per_side)),
      cells_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {}

int RectGrid::cell_lo(double v) const {
  const int c = static_cast<int>(std::floor(v * n_));
  return std::clamp(c, 0, n_ - 1);
}

int RectGrid::cell_hi(double v) const {
  // Right/top edges are exclusive for bucketing; a rect ending exactly on a
  // cell line does not occupy the next cell. Overlap tests are exact anyway.
  const int c = static_cast<int>(std::ceil(v * n_)) - 1;
  return std::clamp(c, 0, n_ - 1);
}

void RectGrid::insert(const Rect& r, int tag) {
  const std::size_t idx = entries_.size();
  entries_.push_back({r, tag});
  stamp_.push_back(0);
  for (int cy = cell_lo(r.y); cy <= cell_hi(r.top()); ++cy) {
    for (int cx = cell_lo(r.x); cx <= cell_hi(r.right()); ++cx) {
      cells_[static_cast<std::size_t>(cy * n_ + cx)].push_back(idx);
    }
  }
}

void RectGrid::clear() {
  entries_.clear();
  stamp_.clear();
  for (auto& c : cells_) c.clear();
  query_no_ = 0;
}

std::vector<int> RectGrid::overlapping(const Rect& probe) const {
  std::vector<int> out;
  ++query_no_;
  for (int cy = cell_lo(probe.y); cy <= cell_hi(probe.top()); ++cy) {
    for (int cx = cell_lo(probe.x); cx <= cell_hi(probe.right()); ++cx) {
      for (std::size_t idx : cells_[static_cast<std::size_t>(cy * n_ + cx)]) {
        if (stamp_[idx] == query_no_) continue;
        stamp_[idx] = query_no_;
        if (rects_overlap(entries_[idx].rect, probe)) out.push_back(entries_[idx].tag);
      }
    }
  }
  return out;
}

}  // namespace squarepack
