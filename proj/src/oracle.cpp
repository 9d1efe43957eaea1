#include "squarepack/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace squarepack {

std::optional<std::vector<PlacedSquare>> moon_moser_pack(std::span<const double> heights) {
  std::vector<std::size_t> order(heights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return heights[a] > heights[b]; });

  std::vector<PlacedSquare> out;
  out.reserve(heights.size());
  double shelf_y = 0.0;
  double shelf_h = 0.0;
  double cursor = 0.0;
  int shelf_no = -1;
  for (std::size_t idx : order) {
    const double h = heights[idx];
    if (!(h > 0.0) || h > 1.0) throw std::invalid_argument("height must lie in (0, 1]");
    if (shelf_no < 0 || cursor + h > 1.0 + kEps) {
      shelf_y += shelf_h;
      shelf_h = h;
      cursor = 0.0;
      ++shelf_no;
      if (shelf_y + shelf_h > 1.0 + kEps) return std::nullopt;
    }
    PlacedSquare sq;
    sq.id = idx;
    sq.height = h;
    sq.x = cursor;
    sq.y = shelf_y;
    sq.size_class = classify(h);
    sq.shelf_id = shelf_no;
    out.push_back(sq);
    cursor += h;
  }
  return out;
}

}  // namespace squarepack
