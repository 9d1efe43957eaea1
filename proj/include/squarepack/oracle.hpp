#pragma once

#include <optional>
#include <span>
#include <vector>

#include "squarepack/geometry.hpp"

namespace squarepack {

/// Offline shelf packing: sort by decreasing height, fill shelves left to
/// right starting at the bottom; each shelf is as tall as its first square
/// and the next shelf opens directly above it. Returns std::nullopt when
/// the shelves run past the top of the container.
///
/// Placement ids are the input indices; shelf_id is the shelf number.
std::optional<std::vector<PlacedSquare>> moon_moser_pack(std::span<const double> heights);

}  // namespace squarepack
