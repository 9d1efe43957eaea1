#pragma once

#include <string>

#include "squarepack/packer.hpp"

namespace squarepack {

/// Final-state drawing: container, primary and buffer shelf outlines,
/// allocated columns, and squares shaded by class. `pixels` is the side of
/// the rendered container; y grows upward in container units.
std::string render_svg(const Snapshot& snap, int pixels = 800);

}  // namespace squarepack
