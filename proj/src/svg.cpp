#include "squarepack/svg.hpp"

#include <sstream>

namespace squarepack {

namespace {

const char* fill_for(const SizeClass& c) {
  if (c.is_large()) return "#d62728";
  if (c.is_medium()) return "#ff7f0e";
  if (c.is_small()) return "#1f77b4";
  static const char* shades[] = {"#2ca02c", "#17becf", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return shades[(c.sub - 1) % 6];
}

}  // namespace

std::string render_svg(const Snapshot& snap, int pixels) {
  const double s = pixels;
  const int pad = 10;
  std::ostringstream os;
  os.precision(10);
  // Flip y so that the container origin is the lower left corner.
  auto rect = [&](const Rect& r, const std::string& style) {
    os << "  <rect x=\"" << pad + r.x * s << "\" y=\"" << pad + (1.0 - r.top()) * s
       << "\" width=\"" << r.w * s << "\" height=\"" << r.h * s << "\" " << style << "/>\n";
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels + 2 * pad << "\" height=\""
     << pixels + 2 * pad << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& sq : snap.placements) {
    rect(sq.rect(), std::string("fill=\"") + fill_for(sq.size_class) +
                        "\" fill-opacity=\"0.75\" stroke=\"black\" stroke-width=\"0.5\"");
  }
  for (const auto& sh : snap.shelves) {
    const bool column = sh.orientation == Orientation::vertical;
    const std::string dash = sh.state == ShelfState::closed ? " stroke-dasharray=\"4 2\"" : "";
    rect(sh.rect, std::string("fill=\"none\" stroke=\"") + (column ? "#555555" : "#000000") +
                      "\" stroke-width=\"" + (column ? "0.6" : "1.2") + "\"" + dash);
    if (!column) {
      os << "  <text x=\"" << pad + sh.rect.x * s + 3 << "\" y=\"" << pad + (1.0 - sh.rect.y) * s - 3
         << "\" font-size=\"10\" fill=\"#444\">" << sh.name << "</text>\n";
    }
  }
  rect(kUnitSquare, "fill=\"none\" stroke=\"black\" stroke-width=\"2\"");
  os << "</svg>\n";
  return os.str();
}

}  // namespace squarepack
