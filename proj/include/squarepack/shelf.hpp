#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squarepack/geometry.hpp"

namespace squarepack {

enum class Orientation { horizontal, vertical };

/// closed_to_medium marks a primary shelf whose half of the container no
/// longer accepts medium squares while it still accepts small items.
enum class ShelfState { open, closed_to_medium, closed };

std::string to_string(Orientation o);
std::string to_string(ShelfState s);

class ShelfError : public std::runtime_error {
 public:
  enum class Kind { no_fit, class_mismatch, closed, already_closed };

  ShelfError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Something packed side by side into a shelf: a square, or a whole vertical
/// column (which a horizontal shelf treats like a square of width h_k).
struct ShelfItem {
  enum class Kind { square, column };

  Kind kind = Kind::square;
  /// Square id for squares, shelf id for columns.
  int ref = 0;
  /// Extent along the packing direction (square height or column width).
  double extent = 0.0;
  /// Id of the input square whose arrival caused this insertion.
  std::size_t placed_by = 0;
  Rect rect;

  static ShelfItem square(int square_id, double height, std::size_t placed_by) {
    return {Kind::square, square_id, height, placed_by, {}};
  }
  static ShelfItem column(int shelf_id, double width, std::size_t placed_by) {
    return {Kind::column, shelf_id, width, placed_by, {}};
  }
};

/// The item that failed to fit and closed a shelf.
struct ShelfCloser {
  ShelfItem::Kind kind = ShelfItem::Kind::square;
  double extent = 0.0;
  /// Usable length of the shelf at the moment it was closed.
  double free_limit = 0.0;
  std::size_t square_id = 0;
};

/// A subrectangle packed side by side with items whose heights lie in
/// (h*r, h]. Horizontal shelves pack left to right with items bottom-flush;
/// vertical shelves pack bottom to top with items left-flush.
struct Shelf {
  int id = 0;
  std::string name;
  Rect rect;
  Orientation orientation = Orientation::horizontal;
  double h = 0.0;    // cross dimension
  double ell = 0.0;  // packing-direction length
  double r = 0.0;
  double used = 0.0;
  ShelfState state = ShelfState::open;
  /// Subclass served by this shelf (0 for horizontal shelves).
  int sub = 0;
  /// Horizontal shelf holding this column, if it is not a fixed buffer.
  std::optional<int> host;
  std::vector<ShelfItem> items;
  std::optional<ShelfCloser> closer;

  static Shelf horizontal(int id, std::string name, const Rect& rect, double h, double r);
  static Shelf vertical(int id, std::string name, const Rect& rect, int sub);

  bool is_open_to_small() const { return state != ShelfState::closed; }

  /// Packing origin along the packing direction (x for horizontal, y for
  /// vertical).
  double origin() const;
  /// Absolute coordinate of the used frontier.
  double frontier() const { return origin() + used; }

  /// used + extent <= free_limit + kEps. `free_limit` is measured from the
  /// shelf origin and may be shorter than ell when something intrudes.
  bool fits(double item_extent, double free_limit) const;
  bool fits(double item_extent) const { return fits(item_extent, ell); }

  /// Rect the item would receive if inserted now.
  Rect slot_for(const ShelfItem& item) const;

  /// Appends `item` flush against the frontier and returns its rect.
  /// Throws ShelfError on a closed shelf, a height outside (h*r, h], or
  /// when the item does not fit within `free_limit`.
  Rect insert(ShelfItem item, double free_limit);
  Rect insert(ShelfItem item) { return insert(std::move(item), ell); }

  /// Marks the shelf closed; throws ShelfError(already_closed) if it was.
  void close(std::optional<ShelfCloser> by = std::nullopt);

  /// True iff a square of this height may be packed directly here.
  bool admits_height(double height) const;
};

}  // namespace squarepack
