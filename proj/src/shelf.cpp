#include "squarepack/shelf.hpp"

#include <utility>

namespace squarepack {

std::string to_string(Orientation o) {
  return o == Orientation::horizontal ? "horizontal" : "vertical";
}

std::string to_string(ShelfState s) {
  switch (s) {
    case ShelfState::open:
      return "open";
    case ShelfState::closed_to_medium:
      return "closed_to_medium";
    case ShelfState::closed:
      return "closed";
  }
  return "open";
}

Shelf Shelf::horizontal(int id, std::string name, const Rect& rect, double h, double r) {
  Shelf s;
  s.id = id;
  s.name = std::move(name);
  s.rect = rect;
  s.orientation = Orientation::horizontal;
  s.h = h;
  s.ell = rect.w;
  s.r = r;
  return s;
}

Shelf Shelf::vertical(int id, std::string name, const Rect& rect, int sub) {
  const ClassParams p = class_params(sub);
  Shelf s;
  s.id = id;
  s.name = std::move(name);
  s.rect = rect;
  s.orientation = Orientation::vertical;
  s.h = p.max_height;
  s.ell = rect.h;
  s.r = p.ratio;
  s.sub = sub;
  return s;
}

double Shelf::origin() const {
  return orientation == Orientation::horizontal ? rect.x : rect.y;
}

bool Shelf::fits(double item_extent, double free_limit) const {
  return used + item_extent <= free_limit + kEps;
}

bool Shelf::admits_height(double height) const {
  return height > h * r && height <= h;
}

Rect Shelf::slot_for(const ShelfItem& item) const {
  if (orientation == Orientation::horizontal) {
    const double item_h = item.kind == ShelfItem::Kind::square ? item.extent : kColumnLength;
    return {rect.x + used, rect.y, item.extent, item_h};
  }
  return {rect.x, rect.y + used, item.extent, item.extent};
}

Rect Shelf::insert(ShelfItem item, double free_limit) {
  if (state == ShelfState::closed) {
    throw ShelfError(ShelfError::Kind::closed, "shelf " + name + " is closed");
  }
  if (item.kind == ShelfItem::Kind::square && !admits_height(item.extent)) {
    throw ShelfError(ShelfError::Kind::class_mismatch,
                     "square height outside the admissible range of shelf " + name);
  }
  if (!fits(item.extent, free_limit)) {
    throw ShelfError(ShelfError::Kind::no_fit, "item does not fit into shelf " + name);
  }
  item.rect = slot_for(item);
  used += item.extent;
  items.push_back(item);
  return item.rect;
}

void Shelf::close(std::optional<ShelfCloser> by) {
  if (state == ShelfState::closed) {
    throw ShelfError(ShelfError::Kind::already_closed, "shelf " + name + " already closed");
  }
  state = ShelfState::closed;
  closer = by;
}

}  // namespace squarepack
