#include "squarepack/packer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace squarepack {

namespace {

constexpr double kRow = 0.25;
// p4 starts right of the b1/b2/b4+ row, whose span converges to 0.2934137.
constexpr double kP4Origin = 0.294;

bool vertically_overlaps(const Rect& a, const Rect& b) {
  return a.y < b.top() - kEps && b.y < a.top() - kEps;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const Layout& Layout::standard() {
  static const Layout layout = [] {
    Layout l;
    const double h1 = class_params(1).max_height;
    const double h2 = class_params(2).max_height;
    const double h3 = class_params(3).max_height;
    const double b0_right = buffer_span(BufferGroup::b0_b3_row);
    l.p1 = {0.0, 0.0, 1.0, kRow};
    l.p2 = {0.0, kRow, 1.0, kRow};
    l.b3 = {0.0, 2 * kRow, h3, kRow};
    l.b0 = {h3, 2 * kRow, 0.25, kRow};
    l.p3 = {b0_right, 2 * kRow, 1.0 - b0_right, kRow};
    l.b1 = {0.0, 3 * kRow, h1, kRow};
    l.b2 = {h1, 3 * kRow, h2, kRow};
    l.p4 = {kP4Origin, 3 * kRow, 1.0 - kP4Origin, kRow};
    l.b4plus_x = h1 + h2;
    return l;
  }();
  return layout;
}

Rect Layout::buffer_column(int k) const {
  switch (k) {
    case 1:
      return b1;
    case 2:
      return b2;
    case 3:
      return b3;
    default:
      break;
  }
  double x = b4plus_x;
  for (int j = 4; j < k; ++j) x += class_params(j).max_height;
  return {x, 3 * kRow, class_params(k).max_height, kRow};
}

std::string to_string(MediumPhase p) { return p == MediumPhase::bottom ? "bottom" : "top"; }

std::string to_string(SmallPhase p) {
  switch (p) {
    case SmallPhase::buffer_b0:
      return "buffer_b0";
    case SmallPhase::pair12:
      return "pair12";
    case SmallPhase::pair34:
      return "pair34";
  }
  return "buffer_b0";
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::no_fit:
      return "no_fit";
    case RejectReason::budget_exceeded:
      return "budget_exceeded";
    case RejectReason::invariant_violation:
      return "invariant_violation";
    case RejectReason::invalid_height:
      return "invalid_height";
  }
  return "no_fit";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::placed:
      return "placed";
    case EventKind::opened:
      return "opened";
    case EventKind::closed:
      return "closed";
    case EventKind::phase_change:
      return "phase_change";
    case EventKind::rejected:
      return "rejected";
  }
  return "placed";
}

std::string Snapshot::shelf_name(std::optional<int> id) const {
  if (!id) return {};
  return shelf(*id).name;
}

Packer::Packer(PackerConfig config) {
  s_.config = config;
  const Layout& l = Layout::standard();
  const double h0 = class_params(0).max_height;
  const double r0 = class_params(0).ratio;
  add_shelf(Shelf::horizontal(shelf_ids::p1, "p1", l.p1, h0, r0));
  add_shelf(Shelf::horizontal(shelf_ids::p2, "p2", l.p2, h0, r0));
  add_shelf(Shelf::horizontal(shelf_ids::p3, "p3", l.p3, h0, r0));
  add_shelf(Shelf::horizontal(shelf_ids::p4, "p4", l.p4, h0, r0));
  add_shelf(Shelf::horizontal(shelf_ids::b0, "b0", l.b0, h0, r0));
  add_shelf(Shelf::vertical(shelf_ids::b1, "b1", l.b1, 1));
  add_shelf(Shelf::vertical(shelf_ids::b2, "b2", l.b2, 2));
  add_shelf(Shelf::vertical(shelf_ids::b3, "b3", l.b3, 3));
  for (int k = 1; k <= 3; ++k) {
    const int id = shelf_ids::b1 + k - 1;
    s_.open_column[k] = id;
    index_.insert(shelf(id).rect, column_tag(id));
  }
}

int Packer::add_shelf(Shelf s) {
  s.id = static_cast<int>(s_.shelves.size());
  s_.shelves.push_back(std::move(s));
  return s_.shelves.back().id;
}

void Packer::log(EventKind kind, const Arrival& a, std::optional<Rect> rect,
                 std::optional<int> shelf_id, std::string reason) {
  Event e;
  e.seq = s_.events.size();
  e.kind = kind;
  e.square_id = a.id;
  e.square_height = a.height;
  if (a.cls.kind != SizeClass::Kind::sub || a.cls.sub >= 0) e.square_class = a.cls;
  e.rect = rect;
  e.shelf_id = shelf_id;
  e.reason = std::move(reason);
  s_.events.push_back(std::move(e));
}

Rejection Packer::reject(const Arrival& a, RejectReason reason, std::string detail) {
  log(EventKind::rejected, a, std::nullopt, std::nullopt, to_string(reason) + ": " + detail);
  return {reason, std::move(detail)};
}

double Packer::right_bound(int shelf_id) const {
  const Shelf& s = s_.shelf(shelf_id);
  double bound = 1.0;
  if (shelf_id == shelf_ids::p1 || shelf_id == shelf_ids::p2) {
    bound = std::min(bound, s_.medium_bottom_left);
  } else if (shelf_id == shelf_ids::p3 || shelf_id == shelf_ids::p4) {
    bound = std::min(bound, s_.medium_top_left);
  }
  if (s_.large) {
    const Rect big = s_.placements[*s_.large].rect();
    if (vertically_overlaps(big, s.rect)) bound = std::min(bound, big.x);
  }
  return bound;
}

std::optional<std::string> Packer::collision(const Rect& r, std::optional<int> ignore_tag) const {
  if (!rect_contains(kUnitSquare, r, kEps)) return "rect leaves the container";
  for (int tag : index_.overlapping(r)) {
    if (ignore_tag && tag == *ignore_tag) continue;
    if (tag >= 0) return "overlaps square " + std::to_string(tag);
    return "overlaps column " + s_.shelf(-tag - 1).name;
  }
  return std::nullopt;
}

PlacedSquare Packer::commit(const Arrival& a, const Rect& r, std::optional<int> shelf_id) {
  PlacedSquare sq;
  sq.id = a.id;
  sq.height = a.height;
  sq.x = r.x;
  sq.y = r.y;
  sq.size_class = a.cls;
  sq.shelf_id = shelf_id;
  s_.placements.push_back(sq);
  s_.cumulative_area += sq.area();
  index_.insert(r, static_cast<int>(sq.id));
  log(EventKind::placed, a, r, shelf_id, {});
  return sq;
}

PlacementOutcome Packer::place(double height) {
  Arrival a{s_.placements.size(), height, SizeClass::subclass(-1)};
  try {
    a.cls = classify(height);
  } catch (const InvalidHeight& e) {
    return reject(a, RejectReason::invalid_height, e.what());
  }
  if (s_.config.enforce_budget &&
      s_.cumulative_area + height * height > s_.config.budget + kEps) {
    return reject(a, RejectReason::budget_exceeded,
                  "cumulative area would reach " + fmt(s_.cumulative_area + height * height));
  }
  switch (a.cls.kind) {
    case SizeClass::Kind::large:
      return place_large(a);
    case SizeClass::Kind::medium:
      return place_medium(a);
    case SizeClass::Kind::sub:
      break;
  }
  return a.cls.sub == 0 ? place_small(a) : place_very_small(a);
}

PlacementOutcome Packer::place_large(const Arrival& a) {
  if (s_.large) return reject(a, RejectReason::no_fit, "a large square is already placed");
  const double x = 1.0 - a.height;
  const Rect r{x, x, a.height, a.height};
  if (auto hit = collision(r, std::nullopt)) {
    return reject(a, RejectReason::no_fit, "upper right corner is occupied: " + *hit);
  }
  PlacedSquare sq = commit(a, r, std::nullopt);
  s_.large = s_.placements.size() - 1;
  return sq;
}

PlacementOutcome Packer::place_medium(const Arrival& a) {
  const double h = a.height;
  std::optional<Rect> big;
  if (s_.large) big = s_.placements[*s_.large].rect();

  if (s_.medium_phase == MediumPhase::bottom) {
    double right = s_.medium_bottom_left;
    const Rect band{0.0, 0.0, 1.0, h};
    if (big && vertically_overlaps(*big, band)) right = std::min(right, big->x);
    const double x = right - h;
    const double floor_x = std::max({0.0, shelf(shelf_ids::p1).frontier(),
                                     shelf(shelf_ids::p2).frontier()});
    if (x >= floor_x - kEps) {
      const Rect r{x, 0.0, h, h};
      if (auto hit = collision(r, std::nullopt)) {
        return reject(a, RejectReason::invariant_violation, "bottom medium " + *hit);
      }
      s_.medium_bottom_left = x;
      return commit(a, r, std::nullopt);
    }
    s_.medium_phase = MediumPhase::top;
    for (int id : {shelf_ids::p1, shelf_ids::p2}) {
      if (shelf(id).state == ShelfState::open) shelf(id).state = ShelfState::closed_to_medium;
    }
    log(EventKind::phase_change, a, std::nullopt, std::nullopt, "medium:bottom->top");
  }

  double right = s_.medium_top_left;
  const Rect band{0.0, 1.0 - h, 1.0, h};
  if (big && vertically_overlaps(*big, band)) right = std::min(right, big->x);
  const double x = right - h;
  const double floor_x = std::max({buffer_span(BufferGroup::b0_b3_row),
                                   shelf(shelf_ids::p3).frontier(),
                                   shelf(shelf_ids::p4).frontier()});
  if (x < floor_x - kEps) {
    return reject(a, RejectReason::no_fit,
                  "top medium shelf exhausted (needs x >= " + fmt(floor_x) + ", got " + fmt(x) + ")");
  }
  const Rect r{x, 1.0 - h, h, h};
  if (auto hit = collision(r, std::nullopt)) {
    return reject(a, RejectReason::invariant_violation, "top medium " + *hit);
  }
  s_.medium_top_left = x;
  return commit(a, r, std::nullopt);
}

void Packer::enter_pair34(const Arrival& a, const ShelfItem& closer) {
  for (int id : {shelf_ids::p1, shelf_ids::p2}) {
    Shelf& s = shelf(id);
    if (s.state == ShelfState::closed) continue;
    s.close(ShelfCloser{closer.kind, closer.extent, right_bound(id) - s.origin(), a.id});
    log(EventKind::closed, a, std::nullopt, id, "pair close");
  }
  s_.pair_close = PairClose{a.id, closer.kind, closer.extent};
  s_.small_phase = SmallPhase::pair34;
  log(EventKind::phase_change, a, std::nullopt, std::nullopt, "small:pair12->pair34");
  if (s_.medium_phase == MediumPhase::bottom) {
    s_.medium_phase = MediumPhase::top;
    log(EventKind::phase_change, a, std::nullopt, std::nullopt, "medium:bottom->top");
  }

  // p3 starts in the unused tail of b0.
  const Shelf& b0 = shelf(shelf_ids::b0);
  Shelf& p3 = shelf(shelf_ids::p3);
  const double start = b0.frontier();
  p3.rect.w = p3.rect.right() - start;
  p3.rect.x = start;
  p3.ell = p3.rect.w;
}

std::variant<Packer::Slot, Rejection> Packer::small_slot(const ShelfItem& item, const Arrival& a) {
  if (s_.small_phase == SmallPhase::buffer_b0) {
    Shelf& b0 = shelf(shelf_ids::b0);
    if (b0.fits(item.extent)) return Slot{b0.id, b0.ell, b0.slot_for(item)};
    b0.close(ShelfCloser{item.kind, item.extent, b0.ell, a.id});
    log(EventKind::closed, a, std::nullopt, b0.id, "item does not fit");
    s_.small_phase = SmallPhase::pair12;
    log(EventKind::phase_change, a, std::nullopt, std::nullopt, "small:buffer_b0->pair12");
  }

  auto try_pair = [&](int first, int second) -> std::optional<Slot> {
    std::array<int, 2> order{first, second};
    if (shelf(second).used < shelf(first).used) std::swap(order[0], order[1]);
    for (int id : order) {
      const Shelf& s = shelf(id);
      const double limit = right_bound(id) - s.origin();
      if (s.is_open_to_small() && s.fits(item.extent, limit)) {
        return Slot{id, limit, s.slot_for(item)};
      }
    }
    return std::nullopt;
  };

  if (s_.small_phase == SmallPhase::pair12) {
    if (auto slot = try_pair(shelf_ids::p1, shelf_ids::p2)) return *slot;
    enter_pair34(a, item);
  }

  if (auto slot = try_pair(shelf_ids::p3, shelf_ids::p4)) return *slot;
  return reject(a, RejectReason::no_fit, "item of extent " + fmt(item.extent) +
                                             " fits neither p3 nor p4");
}

PlacementOutcome Packer::place_small(const Arrival& a) {
  const ShelfItem item = ShelfItem::square(static_cast<int>(a.id), a.height, a.id);
  auto found = small_slot(item, a);
  if (auto* rej = std::get_if<Rejection>(&found)) return *rej;
  const Slot slot = std::get<Slot>(found);
  if (auto hit = collision(slot.rect, std::nullopt)) {
    return reject(a, RejectReason::invariant_violation,
                  "small square in " + shelf(slot.shelf_id).name + " " + *hit);
  }
  shelf(slot.shelf_id).insert(item, slot.free_limit);
  return commit(a, slot.rect, slot.shelf_id);
}

int Packer::open_column(int sub, const Arrival& a) {
  if (auto it = s_.open_column.find(sub); it != s_.open_column.end()) return it->second;
  const Rect r = Layout::standard().buffer_column(sub);
  const int id = add_shelf(Shelf::vertical(0, "b" + std::to_string(sub), r, sub));
  s_.open_column[sub] = id;
  index_.insert(r, column_tag(id));
  log(EventKind::opened, a, r, id, "buffer column");
  return id;
}

PlacementOutcome Packer::place_very_small(const Arrival& a) {
  const int k = a.cls.sub;
  const ShelfItem square = ShelfItem::square(static_cast<int>(a.id), a.height, a.id);
  const int current = open_column(k, a);

  if (shelf(current).fits(a.height)) {
    const Rect r = shelf(current).slot_for(square);
    if (auto hit = collision(r, column_tag(current))) {
      return reject(a, RejectReason::invariant_violation,
                    "square in column " + shelf(current).name + " " + *hit);
    }
    shelf(current).insert(square);
    return commit(a, r, current);
  }

  // Current column is full for this square: pack a fresh column like a small
  // square, then start it with this square.
  const int new_id = static_cast<int>(s_.shelves.size());
  const double width = class_params(k).max_height;
  const ShelfItem column = ShelfItem::column(new_id, width, a.id);
  auto found = small_slot(column, a);
  if (auto* rej = std::get_if<Rejection>(&found)) return *rej;
  const Slot slot = std::get<Slot>(found);
  if (auto hit = collision(slot.rect, std::nullopt)) {
    return reject(a, RejectReason::invariant_violation, "new c" + std::to_string(k) +
                                                            " column in " +
                                                            shelf(slot.shelf_id).name + " " + *hit);
  }

  shelf(current).close(ShelfCloser{ShelfItem::Kind::square, a.height, shelf(current).ell, a.id});
  log(EventKind::closed, a, std::nullopt, current, "square does not fit");

  shelf(slot.shelf_id).insert(column, slot.free_limit);
  const int n = ++column_counter_[k];
  Shelf col = Shelf::vertical(0, "c" + std::to_string(k) + "." + std::to_string(n), slot.rect, k);
  col.host = slot.shelf_id;
  add_shelf(std::move(col));
  s_.open_column[k] = new_id;
  index_.insert(slot.rect, column_tag(new_id));
  log(EventKind::opened, a, slot.rect, new_id, "column in " + shelf(slot.shelf_id).name);

  const Rect r = shelf(new_id).slot_for(square);
  shelf(new_id).insert(square);
  return commit(a, r, new_id);
}

}  // namespace squarepack
