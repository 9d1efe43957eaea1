#include "squarepack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace squarepack {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_containment(std::span<const PlacedSquare> squares, AuditReport& rep) {
  for (const auto& sq : squares) {
    if (!rect_contains(kUnitSquare, sq.rect(), kEps)) {
      rep.add("containment", "square " + std::to_string(sq.id) + " leaves the container",
              {sq.id});
    }
  }
}

void add_overlap(const PlacedSquare& a, const PlacedSquare& b, AuditReport& rep) {
  rep.add("overlap",
          "squares " + std::to_string(a.id) + " and " + std::to_string(b.id) + " overlap",
          {std::min(a.id, b.id), std::max(a.id, b.id)});
}

bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

bool same_rect(const Rect& a, const Rect& b) {
  return near(a.x, b.x) && near(a.y, b.y) && near(a.w, b.w) && near(a.h, b.h);
}

double total_area(std::span<const PlacedSquare> squares) {
  double a = 0.0;
  for (const auto& sq : squares) a += sq.area();
  return a;
}

}  // namespace

void AuditReport::merge(const AuditReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  for (const auto& [k, v] : other.stats) stats[k] = v;
}

void AuditReport::add(std::string rule, std::string detail, std::vector<std::size_t> ids) {
  violations.push_back({std::move(rule), std::move(detail), std::move(ids)});
}

AuditReport audit_geometry(std::span<const PlacedSquare> squares) {
  AuditReport rep;
  check_containment(squares, rep);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    for (std::size_t j = i + 1; j < squares.size(); ++j) {
      if (rects_overlap(squares[i].rect(), squares[j].rect())) add_overlap(squares[i], squares[j], rep);
    }
  }
  rep.stats["total_area"] = total_area(squares);
  rep.stats["squares"] = static_cast<double>(squares.size());
  return rep;
}

AuditReport audit_geometry(const Snapshot& snap) { return audit_geometry(snap.placements); }

AuditReport audit_geometry_sweep(std::span<const PlacedSquare> squares) {
  AuditReport rep;
  check_containment(squares, rep);
  std::vector<std::size_t> order(squares.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return squares[a].x < squares[b].x || (squares[a].x == squares[b].x && a < b);
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Rect a = squares[order[i]].rect();
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Rect b = squares[order[j]].rect();
      if (b.x >= a.right() - kEps) break;
      if (rects_overlap(a, b)) add_overlap(squares[order[i]], squares[order[j]], rep);
    }
  }
  rep.stats["total_area"] = total_area(squares);
  rep.stats["squares"] = static_cast<double>(squares.size());
  return rep;
}

AuditReport audit_shelf_discipline(const Snapshot& snap) {
  AuditReport rep;
  std::map<std::size_t, const PlacedSquare*> by_id;
  for (const auto& sq : snap.placements) by_id[sq.id] = &sq;
  std::map<int, std::size_t> shelved_per_shelf;
  for (const auto& sq : snap.placements) {
    if (sq.shelf_id) ++shelved_per_shelf[*sq.shelf_id];
  }

  std::map<int, int> open_columns;
  for (const Shelf& s : snap.shelves) {
    const std::string where = "shelf " + s.name;
    if (s.used < -kEps || s.used > s.ell + kEps) {
      rep.add("used_range", where + " used " + fmt(s.used) + " outside [0, " + fmt(s.ell) + "]");
    }
    double offset = 0.0;
    std::size_t squares_here = 0;
    for (const ShelfItem& item : s.items) {
      Rect expected;
      if (s.orientation == Orientation::horizontal) {
        const double ih = item.kind == ShelfItem::Kind::square ? item.extent : kColumnLength;
        expected = {s.rect.x + offset, s.rect.y, item.extent, ih};
      } else {
        expected = {s.rect.x, s.rect.y + offset, item.extent, item.extent};
      }
      if (!same_rect(expected, item.rect)) {
        rep.add("flush", where + " item " + std::to_string(item.ref) + " is not flush");
      }
      if (!rect_contains(s.rect, item.rect, kEps)) {
        rep.add("inside_shelf", where + " item " + std::to_string(item.ref) + " leaves the shelf");
      }
      if (item.kind == ShelfItem::Kind::square) {
        ++squares_here;
        const auto id = static_cast<std::size_t>(item.ref);
        if (!s.admits_height(item.extent)) {
          rep.add("height_range",
                  where + " holds square " + std::to_string(id) + " of height " +
                      fmt(item.extent) + " outside (" + fmt(s.h * s.r) + ", " + fmt(s.h) + "]",
                  {id});
        }
        auto it = by_id.find(id);
        if (it == by_id.end()) {
          rep.add("unknown_square", where + " lists unknown square " + std::to_string(id), {id});
        } else if (!same_rect(it->second->rect(), item.rect) || it->second->shelf_id != s.id) {
          rep.add("placement_mismatch", where + " disagrees with placement of square " +
                                            std::to_string(id), {id});
        }
      } else {
        if (s.orientation != Orientation::horizontal) {
          rep.add("column_nesting", where + " holds a column");
        } else if (item.ref < 0 || static_cast<std::size_t>(item.ref) >= snap.shelves.size()) {
          rep.add("unknown_column", where + " lists unknown column " + std::to_string(item.ref));
        } else {
          const Shelf& col = snap.shelf(item.ref);
          if (!same_rect(col.rect, item.rect) || !near(col.h, item.extent, kEps)) {
            rep.add("column_mismatch", where + " column " + col.name + " rect/width mismatch");
          }
        }
      }
      offset += item.extent;
    }
    if (!near(offset, s.used, kEps)) {
      rep.add("used_bookkeeping", where + " used " + fmt(s.used) + " but items sum to " + fmt(offset));
    }
    if (squares_here != shelved_per_shelf[s.id]) {
      rep.add("placement_mismatch", where + " item list disagrees with placements");
    }
    if (s.orientation == Orientation::vertical && s.state != ShelfState::closed) {
      if (++open_columns[s.sub] > 1) {
        rep.add("open_columns", "more than one open column for c" + std::to_string(s.sub));
      }
    }
  }
  rep.stats["shelves"] = static_cast<double>(snap.shelves.size());
  return rep;
}

double shelf_close_bound(double h, double r, double ell, double closer_height) {
  const double hr = h * r;
  return ell * hr - hr * hr + closer_height * hr;
}

AuditReport audit_closed_shelf_density(const Snapshot& snap) {
  AuditReport rep;
  std::map<std::size_t, double> area_of;
  for (const auto& sq : snap.placements) area_of[sq.id] = sq.area();

  double min_column_margin = 1.0;
  double min_shelf_margin = 1.0;
  int skipped = 0;
  for (const Shelf& s : snap.shelves) {
    if (s.state != ShelfState::closed) continue;
    double area = 0.0;
    bool squares_only = true;
    for (const auto& item : s.items) {
      if (item.kind == ShelfItem::Kind::square) {
        area += item.extent * item.extent;
      } else {
        squares_only = false;
      }
    }
    const double hr = s.h * s.r;
    if (s.orientation == Orientation::vertical) {
      // The closing square keeps h_q * h r for its new column; the rest of
      // its area counts toward the column it closed.
      double credit = 0.0;
      if (s.closer && s.closer->kind == ShelfItem::Kind::square) {
        const double e = s.closer->extent;
        credit = std::max(0.0, e * e - e * hr);
      }
      const double need = 0.5 * s.h * s.ell;
      const double margin = area + credit - need;
      min_column_margin = std::min(min_column_margin, margin);
      if (margin < -kAreaEps) {
        rep.add("column_density", "closed column " + s.name + " holds " + fmt(area) +
                                      " (+" + fmt(credit) + " credited) < " + fmt(need));
      }
      continue;
    }
    if (!s.closer || !squares_only) {
      ++skipped;
      continue;
    }
    const double e = s.closer->extent;
    const double ell = s.closer->free_limit;
    double lhs;
    double rhs;
    if (s.closer->kind == ShelfItem::Kind::square) {
      lhs = area + e * e;
      rhs = shelf_close_bound(s.h, s.r, ell, e);
    } else {
      lhs = area;
      rhs = hr * (ell - e);
    }
    min_shelf_margin = std::min(min_shelf_margin, lhs - rhs);
    if (!(lhs > rhs - kAreaEps)) {
      rep.add("shelf_close_bound", "closed shelf " + s.name + ": " + fmt(lhs) + " <= " + fmt(rhs));
    }
  }
  rep.stats["min_closed_column_margin"] = min_column_margin;
  rep.stats["min_closed_shelf_margin"] = min_shelf_margin;
  rep.stats["closed_shelves_with_columns_skipped"] = skipped;
  return rep;
}

AuditReport audit_pair_close(const Snapshot& snap) {
  AuditReport rep;
  if (!snap.pair_close) return rep;
  const PairClose& pc = *snap.pair_close;
  const Layout& layout = Layout::standard();

  std::vector<Rect> region{layout.p1, layout.p2, layout.b0};
  for (const Shelf& s : snap.shelves) {
    if (s.orientation == Orientation::vertical && !s.host) region.push_back(s.rect);
  }
  double area = 0.0;
  for (const auto& sq : snap.placements) {
    if (sq.id >= pc.square_id) continue;
    for (const Rect& r : region) area += intersection_area(sq.rect(), r);
  }
  const double credit =
      pc.closer_kind == ShelfItem::Kind::square ? pc.closer_extent * pc.closer_extent : 0.0;
  constexpr double kBound = 7.0 / 32.0;
  rep.stats["pair_close_region_area"] = area;
  rep.stats["pair_close_closer_credit"] = credit;
  rep.stats["pair_close_total"] = area + credit;
  if (area + credit < kBound - kAreaEps) {
    rep.add("pair_close", "p1/p2 closed by square " + std::to_string(pc.square_id) +
                              " with region area " + fmt(area) + " + closer " + fmt(credit) +
                              " < 7/32",
            {pc.square_id});
  }
  return rep;
}

AuditReport audit_large_reservation(const Snapshot& snap) {
  AuditReport rep;
  struct Step {
    std::size_t by;
    int shelf;
    double extent;
  };
  std::vector<Step> steps;
  for (int id : {shelf_ids::p1, shelf_ids::p2}) {
    for (const auto& item : snap.shelf(id).items) steps.push_back({item.placed_by, id, item.extent});
  }
  std::sort(steps.begin(), steps.end(),
            [](const Step& a, const Step& b) { return a.by < b.by; });

  std::vector<PlacedSquare> ordered(snap.placements.begin(), snap.placements.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const PlacedSquare& a, const PlacedSquare& b) { return a.id < b.id; });

  double used1 = 0.0;
  double used2 = 0.0;
  double area = 0.0;
  double worst = -1.0;
  std::size_t audited = 0;
  std::size_t k = 0;
  auto check = [&](std::optional<std::size_t> id) {
    if (area > 0.125) return;
    ++audited;
    const double sum = std::max(used1, used2) + std::sqrt(0.375 - area);
    worst = std::max(worst, sum);
    if (sum > 1.0 + kAreaEps) {
      rep.add("large_reservation",
              "prefix through square " + (id ? std::to_string(*id) : std::string("-")) +
                  ": used " + fmt(std::max(used1, used2)) + " + reserve " +
                  fmt(std::sqrt(0.375 - area)) + " > 1",
              id ? std::vector<std::size_t>{*id} : std::vector<std::size_t>{});
    }
  };
  check(std::nullopt);
  for (const auto& sq : ordered) {
    area += sq.area();
    while (k < steps.size() && steps[k].by <= sq.id) {
      (steps[k].shelf == shelf_ids::p1 ? used1 : used2) += steps[k].extent;
      ++k;
    }
    check(sq.id);
  }
  rep.stats["large_reservation_prefixes"] = static_cast<double>(audited);
  rep.stats["large_reservation_max_sum"] = worst;
  return rep;
}

AuditReport audit_all(const Snapshot& snap, bool brute_force_geometry) {
  AuditReport rep = brute_force_geometry ? audit_geometry(snap)
                                         : audit_geometry_sweep(snap.placements);
  rep.merge(audit_shelf_discipline(snap));
  rep.merge(audit_closed_shelf_density(snap));
  rep.merge(audit_pair_close(snap));
  rep.merge(audit_large_reservation(snap));
  return rep;
}

ShelfFillTrial simulate_shelf_fill(double h, double r, double ell, Rng& rng) {
  ShelfFillTrial t;
  t.h = h;
  t.r = r;
  t.ell = ell;
  Shelf shelf = Shelf::horizontal(0, "trial", {0.0, 0.0, ell, h}, h, r);
  const double floor = h * r;
  for (;;) {
    double k = rng.uniform_open_closed(floor, h);
    if (k <= floor) k = std::nextafter(floor, h);
    if (!shelf.fits(k)) {
      t.closer = k;
      break;
    }
    shelf.insert(ShelfItem::square(static_cast<int>(t.count), k, t.count));
    t.packed_area += k * k;
    ++t.count;
  }
  t.lhs = t.packed_area + t.closer * t.closer;
  t.rhs = shelf_close_bound(h, r, ell, t.closer);
  return t;
}

}  // namespace squarepack
