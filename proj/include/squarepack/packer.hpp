#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "squarepack/geometry.hpp"
#include "squarepack/shelf.hpp"
#include "squarepack/size_classes.hpp"

namespace squarepack {

/// Fixed regions of the container.
///
/// Rows of height 1/4 from the bottom: p1 | p2 | b3 b0 p3 | b1 b2 b4+ p4.
/// Columns b_k for k >= 4 are laid out left to right from x = h_1 + h_2 and
/// converge below x = 0.2934137, left of p4.
struct Layout {
  Rect p1;
  Rect p2;
  Rect b3;
  Rect b0;
  Rect p3;
  Rect b1;
  Rect b2;
  Rect p4;
  double b4plus_x = 0.0;

  static const Layout& standard();

  /// Buffer column of subclass k >= 1.
  Rect buffer_column(int k) const;
};

/// Fixed shelf ids. Columns allocated later get ids from kFirstDynamicShelf.
namespace shelf_ids {
inline constexpr int p1 = 0;
inline constexpr int p2 = 1;
inline constexpr int p3 = 2;
inline constexpr int p4 = 3;
inline constexpr int b0 = 4;
inline constexpr int b1 = 5;
inline constexpr int b2 = 6;
inline constexpr int b3 = 7;
inline constexpr int kFirstDynamicShelf = 8;
}  // namespace shelf_ids

enum class MediumPhase { bottom, top };
enum class SmallPhase { buffer_b0, pair12, pair34 };

std::string to_string(MediumPhase p);
std::string to_string(SmallPhase p);

struct PackerConfig {
  bool enforce_budget = false;
  double budget = 0.375;
};

enum class RejectReason { no_fit, budget_exceeded, invariant_violation, invalid_height };
std::string to_string(RejectReason r);

struct Rejection {
  RejectReason reason = RejectReason::no_fit;
  std::string detail;
};

class PlacementOutcome {
 public:
  PlacementOutcome(PlacedSquare sq) : value_(std::move(sq)) {}  // NOLINT
  PlacementOutcome(Rejection r) : value_(std::move(r)) {}       // NOLINT

  bool placed() const { return std::holds_alternative<PlacedSquare>(value_); }
  const PlacedSquare& square() const { return std::get<PlacedSquare>(value_); }
  const Rejection& rejection() const { return std::get<Rejection>(value_); }

 private:
  std::variant<PlacedSquare, Rejection> value_;
};

enum class EventKind { placed, opened, closed, phase_change, rejected };
std::string to_string(EventKind k);

/// One journal entry. `square_*` describe the input square whose arrival
/// produced the event.
struct Event {
  std::size_t seq = 0;
  EventKind kind = EventKind::placed;
  std::size_t square_id = 0;
  double square_height = 0.0;
  std::optional<SizeClass> square_class;
  std::optional<Rect> rect;
  std::optional<int> shelf_id;
  std::string reason;
};

/// The moment p1/p2 were closed to small items.
struct PairClose {
  std::size_t square_id = 0;
  ShelfItem::Kind closer_kind = ShelfItem::Kind::square;
  double closer_extent = 0.0;
};

/// Full packer state; also the read-only snapshot handed to auditors.
struct Snapshot {
  PackerConfig config;
  std::vector<PlacedSquare> placements;
  std::vector<Shelf> shelves;
  double cumulative_area = 0.0;
  double medium_bottom_left = 1.0;
  double medium_top_left = 1.0;
  MediumPhase medium_phase = MediumPhase::bottom;
  SmallPhase small_phase = SmallPhase::buffer_b0;
  std::map<int, int> open_column;  // subclass -> shelf id
  std::optional<std::size_t> large;  // index into placements
  std::optional<PairClose> pair_close;
  std::vector<Event> events;

  const Shelf& shelf(int id) const { return shelves.at(static_cast<std::size_t>(id)); }
  std::string shelf_name(std::optional<int> id) const;
};

/// Online square packer. Each call to place() fixes the square for good.
class Packer {
 public:
  explicit Packer(PackerConfig config = {});

  PlacementOutcome place(double height);

  const Snapshot& state() const { return s_; }
  Snapshot snapshot() const { return s_; }

  double cumulative_area() const { return s_.cumulative_area; }
  std::size_t size() const { return s_.placements.size(); }
  const PackerConfig& config() const { return s_.config; }

  /// Absolute right bound available to a primary shelf right now (medium
  /// frontier of its half, large square when it overlaps the row).
  double right_bound(int shelf_id) const;

 private:
  struct Arrival {
    std::size_t id;
    double height;
    SizeClass cls;
  };
  struct Slot {
    int shelf_id;
    double free_limit;
    Rect rect;
  };

  PlacementOutcome place_large(const Arrival& a);
  PlacementOutcome place_medium(const Arrival& a);
  PlacementOutcome place_small(const Arrival& a);
  PlacementOutcome place_very_small(const Arrival& a);

  /// Small-square routine for an item of the given extent; applies the
  /// b0 -> pair12 -> pair34 transitions the item triggers.
  std::variant<Slot, Rejection> small_slot(const ShelfItem& item, const Arrival& a);
  void enter_pair34(const Arrival& a, const ShelfItem& closer);

  int open_column(int sub, const Arrival& a);
  int add_shelf(Shelf s);

  /// Detail text when `r` collides with the index or leaves the container.
  std::optional<std::string> collision(const Rect& r, std::optional<int> ignore_tag) const;
  PlacedSquare commit(const Arrival& a, const Rect& r, std::optional<int> shelf_id);

  Rejection reject(const Arrival& a, RejectReason reason, std::string detail);
  void log(EventKind kind, const Arrival& a, std::optional<Rect> rect,
           std::optional<int> shelf_id, std::string reason);

  Shelf& shelf(int id) { return s_.shelves.at(static_cast<std::size_t>(id)); }

  static int column_tag(int shelf_id) { return -(shelf_id + 1); }

  Snapshot s_;
  RectGrid index_;
  std::map<int, int> column_counter_;
};

}  // namespace squarepack
