#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "squarepack/geometry.hpp"
#include "squarepack/packer.hpp"
#include "squarepack/rng.hpp"

namespace squarepack {

struct Violation {
  std::string rule;
  std::string detail;
  std::vector<std::size_t> ids;
};

/// Outcome of one or more audit rules. Empty `violations` means every rule
/// that ran passed; `stats` carries the measured figures by name.
struct AuditReport {
  std::vector<Violation> violations;
  std::map<std::string, double> stats;

  bool passed() const { return violations.empty(); }
  void merge(const AuditReport& other);
  void add(std::string rule, std::string detail, std::vector<std::size_t> ids = {});
};

/// All-pairs interior-overlap and unit-square containment check. O(n^2).
AuditReport audit_geometry(std::span<const PlacedSquare> squares);
AuditReport audit_geometry(const Snapshot& snap);

/// Same rules as audit_geometry via an x-sorted sweep; reports the same
/// violations (as a set) for any input.
AuditReport audit_geometry_sweep(std::span<const PlacedSquare> squares);

/// Height ranges, flush side-by-side placement, used-length bookkeeping and
/// at most one open column per subclass.
AuditReport audit_shelf_discipline(const Snapshot& snap);

/// Closed columns reach half their area (crediting the part of the closing
/// square not claimed by its new column); closed horizontal shelves holding
/// only squares meet the shelf-closing area bound.
AuditReport audit_closed_shelf_density(const Snapshot& snap);

/// When p1/p2 were closed, the content of p1, p2, b0 and every buffer column,
/// plus the area of a closing small square, is at least 7/32.
AuditReport audit_pair_close(const Snapshot& snap);

/// At every prefix with cumulative area <= 1/8,
/// max(used p1, used p2) + sqrt(3/8 - area) <= 1.
AuditReport audit_large_reservation(const Snapshot& snap);

/// Every rule above. The sweep geometry check is used unless
/// `brute_force_geometry` is set.
AuditReport audit_all(const Snapshot& snap, bool brute_force_geometry = false);

/// Shelf-closing lower bound: l h r - (h r)^2 + h_q h r.
double shelf_close_bound(double h, double r, double ell, double closer_height);

struct ShelfFillTrial {
  double h = 0.0;
  double r = 0.0;
  double ell = 0.0;
  std::size_t count = 0;      // squares packed before the failure
  double packed_area = 0.0;
  double closer = 0.0;        // height of the first square that did not fit
  double lhs = 0.0;           // packed_area + closer^2
  double rhs = 0.0;           // shelf_close_bound(h, r, ell, closer)
};

/// Fills a fresh shelf (h, r, ell) with uniform heights in (h r, h] until
/// the first square that does not fit.
ShelfFillTrial simulate_shelf_fill(double h, double r, double ell, Rng& rng);

}  // namespace squarepack
