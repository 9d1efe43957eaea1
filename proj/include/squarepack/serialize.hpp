#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "squarepack/packer.hpp"
#include "squarepack/verifier.hpp"

namespace squarepack {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain decimal: digits with an optional fraction of at most 12 digits.
/// Signs, exponents, and anything else throw ParseError.
double parse_decimal(std::string_view text);

/// Height sequence: either a JSON array of numbers or one decimal per line
/// (blank lines and lines starting with '#' are skipped). Every number must
/// satisfy parse_decimal.
std::vector<double> parse_heights(std::string_view text);

json to_json(const Rect& r);
json to_json(const Shelf& s, const Snapshot& snap);
json to_json(const Event& e, const Snapshot& snap);
json to_json(const Snapshot& snap);
json to_json(const AuditReport& rep);

/// {id, height, class, x, y, shelf_id}
json placement_record(const PlacedSquare& sq, const Snapshot& snap);
/// {id, height, class, status: "rejected", reason, detail}
json rejection_record(std::size_t id, double height, const Rejection& r);

/// One JSON object per line, placement records in id order.
std::string placement_log(const Snapshot& snap);

}  // namespace squarepack
