#pragma once

#include <cstdint>
#include <string_view>

#include "squarepack/packer.hpp"
#include "squarepack/serialize.hpp"

namespace squarepack {

/// One interactive packing session.
///
/// Requests: {"op": "place", "height": 0.3} | {"op": "state"} |
/// {"op": "reset"} | {"op": "undo"}. Heights may be JSON numbers or decimal
/// strings. Every response carries a strictly increasing "seq", the
/// "status" (placed | rejected | ok), "cumulative_area" and
/// "budget_remaining". Malformed requests get status rejected with reason
/// parse_error and leave the packer untouched. Undo is never supported; the
/// engine does not move squares once placed.
class Session {
 public:
  explicit Session(PackerConfig config = {});

  json handle(const json& request);
  json handle_line(std::string_view line);

  const Packer& packer() const { return packer_; }

 private:
  json envelope(const char* status);
  json error(const char* reason, const std::string& detail);

  PackerConfig config_;
  Packer packer_;
  std::uint64_t seq_ = 0;
};

}  // namespace squarepack
