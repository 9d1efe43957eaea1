#include "squarepack/session.hpp"

namespace squarepack {

Session::Session(PackerConfig config) : config_(config), packer_(config) {}

json Session::envelope(const char* status) {
  return {{"seq", seq_++},
          {"status", status},
          {"cumulative_area", packer_.cumulative_area()},
          {"budget_remaining", config_.budget - packer_.cumulative_area()}};
}

json Session::error(const char* reason, const std::string& detail) {
  json r = envelope("rejected");
  r["reason"] = reason;
  r["detail"] = detail;
  return r;
}

json Session::handle_line(std::string_view line) {
  json req;
  try {
    req = json::parse(line);
  } catch (const json::parse_error& e) {
    return error("parse_error", e.what());
  }
  return handle(req);
}

json Session::handle(const json& request) {
  if (!request.is_object() || !request.contains("op") || !request["op"].is_string()) {
    return error("parse_error", "request must be an object with a string \"op\"");
  }
  const std::string op = request["op"].get<std::string>();
  if (op == "state") {
    json r = envelope("ok");
    r["snapshot"] = to_json(packer_.state());
    return r;
  }
  if (op == "reset") {
    packer_ = Packer(config_);
    return envelope("ok");
  }
  if (op == "undo" || op == "undo_unsupported") {
    return error("undo_unsupported", "placed squares never move; reset and replay instead");
  }
  if (op != "place") return error("parse_error", "unknown op: " + op);

  if (!request.contains("height")) return error("parse_error", "place needs a height");
  const json& hj = request["height"];
  double height;
  try {
    if (hj.is_number()) {
      height = hj.get<double>();
    } else if (hj.is_string()) {
      height = parse_decimal(hj.get<std::string>());
    } else {
      return error("parse_error", "height must be a number or a decimal string");
    }
  } catch (const ParseError& e) {
    return error("parse_error", e.what());
  }

  const PlacementOutcome out = packer_.place(height);
  if (!out.placed()) {
    json r = envelope("rejected");
    r["reason"] = to_string(out.rejection().reason);
    r["detail"] = out.rejection().detail;
    return r;
  }
  const PlacedSquare& sq = out.square();
  json r = envelope("placed");
  r["id"] = sq.id;
  r["rect"] = to_json(sq.rect());
  r["class"] = sq.size_class.name();
  r["shelf_id"] = sq.shelf_id ? json(packer_.state().shelf(*sq.shelf_id).name) : json(nullptr);
  return r;
}

}  // namespace squarepack
