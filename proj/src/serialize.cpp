#include "squarepack/serialize.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace squarepack {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

json class_json(const std::optional<SizeClass>& c) {
  if (!c) return nullptr;
  return c->name();
}

json shelf_ref(const Snapshot& snap, std::optional<int> id) {
  if (!id) return nullptr;
  return snap.shelf(*id).name;
}

}  // namespace

double parse_decimal(std::string_view text) {
  text = trim(text);
  std::size_t digits = 0;
  std::size_t frac = 0;
  bool dot = false;
  for (char c : text) {
    if (c == '.') {
      if (dot) throw ParseError("malformed decimal: " + std::string(text));
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      ++digits;
      if (dot) ++frac;
    } else {
      throw ParseError("not a plain decimal: " + std::string(text));
    }
  }
  if (digits == 0 || (dot && frac == 0)) throw ParseError("malformed decimal: " + std::string(text));
  if (frac > 12) throw ParseError("more than 12 fractional digits: " + std::string(text));
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ParseError("malformed decimal: " + std::string(text));
  }
  return v;
}

std::vector<double> parse_heights(std::string_view text) {
  std::vector<double> out;
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("unterminated JSON array");
    std::string_view inner = body.substr(1, body.size() - 2);
    if (trim(inner).empty()) return out;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = inner.find(',', start);
      const std::string_view tok = inner.substr(start, comma == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : comma - start);
      out.push_back(parse_decimal(tok));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      try {
        out.push_back(parse_decimal(line));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

json to_json(const Rect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

json to_json(const Shelf& s, const Snapshot& snap) {
  json items = json::array();
  for (const auto& it : s.items) {
    items.push_back({{"kind", it.kind == ShelfItem::Kind::square ? "square" : "column"},
                     {"ref", it.kind == ShelfItem::Kind::square ? json(it.ref)
                                                                : json(snap.shelf(it.ref).name)},
                     {"extent", it.extent},
                     {"placed_by", it.placed_by},
                     {"rect", to_json(it.rect)}});
  }
  json j = {{"id", s.name},
            {"rect", to_json(s.rect)},
            {"orientation", to_string(s.orientation)},
            {"h", s.h},
            {"ell", s.ell},
            {"r", s.r},
            {"used", s.used},
            {"state", to_string(s.state)},
            {"class", "c" + std::to_string(s.sub)},
            {"host", shelf_ref(snap, s.host)},
            {"items", std::move(items)}};
  if (s.closer) {
    j["closer"] = {{"kind", s.closer->kind == ShelfItem::Kind::square ? "square" : "column"},
                   {"extent", s.closer->extent},
                   {"free_limit", s.closer->free_limit},
                   {"square_id", s.closer->square_id}};
  }
  return j;
}

json to_json(const Event& e, const Snapshot& snap) {
  return {{"seq", e.seq},
          {"kind", to_string(e.kind)},
          {"square",
           {{"id", e.square_id}, {"height", e.square_height}, {"class", class_json(e.square_class)}}},
          {"rect", e.rect ? to_json(*e.rect) : json(nullptr)},
          {"shelf_id", shelf_ref(snap, e.shelf_id)},
          {"reason", e.reason.empty() ? json(nullptr) : json(e.reason)}};
}

json to_json(const Snapshot& snap) {
  json placements = json::array();
  for (const auto& sq : snap.placements) placements.push_back(placement_record(sq, snap));
  json shelves = json::array();
  for (const auto& s : snap.shelves) shelves.push_back(to_json(s, snap));
  json open = json::object();
  for (const auto& [k, id] : snap.open_column) open["c" + std::to_string(k)] = snap.shelf(id).name;
  json j = {{"placements", std::move(placements)},
            {"shelves", std::move(shelves)},
            {"cumulative_area", snap.cumulative_area},
            {"budget", snap.config.budget},
            {"enforce_budget", snap.config.enforce_budget},
            {"medium_phase", to_string(snap.medium_phase)},
            {"small_phase", to_string(snap.small_phase)},
            {"medium_bottom_left", snap.medium_bottom_left},
            {"medium_top_left", snap.medium_top_left},
            {"open_columns", std::move(open)},
            {"large", snap.large ? json(snap.placements[*snap.large].id) : json(nullptr)}};
  if (snap.pair_close) {
    j["pair_close"] = {
        {"square_id", snap.pair_close->square_id},
        {"closer_kind", snap.pair_close->closer_kind == ShelfItem::Kind::square ? "square" : "column"},
        {"closer_extent", snap.pair_close->closer_extent}};
  } else {
    j["pair_close"] = nullptr;
  }
  return j;
}

json to_json(const AuditReport& rep) {
  json v = json::array();
  for (const auto& viol : rep.violations) {
    v.push_back({{"rule", viol.rule}, {"detail", viol.detail}, {"ids", viol.ids}});
  }
  json stats = json::object();
  for (const auto& [k, val] : rep.stats) stats[k] = val;
  return {{"passed", rep.passed()}, {"violations", std::move(v)}, {"stats", std::move(stats)}};
}

json placement_record(const PlacedSquare& sq, const Snapshot& snap) {
  return {{"id", sq.id},
          {"height", sq.height},
          {"class", sq.size_class.name()},
          {"x", sq.x},
          {"y", sq.y},
          {"shelf_id", shelf_ref(snap, sq.shelf_id)}};
}

json rejection_record(std::size_t id, double height, const Rejection& r) {
  json cls = nullptr;
  try {
    cls = classify(height).name();
  } catch (const InvalidHeight&) {
  }
  return {{"id", id},
          {"height", height},
          {"class", cls},
          {"status", "rejected"},
          {"reason", to_string(r.reason)},
          {"detail", r.detail}};
}

std::string placement_log(const Snapshot& snap) {
  std::string out;
  for (const auto& sq : snap.placements) {
    out += placement_record(sq, snap).dump();
    out += '\n';
  }
  return out;
}

}  // namespace squarepack
