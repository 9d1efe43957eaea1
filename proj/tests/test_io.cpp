#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "squarepack/generators.hpp"
#include "squarepack/http_server.hpp"
#include "squarepack/serialize.hpp"
#include "squarepack/session.hpp"
#include "squarepack/svg.hpp"

using namespace squarepack;

TEST(ParseDecimal, PlainDecimalsOnly) {
  EXPECT_EQ(parse_decimal("0.3"), 0.3);
  EXPECT_EQ(parse_decimal(" 1 "), 1.0);
  EXPECT_EQ(parse_decimal("0.123456789012"), 0.123456789012);
  EXPECT_EQ(parse_decimal("0.0576875"), 0.0576875);
  for (const char* bad : {"1e-3", "-0.1", "+0.1", "0.1234567890123", "", ".", "1.", "0x1p-2",
                          "0.1.2", "nan", "inf", "0,5"}) {
    EXPECT_THROW(parse_decimal(bad), ParseError) << bad;
  }
}

TEST(ParseHeights, LinesAndArrays) {
  EXPECT_EQ(parse_heights("0.6\n0.3\n0.2"), (std::vector<double>{0.6, 0.3, 0.2}));
  EXPECT_EQ(parse_heights("# header\n\n0.6\r\n  0.3  \n"), (std::vector<double>{0.6, 0.3}));
  EXPECT_EQ(parse_heights("[0.6, 0.3,0.2]"), (std::vector<double>{0.6, 0.3, 0.2}));
  EXPECT_TRUE(parse_heights("[]").empty());
  EXPECT_TRUE(parse_heights("").empty());
  EXPECT_THROW(parse_heights("[0.6, 1e-3]"), ParseError);
  EXPECT_THROW(parse_heights("[0.6, 0.3"), ParseError);
  EXPECT_THROW(parse_heights("0.6\nabc\n"), ParseError);
}

TEST(Records, PlacementAndRejectionSchemas) {
  Packer p;
  const auto a = p.place(0.6);
  const auto b = p.place(0.2);
  const json ra = placement_record(a.square(), p.state());
  EXPECT_EQ(ra, json::parse(R"({"id":0,"height":0.6,"class":"large","x":0.4,"y":0.4,"shelf_id":null})"));
  const json rb = placement_record(b.square(), p.state());
  EXPECT_EQ(rb["shelf_id"], "b0");
  EXPECT_EQ(rb["class"], "c0");
  const auto c = p.place(0.7);
  const json rc = rejection_record(2, 0.7, c.rejection());
  EXPECT_EQ(rc["status"], "rejected");
  EXPECT_EQ(rc["reason"], "no_fit");
  EXPECT_EQ(rc["class"], "large");
}

TEST(Records, PlacementLogIsOneObjectPerLine) {
  Packer p;
  for (double h : {0.6, 0.3, 0.2}) p.place(h);
  const std::string log = placement_log(p.state());
  std::size_t lines = 0;
  std::size_t pos = 0;
  while ((pos = log.find('\n', pos)) != std::string::npos) ++lines, ++pos;
  EXPECT_EQ(lines, 3u);
  EXPECT_EQ(log.back(), '\n');
}

TEST(SnapshotJson, CarriesShelvesAndPhases) {
  Packer p;
  for (double h : {0.3, 0.2, 0.1}) p.place(h);
  const json j = to_json(p.state());
  EXPECT_EQ(j["placements"].size(), 3u);
  EXPECT_GE(j["shelves"].size(), 8u);
  EXPECT_EQ(j["medium_phase"], "bottom");
  EXPECT_EQ(j["small_phase"], "buffer_b0");
  EXPECT_NEAR(j["cumulative_area"].get<double>(), 0.14, 1e-12);
  const json& p1 = j["shelves"][0];
  EXPECT_EQ(p1["id"], "p1");
  EXPECT_EQ(p1["state"], "open");
  EXPECT_TRUE(p1.contains("rect"));
  EXPECT_TRUE(p1.contains("used"));
}

TEST(EventJson, Schema) {
  Packer p;
  p.place(0.2);
  p.place(0.7);
  p.place(0.6);
  const auto& ev = p.state().events;
  const json placed = to_json(ev.front(), p.state());
  EXPECT_EQ(placed["kind"], "placed");
  EXPECT_EQ(placed["square"]["class"], "c0");
  EXPECT_EQ(placed["shelf_id"], "b0");
  const json rejected = to_json(ev.back(), p.state());
  EXPECT_EQ(rejected["kind"], "rejected");
  EXPECT_EQ(rejected["rect"], nullptr);
  EXPECT_NE(rejected["reason"].get<std::string>().find("no_fit"), std::string::npos);
}

TEST(AuditJson, ViolationsAndStats) {
  AuditReport rep;
  rep.add("overlap", "squares 0 and 1", {0, 1});
  rep.stats["total_area"] = 0.5;
  const json j = to_json(rep);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["violations"][0]["rule"], "overlap");
  EXPECT_EQ(j["stats"]["total_area"], 0.5);
}

TEST(Svg, OutlinesShelvesAndFillsSquares) {
  Packer p;
  for (double h : {0.6, 0.3, 0.2, 0.1}) p.place(h);
  const std::string svg = render_svg(p.state(), 400);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t rects = 0;
  for (std::size_t pos = 0; (pos = svg.find("<rect", pos)) != std::string::npos; ++pos) ++rects;
  EXPECT_GE(rects, 1 + 4 + p.state().shelves.size() + 1);
  EXPECT_NE(svg.find(">p4<"), std::string::npos);
}

TEST(Session, PlaceStateResetUndo) {
  Session s;
  const json a = s.handle_line(R"({"op":"place","height":0.3})");
  EXPECT_EQ(a["status"], "placed");
  EXPECT_EQ(a["rect"], json::parse(R"({"x":0.7,"y":0.0,"w":0.3,"h":0.3})"));
  EXPECT_EQ(a["class"], "medium");
  EXPECT_EQ(a["seq"], 0);
  EXPECT_NEAR(a["cumulative_area"].get<double>(), 0.09, 1e-15);
  EXPECT_NEAR(a["budget_remaining"].get<double>(), 0.285, 1e-15);

  const json b = s.handle_line(R"({"op":"place","height":2})");
  EXPECT_EQ(b["status"], "rejected");
  EXPECT_EQ(b["reason"], "invalid_height");

  const json c = s.handle_line(R"({"op":"place","height":"0.2"})");
  EXPECT_EQ(c["shelf_id"], "b0");

  const json st = s.handle_line(R"({"op":"state"})");
  EXPECT_EQ(st["status"], "ok");
  EXPECT_EQ(st["snapshot"]["placements"].size(), 2u);
  EXPECT_EQ(st["snapshot"]["medium_phase"], "bottom");

  const json u = s.handle_line(R"({"op":"undo"})");
  EXPECT_EQ(u["reason"], "undo_unsupported");
  EXPECT_EQ(s.packer().size(), 2u);

  const json r = s.handle_line(R"({"op":"reset"})");
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(s.packer().size(), 0u);
  EXPECT_EQ(r["seq"], 5);
}

TEST(Session, MalformedRequestsLeaveStateUnchanged) {
  Session s;
  s.handle_line(R"({"op":"place","height":0.3})");
  for (const char* bad : {"not json", "[1,2]", R"({"height":0.3})", R"({"op":"fly"})",
                          R"({"op":"place"})", R"({"op":"place","height":"1e-3"})",
                          R"({"op":"place","height":true})"}) {
    const json r = s.handle_line(bad);
    EXPECT_EQ(r["status"], "rejected") << bad;
    EXPECT_EQ(r["reason"], "parse_error") << bad;
  }
  EXPECT_EQ(s.packer().size(), 1u);
  EXPECT_NEAR(s.packer().cumulative_area(), 0.09, 1e-15);
}

TEST(Session, SequenceNumbersIncrease) {
  Session s;
  long last = -1;
  for (int i = 0; i < 20; ++i) {
    const json r = s.handle_line(i % 3 ? R"({"op":"place","height":0.05})" : "garbage");
    EXPECT_GT(r["seq"].get<long>(), last);
    last = r["seq"].get<long>();
  }
}

namespace {

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  HttpServer server_;
  int port_ = 0;
  std::thread thread_;
};

json post(httplib::Client& c, const std::string& path, const std::string& body,
          const std::string& session = "") {
  httplib::Headers h;
  if (!session.empty()) h.emplace("X-Session-Id", session);
  auto res = c.Post(path, h, body, "application/json");
  EXPECT_TRUE(res);
  if (!res) return nullptr;
  EXPECT_EQ(res->status, 200);
  return json::parse(res->body);
}

}  // namespace

TEST_F(HttpFixture, PlaceStateReset) {
  auto c = client();
  const json a = post(c, "/place", R"({"height":0.3})");
  EXPECT_EQ(a["status"], "placed");
  EXPECT_EQ(a["rect"], json::parse(R"({"x":0.7,"y":0.0,"w":0.3,"h":0.3})"));

  const json b = post(c, "/place", R"({"height":2})");
  EXPECT_EQ(b["reason"], "invalid_height");

  const json bad = post(c, "/place", "{{{");
  EXPECT_EQ(bad["reason"], "parse_error");

  auto st = c.Get("/state");
  ASSERT_TRUE(st);
  const json s = json::parse(st->body);
  EXPECT_EQ(s["snapshot"]["placements"].size(), 1u);
  EXPECT_TRUE(s["snapshot"].contains("shelves"));
  EXPECT_TRUE(s["snapshot"].contains("small_phase"));
  EXPECT_EQ(st->get_header_value("Access-Control-Allow-Origin"), "*");

  const json r = post(c, "/reset", "");
  EXPECT_EQ(r["status"], "ok");
  auto st2 = c.Get("/state");
  EXPECT_EQ(json::parse(st2->body)["snapshot"]["placements"].size(), 0u);
}

TEST_F(HttpFixture, SessionsAreIndependent) {
  auto c = client();
  post(c, "/place", R"({"height":0.3})", "alice");
  const json b = post(c, "/place", R"({"height":0.3})", "bob");
  EXPECT_EQ(b["rect"]["x"], 0.7);
  const json a2 = post(c, "/place", R"({"height":0.3})", "alice");
  EXPECT_NEAR(a2["rect"]["x"].get<double>(), 0.4, 1e-12);
  auto st = c.Get("/state?session=bob");
  EXPECT_EQ(json::parse(st->body)["snapshot"]["placements"].size(), 1u);
}

TEST_F(HttpFixture, PreflightAllowsBrowsers) {
  auto c = client();
  auto res = c.Options("/place");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_NE(res->get_header_value("Access-Control-Allow-Headers").find("X-Session-Id"),
            std::string::npos);
}

// A scripted 50-step session over HTTP matches direct library calls, and the
// reported cumulative area matches the library at every step.
TEST_F(HttpFixture, ProtocolFidelity) {
  SequenceSpec spec;
  spec.seed = 7;
  spec.distribution = Distribution::mixed;
  spec.overflow_retries = 200;
  std::vector<double> hs = generate(spec);
  hs.resize(std::min<std::size_t>(hs.size(), 47));
  hs.push_back(0.9);  // rejected
  hs.push_back(0.51);
  while (hs.size() < 50) hs.push_back(0.01);

  auto c = client();
  Packer lib;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto expected = lib.place(hs[i]);
    const json got = post(c, "/place", json{{"height", hs[i]}}.dump(), "fidelity");
    EXPECT_EQ(got["seq"], i);
    EXPECT_EQ(got["cumulative_area"].get<double>(), lib.cumulative_area()) << i;
    if (expected.placed()) {
      ASSERT_EQ(got["status"], "placed") << i;
      EXPECT_EQ(got["rect"], to_json(expected.square().rect())) << i;
      EXPECT_EQ(got["class"], expected.square().size_class.name());
      EXPECT_EQ(got["shelf_id"], placement_record(expected.square(), lib.state())["shelf_id"]);
    } else {
      ASSERT_EQ(got["status"], "rejected") << i;
      EXPECT_EQ(got["reason"], to_string(expected.rejection().reason));
    }
  }
  auto st = c.Get("/state?session=fidelity");
  EXPECT_EQ(json::parse(st->body)["snapshot"], to_json(lib.state()));
}
