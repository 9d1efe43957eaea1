#include "squarepack/http_server.hpp"

#include <httplib.h>

namespace squarepack {

namespace {

std::string session_key(const httplib::Request& req) {
  if (req.has_header("X-Session-Id")) return req.get_header_value("X-Session-Id");
  if (req.has_param("session")) return req.get_param_value("session");
  return "default";
}

void reply(httplib::Response& res, const json& body) {
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(PackerConfig config)
    : config_(config), server_(std::make_unique<httplib::Server>()) {
  auto route = [this](const char* op, bool with_body) {
    return [this, op, with_body](const httplib::Request& req, httplib::Response& res) {
      Slot& s = slot(session_key(req));
      std::lock_guard<std::mutex> lock(s.mu);
      if (!with_body) {
        reply(res, s.session.handle(json{{"op", op}}));
        return;
      }
      // The body carries the request fields; the route names the op.
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        reply(res, s.session.handle_line(req.body.empty() ? "null" : req.body));
        return;
      }
      body["op"] = op;
      reply(res, s.session.handle(body));
    };
  };
  server_->Post("/place", route("place", true));
  server_->Get("/state", route("state", false));
  server_->Post("/reset", route("reset", false));
  server_->Post("/undo", route("undo", false));
  server_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Session-Id");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

HttpServer::Slot& HttpServer::slot(const std::string& key) {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  auto& p = sessions_[key];
  if (!p) p = std::make_unique<Slot>(config_);
  return *p;
}

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace squarepack
