#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "squarepack/session.hpp"

namespace httplib {
class Server;
}

namespace squarepack {

/// HTTP front end for the session protocol.
///
///   POST /place {"height": h}   GET /state   POST /reset   POST /undo
///
/// Sessions are keyed by the X-Session-Id header (or ?session=), defaulting
/// to "default". Requests for one session are serialized; distinct sessions
/// are independent packers. CORS is open so a browser client can attach.
class HttpServer {
 public:
  explicit HttpServer(PackerConfig config = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free port). Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a successful bind().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Slot {
    std::mutex mu;
    Session session;
    explicit Slot(PackerConfig c) : session(c) {}
  };
  Slot& slot(const std::string& key);

  PackerConfig config_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex sessions_mu_;
  std::map<std::string, std::unique_ptr<Slot>> sessions_;
};

}  // namespace squarepack
