#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "mineplanner/session.hpp"

namespace mineplanner {

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Routes one HTTP request against the store:
///   POST   /sessions               task YAML in the body -> 201 {v, session, state}
///   GET    /sessions/{id}/state    current StateMessage
///   GET    /sessions/{id}/plan     exported canonical plan
///   POST   /sessions/{id}/commands one command message -> StateMessage
///   DELETE /sessions/{id}
/// Anything else is 404 unless a static directory serves it.
HttpReply route_http(SessionStore& store, std::string_view method, std::string_view target, std::string_view body,
                     const std::optional<std::filesystem::path>& static_dir = std::nullopt);

/// Reply to one WebSocket text frame on `/session/{id}`.
std::string route_socket_message(SessionStore& store, const std::string& session_id, std::string_view text);

struct PlayServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;
};

/// HTTP plus WebSocket (`/session/{id}`) front end for a SessionStore. Binds on
/// construction; one thread per connection.
class PlayServer {
 public:
  PlayServer(SessionStore& store, PlayServerOptions options);
  ~PlayServer();
  PlayServer(const PlayServer&) = delete;
  PlayServer& operator=(const PlayServer&) = delete;

  unsigned short port() const;
  /// Blocks until stop().
  void run();
  /// run() on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mineplanner
