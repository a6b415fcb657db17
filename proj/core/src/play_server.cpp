#include "mineplanner/play_server.hpp"

#include <sys/socket.h>

#include <atomic>
#include <fstream>
#include <list>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace mineplanner {

namespace fs = std::filesystem;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

HttpReply json_reply(int status, const nlohmann::json& j) { return {status, "application/json", j.dump()}; }

HttpReply error_reply(int status, std::string_view code, std::string_view message) {
  return json_reply(status, {{"v", kProtocolVersion}, {"type", "error"}, {"error", code}, {"message", message}});
}

std::vector<std::string> split_path(std::string_view target) {
  if (const auto q = target.find('?'); q != std::string_view::npos) target = target.substr(0, q);
  std::vector<std::string> parts;
  std::string cur;
  for (char c : target) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::string_view mime_type(const fs::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

std::optional<HttpReply> serve_static(const fs::path& root, const std::vector<std::string>& parts) {
  fs::path rel;
  for (const auto& p : parts) {
    if (p == ".." || p == ".") return std::nullopt;
    rel /= p;
  }
  fs::path file = root / rel;
  if (fs::is_directory(file)) file /= "index.html";
  if (!fs::is_regular_file(file)) return std::nullopt;
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return HttpReply{200, std::string(mime_type(file)), ss.str()};
}

}  // namespace

HttpReply route_http(SessionStore& store, std::string_view method, std::string_view target, std::string_view body,
                     const std::optional<fs::path>& static_dir) {
  const auto parts = split_path(target);
  try {
    if (!parts.empty() && parts[0] == "sessions") {
      if (parts.size() == 1 && method == "POST") {
        auto started = store.start_from_yaml(body);
        return json_reply(201, {{"v", kProtocolVersion}, {"session", started.id}, {"state", started.state}});
      }
      if (parts.size() == 2 && method == "DELETE") {
        if (!store.close(parts[1])) return error_reply(404, "not-found", "no session '" + parts[1] + "'");
        return {204, "application/json", ""};
      }
      if (parts.size() == 3 && method == "GET" && parts[2] == "state") return json_reply(200, store.state(parts[1]));
      if (parts.size() == 3 && method == "GET" && parts[2] == "plan")
        return {200, "text/plain", store.export_trace(parts[1])};
      if (parts.size() == 3 && method == "POST" && parts[2] == "commands") {
        nlohmann::json m;
        try {
          m = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
          throw ProtocolError(std::string("bad JSON: ") + e.what());
        }
        return json_reply(200, store.handle(parts[1], m));
      }
      return error_reply(405, "method", "unsupported request");
    }
    if (parts.size() == 1 && parts[0] == "health" && method == "GET") return json_reply(200, {{"ok", true}});
  } catch (const TaskRejected& e) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : e.report().violations) v.push_back({{"code", x.code}, {"message", x.message}});
    return json_reply(400, {{"v", kProtocolVersion}, {"type", "error"}, {"error", "invalid-task"}, {"violations", v}});
  } catch (const NotFoundError& e) {
    return error_reply(404, "not-found", e.what());
  } catch (const ProtocolError& e) {
    return error_reply(400, "protocol", e.what());
  }
  if (static_dir && method == "GET")
    if (auto r = serve_static(*static_dir, parts)) return *r;
  return error_reply(404, "not-found", "no route for " + std::string(target));
}

std::string route_socket_message(SessionStore& store, const std::string& session_id, std::string_view text) {
  nlohmann::json m;
  std::optional<nlohmann::json> seq;
  try {
    m = nlohmann::json::parse(text);
    if (m.is_object() && m.contains("seq")) seq = m["seq"];
    return store.handle(session_id, m).dump();
  } catch (const nlohmann::json::exception& e) {
    return nlohmann::json{{"v", kProtocolVersion}, {"type", "error"}, {"error", "protocol"}, {"message", e.what()}, {"seq", nullptr}}
        .dump();
  } catch (const ProtocolError& e) {
    return nlohmann::json{{"v", kProtocolVersion}, {"type", "error"}, {"error", "protocol"}, {"message", e.what()},
                          {"seq", seq.value_or(nullptr)}}
        .dump();
  } catch (const NotFoundError& e) {
    return nlohmann::json{{"v", kProtocolVersion}, {"type", "error"}, {"error", "not-found"}, {"message", e.what()},
                          {"seq", seq.value_or(nullptr)}}
        .dump();
  }
}

struct PlayServer::Impl {
  SessionStore& store;
  PlayServerOptions options;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::atomic<bool> stopping{false};
  std::thread runner;
  std::mutex mu;
  std::list<std::thread> connections;
  std::list<int> open_fds;

  Impl(SessionStore& s, PlayServerOptions o)
      : store(s), options(std::move(o)), acceptor(ioc, tcp::endpoint(net::ip::make_address(options.address), options.port)) {}

  void serve_socket(tcp::socket socket, http::request<http::string_body> req, const std::string& id) {
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.accept(req);
    beast::flat_buffer buffer;
    for (;;) {
      beast::error_code ec;
      ws.read(buffer, ec);
      if (ec) return;
      const std::string text = beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      ws.text(true);
      ws.write(net::buffer(route_socket_message(store, id, text)), ec);
      if (ec) return;
    }
  }

  void serve(tcp::socket socket) {
    beast::flat_buffer buffer;
    for (;;) {
      beast::error_code ec;
      http::request<http::string_body> req;
      http::read(socket, buffer, req, ec);
      if (ec) return;
      const auto parts = split_path(std::string(req.target()));
      if (websocket::is_upgrade(req)) {
        if (parts.size() == 2 && parts[0] == "session") {
          try {
            store.state(parts[1]);
          } catch (const NotFoundError&) {
            http::response<http::string_body> res{http::status::not_found, req.version()};
            res.set(http::field::content_type, "application/json");
            res.body() = error_reply(404, "not-found", "no session '" + parts[1] + "'").body;
            res.prepare_payload();
            http::write(socket, res, ec);
            return;
          }
          try {
            serve_socket(std::move(socket), std::move(req), parts[1]);
          } catch (const beast::system_error&) {
          }
          return;
        }
      }
      HttpReply reply;
      if (req.method() == http::verb::options) {
        reply = {204, "text/plain", ""};
      } else {
        reply = route_http(store, std::string(req.method_string()), std::string(req.target()), req.body(),
                           options.static_dir);
      }
      http::response<http::string_body> res{static_cast<http::status>(reply.status), req.version()};
      res.set(http::field::content_type, reply.content_type);
      res.set(http::field::access_control_allow_origin, "*");
      res.set(http::field::access_control_allow_headers, "Content-Type");
      res.set(http::field::access_control_allow_methods, "GET, POST, DELETE, OPTIONS");
      res.keep_alive(req.keep_alive());
      res.body() = std::move(reply.body);
      res.prepare_payload();
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) return;
    }
  }

  void run() {
    while (!stopping) {
      tcp::socket socket(ioc);
      beast::error_code ec;
      acceptor.accept(socket, ec);
      if (ec) {
        if (stopping) break;
        continue;
      }
      std::lock_guard lock(mu);
      const int fd = socket.native_handle();
      open_fds.push_back(fd);
      auto fd_it = std::prev(open_fds.end());
      connections.emplace_back([this, s = std::move(socket), fd_it]() mutable {
        try {
          serve(std::move(s));
        } catch (const std::exception&) {
        }
        std::lock_guard l(mu);
        *fd_it = -1;
      });
    }
  }

  void stop() {
    if (stopping.exchange(true)) return;
    ::shutdown(acceptor.native_handle(), SHUT_RDWR);
    if (runner.joinable()) runner.join();
    {
      std::lock_guard lock(mu);
      for (int fd : open_fds)
        if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
    }
    for (auto& t : connections)
      if (t.joinable()) t.join();
    beast::error_code ec;
    acceptor.close(ec);
  }
};

PlayServer::PlayServer(SessionStore& store, PlayServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

PlayServer::~PlayServer() { stop(); }

unsigned short PlayServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void PlayServer::run() { impl_->run(); }

void PlayServer::start() {
  impl_->runner = std::thread([this] { impl_->run(); });
}

void PlayServer::stop() { impl_->stop(); }

}  // namespace mineplanner
