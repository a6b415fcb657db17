#include <gtest/gtest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "mineplanner/plan_io.hpp"
#include "mineplanner/play_server.hpp"
#include "mineplanner/simulator.hpp"
#include "support.hpp"

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using namespace mineplanner;

namespace {

const char* kCorridor = R"(name: corridor
goal:
  agent:
    - position: {x: 0, y: 4, z: -3}
)";

struct Client {
  net::io_context ioc;
  unsigned short port;
  explicit Client(unsigned short p) : port(p) {}

  http::response<http::string_body> request(http::verb verb, const std::string& target, const std::string& body = "") {
    tcp::socket sock(ioc);
    sock.connect({net::ip::make_address("127.0.0.1"), port});
    http::request<http::string_body> req{verb, target, 11};
    req.set(http::field::host, "127.0.0.1");
    req.body() = body;
    req.prepare_payload();
    http::write(sock, req);
    beast::flat_buffer buf;
    http::response<http::string_body> res;
    http::read(sock, buf, res);
    beast::error_code ec;
    sock.shutdown(tcp::socket::shutdown_both, ec);
    return res;
  }
};

}  // namespace

TEST(Routes, Basics) {
  SessionStore store;
  auto r = route_http(store, "POST", "/sessions", kCorridor);
  ASSERT_EQ(r.status, 201) << r.body;
  const auto id = nlohmann::json::parse(r.body)["session"].get<std::string>();
  r = route_http(store, "GET", "/sessions/" + id + "/state", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(nlohmann::json::parse(r.body)["trace_length"], 0);
  r = route_http(store, "POST", "/sessions/" + id + "/commands", R"({"v":1,"command":"move-north","seq":4})");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(nlohmann::json::parse(r.body)["seq"], 4);
  r = route_http(store, "POST", "/sessions/" + id + "/commands", "{not json");
  EXPECT_EQ(r.status, 400);
  r = route_http(store, "GET", "/sessions/" + id + "/plan", "");
  EXPECT_EQ(r.content_type, "text/plain");
  EXPECT_EQ(r.body.rfind("(move-north ag0)\n", 0), 0u);
  EXPECT_EQ(route_http(store, "GET", "/sessions/zzz/state", "").status, 404);
  EXPECT_EQ(route_http(store, "PUT", "/sessions", "").status, 405);
  EXPECT_EQ(route_http(store, "GET", "/nowhere", "").status, 404);
  EXPECT_EQ(route_http(store, "GET", "/health", "").status, 200);
  EXPECT_EQ(route_http(store, "DELETE", "/sessions/" + id, "").status, 204);
  EXPECT_EQ(route_http(store, "DELETE", "/sessions/" + id, "").status, 404);
}

TEST(Routes, InvalidTask) {
  SessionStore store;
  const auto r = route_http(store, "POST", "/sessions", "name: empty\n");
  EXPECT_EQ(r.status, 400);
  const auto j = nlohmann::json::parse(r.body);
  EXPECT_EQ(j["error"], "invalid-task");
  EXPECT_FALSE(j["violations"].empty());
}

TEST(Routes, StaticFiles) {
  mptest::TempDir dir;
  mptest::write_file(dir.path() / "index.html", "<html></html>");
  SessionStore store;
  auto r = route_http(store, "GET", "/", "", dir.path());
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.content_type, "text/html");
  EXPECT_EQ(route_http(store, "GET", "/../etc/passwd", "", dir.path()).status, 404);
}

TEST(Routes, SocketMessages) {
  SessionStore store;
  const auto id = store.start_from_yaml(kCorridor).id;
  auto j = nlohmann::json::parse(route_socket_message(store, id, R"({"v":1,"type":"command","command":"move-north","seq":1})"));
  EXPECT_EQ(j["type"], "state");
  EXPECT_EQ(j["last"]["accepted"], true);
  j = nlohmann::json::parse(route_socket_message(store, id, R"({"v":1,"command":"fly-north","seq":2})"));
  EXPECT_EQ(j["type"], "error");
  EXPECT_EQ(j["error"], "protocol");
  EXPECT_EQ(j["seq"], 2);
  j = nlohmann::json::parse(route_socket_message(store, id, "garbage"));
  EXPECT_EQ(j["error"], "protocol");
  j = nlohmann::json::parse(route_socket_message(store, "missing", R"({"v":1,"command":"move-north"})"));
  EXPECT_EQ(j["error"], "not-found");
}

TEST(Server, HttpAndWebSocketSession) {
  SessionStore store;
  PlayServer server(store, {"127.0.0.1", 0, std::nullopt});
  server.start();
  Client c(server.port());

  auto res = c.request(http::verb::post, "/sessions", kCorridor);
  ASSERT_EQ(res.result_int(), 201) << res.body();
  const auto id = nlohmann::json::parse(res.body())["session"].get<std::string>();

  websocket::stream<tcp::socket> ws(c.ioc);
  ws.next_layer().connect({net::ip::make_address("127.0.0.1"), server.port()});
  ws.handshake("127.0.0.1", "/session/" + id);
  auto send = [&](const nlohmann::json& m) {
    ws.write(net::buffer(m.dump()));
    beast::flat_buffer buf;
    ws.read(buf);
    return nlohmann::json::parse(beast::buffers_to_string(buf.data()));
  };
  auto m = send({{"v", 1}, {"command", "move-east"}, {"seq", 1}});
  EXPECT_EQ(m["seq"], 1);
  EXPECT_EQ(m["last"]["accepted"], true);
  m = send({{"v", 1}, {"command", "jumpdown-north"}, {"seq", 2}});
  EXPECT_EQ(m["last"]["accepted"], false);
  EXPECT_EQ(m["last"]["reason"], "no-support");
  m = send({{"v", 1}, {"command", "move-west"}, {"seq", 3}});
  for (int i = 0; i < 3; ++i) m = send({{"v", 1}, {"command", "move-north"}, {"seq", 4 + i}});
  EXPECT_EQ(m["goal_satisfied"], true);
  EXPECT_EQ(m["seq"], 6);
  ws.close(websocket::close_code::normal);

  res = c.request(http::verb::get, "/sessions/" + id + "/plan");
  ASSERT_EQ(res.result_int(), 200);
  const auto plan = parse_plan(res.body(), PlanDialect::Canonical);
  EXPECT_EQ(plan.actions.size(), 5u);
  const auto t = parse_task(kCorridor);
  EXPECT_TRUE(run_plan(build_initial_world(t), plan.actions, t.goal).verified());

  res = c.request(http::verb::post, "/sessions", "name: empty\n");
  EXPECT_EQ(res.result_int(), 400);
  res = c.request(http::verb::get, "/sessions/unknown/state");
  EXPECT_EQ(res.result_int(), 404);

  websocket::stream<tcp::socket> bad(c.ioc);
  bad.next_layer().connect({net::ip::make_address("127.0.0.1"), server.port()});
  beast::error_code ec;
  bad.handshake("127.0.0.1", "/session/unknown", ec);
  EXPECT_TRUE(ec);
  server.stop();
}

TEST(Server, StopsWithOpenConnection) {
  SessionStore store;
  PlayServer server(store, {"127.0.0.1", 0, std::nullopt});
  server.start();
  net::io_context ioc;
  tcp::socket idle(ioc);
  idle.connect({net::ip::make_address("127.0.0.1"), server.port()});
  server.stop();
  SUCCEED();
}
