#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <thread>

#include "dnav/cli.hpp"
#include "dnav/protocol.hpp"
#include "dnav/server.hpp"
#include "support.hpp"

using namespace dnav;
using namespace dnav::protocol;
using nlohmann::json;

namespace {

const std::string kBar = testing::fixture("stacked_bar.json");

json request(int id, std::string op, json args = json::object()) {
    return {{"id", id}, {"op", std::move(op)}, {"args", std::move(args)}};
}

Connection started(const std::string& start = "BPL") {
    Connection c(std::make_shared<GraphCache>());
    REQUIRE(c.handle(request(1, "init", {{"graph", kBar}})).at("ok") == true);
    REQUIRE(c.handle(request(2, "enter", {{"node", start}})).at("ok") == true);
    return c;
}

std::string error_code(const json& response) {
    REQUIRE(response.at("ok") == false);
    return response.at("error").at("code").get<std::string>();
}

/// Minimal blocking line client.
class LineClient {
   public:
    explicit LineClient(std::uint16_t port) {
        fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        REQUIRE(::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    }
    ~LineClient() { ::close(fd_); }

    std::string call(const json& req) {
        const auto line = req.dump() + "\n";
        REQUIRE(::send(fd_, line.data(), line.size(), 0) == static_cast<ssize_t>(line.size()));
        for (;;) {
            const auto nl = buffer_.find('\n');
            if (nl != std::string::npos) {
                auto out = buffer_.substr(0, nl);
                buffer_.erase(0, nl + 1);
                return out;
            }
            char buf[4096];
            const auto n = ::recv(fd_, buf, sizeof buf, 0);
            REQUIRE(n > 0);
            buffer_.append(buf, static_cast<std::size_t>(n));
        }
    }

   private:
    int fd_ = -1;
    std::string buffer_;
};

}  // namespace

TEST_CASE("init reports the graph and session settings") {
    Connection c(std::make_shared<GraphCache>());
    auto r = c.handle(request(1, "init", {{"graph", kBar}, {"mode", "preRendered"}, {"verbosity", "terse"}}));
    CHECK(r.at("id") == 1);
    CHECK(r.at("ok") == true);
    const auto& res = r.at("result");
    CHECK(res.at("protocol") == kVersion);
    CHECK(res.at("entry") == "title");
    CHECK(res.at("nodes") == testing::raw(kBar).at("nodes").size());
    CHECK(res.at("mode") == "preRendered");
    CHECK(res.at("verbosity") == "terse");
    CHECK(error_code(c.handle(request(2, "init", {{"graph", kBar}, {"protocol", 2}}))) == "BadRequest");
    CHECK(error_code(c.handle(request(3, "init", {{"graph", "/no/such/graph.json"}}))) == "IoError");
}

TEST_CASE("input ArrowDown at BPL moves to FA Cup") {
    auto c = started();
    auto r = c.handle(request(3, "input", {{"token", "ArrowDown"}}));
    REQUIRE(r.at("ok") == true);
    const auto& res = r.at("result");
    CHECK(res.at("handled") == true);
    CHECK(res.at("move").at("status") == "moved");
    CHECK(res.at("move").at("from") == "BPL");
    CHECK(res.at("move").at("to") == "FA Cup");
    CHECK(res.at("plan").at("removals") == json{"BPL"});
    CHECK(res.at("plan").at("additions")[0].at("node") == "FA Cup");
    CHECK(res.at("description") == "FA Cup. Contest group. 2 of 3.");
}

TEST_CASE("spoken commands dispatch like keys") {
    auto c = started("BPL-Chelsea");
    auto r = c.handle(request(3, "command", {{"text", "Left"}}));
    CHECK(r.at("result").at("move").at("to") == "BPL-Arsenal");
    auto unbound = c.handle(request(4, "command", {{"text", "dance"}}));
    CHECK(unbound.at("result").at("handled") == false);
    CHECK(unbound.at("result").at("text") == "dance");
    auto key = c.handle(request(5, "input", {{"token", "KeyQ"}}));
    CHECK(key.at("result") == json{{"handled", false}, {"token", "KeyQ"}});
}

TEST_CASE("unknown rules fail without changing the session") {
    auto c = started();
    const auto before = c.session()->state;
    auto r = c.handle(request(3, "move", {{"rule", "warp"}}));
    CHECK(r.at("id") == 3);
    CHECK(error_code(r) == "UnknownRule");
    CHECK(c.session()->state == before);
    auto st = c.handle(request(4, "state"));
    CHECK(st.at("result").at("current") == "BPL");
}

TEST_CASE("blocked moves describe the unchanged node") {
    auto c = started("Arsenal");
    auto r = c.handle(request(3, "move", {{"rule", "left"}}));
    CHECK(r.at("result").at("move").at("status") == "blocked");
    CHECK(r.at("result").at("move").at("to").is_null());
    CHECK(r.at("result").at("plan").at("additions").empty());
    CHECK(r.at("result").at("description") == c.handle(request(4, "describe")).at("result").at("description"));
}

TEST_CASE("exit then further moves") {
    auto c = started();
    auto r = c.handle(request(3, "input", {{"token", "Escape"}}));
    CHECK(r.at("result").at("move").at("status") == "exited");
    CHECK(r.at("result").at("description").is_null());
    CHECK(r.at("result").at("plan").at("focus") == json{{"kind", "external"}, {"ref", "after-chart"}});
    CHECK(error_code(c.handle(request(4, "input", {{"token", "ArrowDown"}}))) == "InactiveSession");
    CHECK(c.handle(request(5, "state")).at("result").at("active") == false);
}

TEST_CASE("undo, describe and state") {
    auto c = started();
    c.handle(request(3, "input", {{"token", "ArrowDown"}}));
    auto st = c.handle(request(4, "state")).at("result");
    CHECK(st.at("depth") == 1);
    CHECK(st.at("previous") == json{"BPL"});
    auto u = c.handle(request(5, "undo"));
    CHECK(u.at("result").at("move").at("to") == "BPL");
    auto d = c.handle(request(6, "describe", {{"node", "CL"}, {"verbosity", "terse"}}));
    CHECK(d.at("result").at("description") == "CL");
    CHECK(error_code(c.handle(request(7, "describe", {{"node", "nope"}}))) == "DanglingEdgeRef");
}

TEST_CASE("malformed requests") {
    Connection c(std::make_shared<GraphCache>());
    auto bad = json::parse(c.handle_line("{not json"));
    CHECK(bad.at("id").is_null());
    CHECK(error_code(bad) == "BadRequest");
    CHECK(error_code(c.handle(json::array())) == "BadRequest");
    CHECK(error_code(c.handle(request(1, "fly"))) == "BadRequest");
    CHECK(error_code(c.handle(request(2, "move", {{"rule", "down"}}))) == "UnknownSession");
    c.handle(request(3, "init", {{"graph", kBar}}));
    CHECK(error_code(c.handle(request(4, "move", {{"rule", "down"}}))) == "InactiveSession");
    CHECK(error_code(c.handle(request(5, "move", {{"rule", 7}}))) == "BadRequest");
    auto line = c.handle_line(R"({"id":"x","op":"state"})");
    CHECK(line.find('\n') == std::string::npos);
    CHECK(json::parse(line).at("id") == "x");
}

TEST_CASE("bindings can be remapped at init") {
    Connection c(std::make_shared<GraphCache>());
    c.handle(request(1, "init", {{"graph", kBar}, {"bindings", {{"KeyJ", "down"}}}}));
    c.handle(request(2, "enter", {{"node", "BPL"}}));
    CHECK(c.handle(request(3, "input", {{"token", "KeyJ"}})).at("result").at("move").at("to") == "FA Cup");
}

TEST_CASE("connections keep separate sessions over one cached graph") {
    auto cache = std::make_shared<GraphCache>();
    Connection a(cache), b(cache);
    a.handle(request(1, "init", {{"graph", kBar}}));
    b.handle(request(1, "init", {{"graph", kBar}}));
    CHECK(a.session()->graph == b.session()->graph);
    a.handle(request(2, "enter", {{"node", "BPL"}}));
    b.handle(request(2, "enter", {{"node", "CL"}}));
    a.handle(request(3, "input", {{"token", "ArrowDown"}}));
    CHECK(a.session()->state->current() == "FA Cup");
    CHECK(b.session()->state->current() == "CL");
}

TEST_CASE("stdio stream serving matches the simulate transcript") {
    auto script = cli::script_from_json(testing::raw(testing::fixture("scripts/stacked_bar_contest_cycle.json")));
    auto sim = cli::simulate(script, kBar);
    std::string input;
    for (const auto& r : sim.requests) input += "\n" + r.dump() + "\r\n";
    std::istringstream in(input);
    std::ostringstream out;
    Connection c(std::make_shared<GraphCache>());
    serve_stream(in, out, c);
    CHECK(out.str() == cli::transcript(sim));
}

TEST_CASE("serve_stream stops after shutdown") {
    std::istringstream in(wire(request(1, "shutdown")) + "\n" + wire(request(2, "state")) + "\n");
    std::ostringstream out;
    Connection c(std::make_shared<GraphCache>());
    serve_stream(in, out, c);
    CHECK(out.str() == R"({"id":1,"ok":true,"result":{"stopping":true}})" "\n");
}

TEST_CASE("TCP server runs independent sessions per client") {
    TcpServer server(0, std::make_shared<GraphCache>(), kBar);
    REQUIRE(server.port() != 0);
    std::thread runner([&] { server.run(); });
    {
        LineClient a(server.port()), b(server.port());
        CHECK(json::parse(a.call(request(1, "init"))).at("ok") == true);
        CHECK(json::parse(b.call(request(1, "init"))).at("ok") == true);
        a.call(request(2, "enter", {{"node", "BPL"}}));
        b.call(request(2, "enter", {{"node", "Liverpool"}}));
        auto ra = json::parse(a.call(request(3, "input", {{"token", "ArrowDown"}})));
        auto rb = json::parse(b.call(request(3, "input", {{"token", "ArrowLeft"}})));
        CHECK(ra.at("result").at("move").at("to") == "FA Cup");
        CHECK(rb.at("result").at("move").at("to") == "Chelsea");
        CHECK(json::parse(a.call(request(4, "shutdown"))).at("result").at("stopping") == true);
    }
    runner.join();
}
