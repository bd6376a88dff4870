#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "dnav/protocol.hpp"

namespace dnav::protocol {

/// Reads request lines from `in` and writes one response line per request to
/// `out`, flushing after each. Returns on EOF or after a shutdown request.
void serve_stream(std::istream& in, std::ostream& out, Connection& connection);

/// Newline-delimited JSON over TCP, bound to 127.0.0.1. One thread and one
/// Connection per client; a shutdown request from any client stops the server.
class TcpServer {
   public:
    /// Port 0 picks a free port. Throws Error(IoError) if binding fails.
    TcpServer(std::uint16_t port, std::shared_ptr<GraphCache> cache,
              std::optional<std::filesystem::path> default_graph = {});
    ~TcpServer();
    TcpServer(const TcpServer&) = delete;
    TcpServer& operator=(const TcpServer&) = delete;

    std::uint16_t port() const noexcept { return port_; }
    /// Accepts clients until stop() or a shutdown request.
    void run();
    void stop();

   private:
    void serve_client(int fd);

    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::shared_ptr<GraphCache> cache_;
    std::optional<std::filesystem::path> default_graph_;
    std::atomic<bool> stopping_{false};
    std::mutex clients_mutex_;
    std::set<int> client_fds_;
    std::vector<std::thread> threads_;
};

}  // namespace dnav::protocol
