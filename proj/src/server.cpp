#include "dnav/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "dnav/error.hpp"

namespace dnav::protocol {

void serve_stream(std::istream& in, std::ostream& out, Connection& connection) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out << connection.handle_line(line) << '\n' << std::flush;
        if (connection.shutdown_requested()) return;
    }
}

namespace {

[[noreturn]] void io_error(const std::string& what) {
    throw Error(ErrorCode::IoError, what + ": " + std::strerror(errno));
}

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        const auto n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

}  // namespace

TcpServer::TcpServer(std::uint16_t port, std::shared_ptr<GraphCache> cache,
                     std::optional<std::filesystem::path> default_graph)
    : cache_(std::move(cache)), default_graph_(std::move(default_graph)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) io_error("socket");
    int yes = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        ::close(listen_fd_);
        io_error("bind 127.0.0.1:" + std::to_string(port));
    }
    if (::listen(listen_fd_, 16) < 0) {
        ::close(listen_fd_);
        io_error("listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
    stop();
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::stop() {
    if (stopping_.exchange(true)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    std::lock_guard lock(clients_mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::run() {
    while (!stopping_) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (errno == EINTR) continue;
            break;
        }
        {
            std::lock_guard lock(clients_mutex_);
            if (stopping_) {
                ::close(fd);
                break;
            }
            client_fds_.insert(fd);
        }
        threads_.emplace_back(&TcpServer::serve_client, this, fd);
    }
    for (auto& t : threads_) {
        if (t.joinable()) t.join();
    }
    threads_.clear();
}

void TcpServer::serve_client(int fd) {
    Connection connection(cache_, default_graph_);
    std::string buffer;
    char chunk[4096];
    bool open = true;
    while (open && !connection.shutdown_requested()) {
        const auto n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (auto nl = buffer.find('\n', start); nl != std::string::npos; nl = buffer.find('\n', start)) {
            std::string_view line(buffer.data() + start, nl - start);
            start = nl + 1;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
            if (!send_all(fd, connection.handle_line(line) + "\n")) {
                open = false;
                break;
            }
            if (connection.shutdown_requested()) break;
        }
        buffer.erase(0, start);
    }
    {
        std::lock_guard lock(clients_mutex_);
        client_fds_.erase(fd);
    }
    ::close(fd);
    if (connection.shutdown_requested()) stop();
}

}  // namespace dnav::protocol
