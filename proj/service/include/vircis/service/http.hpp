#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace vircis::service {

class Service;

/// Registers every endpoint of service on server, plus CORS headers and
/// GET /health. The Service must outlive the server.
void mount(httplib::Server& server, Service& service, std::string cors_origin = "*");

/// Blocking: binds host:port and serves until the process is stopped.
/// Returns false when binding fails.
bool run_server(Service& service, const std::string& host, int port);

}  // namespace vircis::service
