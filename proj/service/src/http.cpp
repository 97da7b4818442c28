#include "vircis/service/http.hpp"

#include <httplib.h>

#include <functional>

#include "vircis/error.hpp"
#include "vircis/service/service.hpp"

namespace vircis::service {
namespace {

void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ApiError& e) {
  res.status = http_status(e.code());
  res.set_content(error_body(e).dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  const auto type = req.get_header_value("Content-Type");
  if (!type.empty() && type.find("application/json") == std::string::npos) {
    throw ApiError(ApiErrorCode::unsupported_media, "expected application/json, got " + type);
  }
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw ApiError(ApiErrorCode::bad_input, "body is not a JSON object");
  return body;
}

using Handler = std::function<ApiResponse(const httplib::Request&)>;

httplib::Server::Handler guarded(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      send(res, handler(req));
    } catch (const ApiError& e) {
      send_error(res, e);
    } catch (const Error& e) {
      send_error(res, to_api_error(e));
    } catch (const std::exception& e) {
      send_error(res, ApiError(ApiErrorCode::internal, e.what()));
    }
  };
}

ApiResponse query(Service& service, const httplib::Request& req) {
  const std::string id = req.matches[1];
  if (req.is_multipart_form_data()) {
    if (!req.has_file("audio")) throw ApiError(ApiErrorCode::bad_input, "multipart query needs an 'audio' part");
    const auto audio = req.get_file_value("audio");
    const std::string collaborator = req.has_file("collaborator_id") ? req.get_file_value("collaborator_id").content : "";
    if (!audio.content_type.empty() && audio.content_type.find("wav") == std::string::npos &&
        audio.content_type != "application/octet-stream") {
      throw ApiError(ApiErrorCode::unsupported_media, "audio part must be audio/wav, got " + audio.content_type);
    }
    return service.audio_query(id, collaborator, audio.content);
  }
  return service.text_query(id, parse_body(req));
}

}  // namespace

void mount(httplib::Server& server, Service& service, std::string cors_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  server.Post("/sessions", guarded([&service](const httplib::Request& req) {
                return service.create_session(parse_body(req));
              }));
  server.Get(R"(/sessions/([^/]+))", guarded([&service](const httplib::Request& req) {
               return service.get_session(req.matches[1]);
             }));
  server.Post(R"(/sessions/([^/]+)/collaborators)", guarded([&service](const httplib::Request& req) {
                return service.join(req.matches[1], parse_body(req));
              }));
  server.Post(R"(/sessions/([^/]+)/queries)",
              guarded([&service](const httplib::Request& req) { return query(service, req); }));
  server.Post(R"(/sessions/([^/]+)/judgments)", guarded([&service](const httplib::Request& req) {
                return service.judge(req.matches[1], parse_body(req));
              }));
  server.Get(R"(/sessions/([^/]+)/split)", guarded([&service](const httplib::Request& req) {
               return service.split(req.matches[1]);
             }));
}

bool run_server(Service& service, const std::string& host, int port) {
  httplib::Server server;
  mount(server, service);
  return server.listen(host, port);
}

}  // namespace vircis::service
