#include "kgconv/http_client.hpp"

#include "httplib.h"
#include "kgconv/error.hpp"

namespace kgconv::http {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ServiceError("service_unreachable", "not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

Json post_json(const std::string& url, const Json& body, int timeout_seconds) {
  const Endpoint ep = split_url(url);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  auto res = client.Post(ep.path, body.dump(), "application/json");
  if (!res) {
    throw ServiceError("service_unreachable",
                       url + ": " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServiceError("service_unreachable", url + ": HTTP " + std::to_string(res->status));
  }
  try {
    return Json::parse(res->body);
  } catch (const Json::parse_error& e) {
    throw ServiceError("malformed_response", url + ": " + e.what());
  }
}

}  // namespace kgconv::http
