#pragma once

#include <string>

#include "kgconv/jsonl.hpp"

namespace kgconv::http {

// POSTs body as JSON to an http://host[:port]/path URL and parses the JSON
// reply. Throws ServiceError with kind "service_unreachable" (connection
// failure or non-2xx status) or "malformed_response" (body is not JSON).
Json post_json(const std::string& url, const Json& body, int timeout_seconds = 30);

}  // namespace kgconv::http
