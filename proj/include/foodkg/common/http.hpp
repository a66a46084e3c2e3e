// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace foodkg {

/// "http://localhost:11434/api/chat" -> {"http://localhost:11434", "/api/chat"}.
struct HttpEndpoint {
    std::string origin;
    std::string path;
};

/// Throws InvalidArgumentError for anything that is not http(s)://host[:port][/path].
HttpEndpoint parse_http_endpoint(std::string_view url);

} // namespace foodkg
