// SPDX-License-Identifier: Apache-2.0

#include "foodkg/common/http.hpp"

#include "foodkg/common/error.hpp"

namespace foodkg {

HttpEndpoint parse_http_endpoint(std::string_view url)
{
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos)
        throw InvalidArgumentError("endpoint needs a scheme: " + std::string(url));
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw InvalidArgumentError("unsupported scheme in " + std::string(url));
    const auto rest = url.substr(scheme_end + 3);
    const auto slash = rest.find('/');
    const auto host = rest.substr(0, slash);
    if (host.empty())
        throw InvalidArgumentError("endpoint has no host: " + std::string(url));
    HttpEndpoint ep;
    ep.origin = std::string(url.substr(0, scheme_end + 3)) + std::string(host);
    ep.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    return ep;
}

} // namespace foodkg
