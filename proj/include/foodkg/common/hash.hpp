// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace foodkg {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

} // namespace foodkg
