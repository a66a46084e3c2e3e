// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace foodkg {

/// Reads a whole file. Throws ParseError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temp file and renames, so readers never see a
/// half-written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

} // namespace foodkg
