// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace foodkg {

/// Shared "foodkg" logger. Created on first use with a stderr sink.
std::shared_ptr<spdlog::logger> logger();

} // namespace foodkg
