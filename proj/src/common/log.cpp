// SPDX-License-Identifier: Apache-2.0

#include "foodkg/common/log.hpp"

#include <mutex>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace foodkg {

std::shared_ptr<spdlog::logger> logger()
{
    static std::once_flag once;
    static std::shared_ptr<spdlog::logger> instance;
    std::call_once(once, [] {
        instance = spdlog::get("foodkg");
        if (!instance)
            instance = spdlog::stderr_color_mt("foodkg");
    });
    return instance;
}

} // namespace foodkg
