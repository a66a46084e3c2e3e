// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace foodkg {

/// Applies fn to every item with at most `max_in_flight` calls running at
/// once. Results come back in input order whatever the completion order.
/// After a failure no new items start; the exception of the lowest failing
/// index is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, std::size_t max_in_flight, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))>
{
    using R = decltype(fn(items.front()));
    std::vector<std::optional<R>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    const auto work = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size())
                return;
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
                failed.store(true);
            }
        }
    };
    const std::size_t workers = std::min(std::max<std::size_t>(max_in_flight, 1), items.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(items.size());
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace foodkg
