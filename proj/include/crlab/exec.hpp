#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace crlab {

// Execution policy for searches.  Thread count never changes *what* is
// found, only how fast: parallel searches still return the least-index hit.
struct ExecPolicy {
    unsigned threads = 1;
};

// Least-index search over [0, n).  `fn` must be a pure function of its
// index; an engaged optional is a hit.  Runs sequentially for one thread,
// striped with an atomic frontier otherwise.  Exceptions replay exactly as
// in sequential order: whichever event (hit or throw) has the smallest
// index wins, so results are identical for any thread count.
template <typename R>
std::optional<std::pair<std::uint64_t, R>>
first_hit(std::uint64_t n, const std::function<std::optional<R>(std::uint64_t)>& fn,
          const ExecPolicy& policy) {
    unsigned threads = policy.threads == 0 ? 1 : policy.threads;
    if (threads == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i)
            if (auto r = fn(i)) return std::make_pair(i, std::move(*r));
        return std::nullopt;
    }

    struct Event {
        std::optional<R> hit;
        std::exception_ptr error;
    };
    std::atomic<std::uint64_t> best{n};
    std::mutex mu;
    std::map<std::uint64_t, Event> events;

    auto worker = [&](unsigned w) {
        for (std::uint64_t i = w; i < n; i += threads) {
            if (i >= best.load(std::memory_order_acquire)) continue;
            Event ev;
            try {
                ev.hit = fn(i);
            } catch (...) {
                ev.error = std::current_exception();
            }
            if (!ev.hit && !ev.error) continue;
            std::uint64_t cur = best.load(std::memory_order_acquire);
            while (i < cur &&
                   !best.compare_exchange_weak(cur, i, std::memory_order_acq_rel)) {
            }
            std::lock_guard<std::mutex> lock(mu);
            events.emplace(i, std::move(ev));
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();

    std::uint64_t winner = best.load(std::memory_order_acquire);
    if (winner >= n) return std::nullopt;
    auto it = events.find(winner);
    if (it->second.error) std::rethrow_exception(it->second.error);
    return std::make_pair(winner, std::move(*it->second.hit));
}

} // namespace crlab
