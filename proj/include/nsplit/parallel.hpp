#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace nsplit {

/// Runs per_trial(index, state) for every index in [0, trials), split across
/// worker threads, then merges the per-worker states in worker order. Each
/// trial must depend only on its index (take RNG streams from it), and the
/// merge must be commutative integer accumulation; the result is then
/// identical for every thread count. An exception raised by any trial is
/// rethrown here (lowest worker index wins).
template <class State, class PerTrial, class Merge>
State parallel_trials(std::int64_t trials, int threads, State init, PerTrial per_trial,
                      Merge merge) {
    if (threads < 1) threads = 1;
    const int workers = static_cast<int>(std::clamp<std::int64_t>(trials, 1, threads));
    if (workers == 1) {
        State s = std::move(init);
        for (std::int64_t i = 0; i < trials; ++i) per_trial(i, s);
        return s;
    }
    std::vector<State> states(static_cast<std::size_t>(workers), init);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::int64_t lo = w * chunk;
                const std::int64_t hi = std::min<std::int64_t>(trials, lo + chunk);
                for (std::int64_t i = lo; i < hi; ++i)
                    per_trial(i, states[static_cast<std::size_t>(w)]);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    for (int w = 1; w < workers; ++w) merge(states[0], states[static_cast<std::size_t>(w)]);
    return states[0];
}

} // namespace nsplit
