#pragma once

// Shared generators and shorthands for the test suites. All generators are
// seeded explicitly so every run sees the same cases.

#include <random>
#include <vector>

#include "locc/locc.hpp"

namespace testsupport {

using locc::rational;

template <class S>
locc::schmidt_vector<S> state(std::initializer_list<double> values) {
    std::vector<S> raw;
    for (double v : values) raw.push_back(locc::scalar_from_double<S>(v));
    return locc::make_state<S>(std::move(raw));
}

inline locc::schmidt_vector<rational> rstate(std::initializer_list<const char*> fracs) {
    std::vector<rational> raw;
    for (const char* f : fracs) raw.push_back(locc::rational_from_string(f));
    return locc::make_state<rational>(std::move(raw));
}

/// Random state with integer weights up to `denom`; exact in both backends.
template <class S, class G>
locc::schmidt_vector<S> random_state(G& gen, int d, int denom = 9999) {
    std::uniform_int_distribution<int> dist(1, denom);
    while (true) {
        std::vector<S> raw;
        for (int i = 0; i < d; ++i)
            raw.push_back(locc::scalar_from_ratio<S>(dist(gen), 1));
        try {
            return locc::make_state<S>(std::move(raw));
        } catch (const locc::error&) {
            // all-zero draw; retry
        }
    }
}

template <class S>
bool strictly_distinct(const locc::schmidt_vector<S>& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] < s[i - 1])) return false;
    return true;
}

/// Rejection-samples an incomparable pair of rank-d states.
template <class S, class G>
std::pair<locc::schmidt_vector<S>, locc::schmidt_vector<S>> random_incomparable_pair(
    G& gen, int d, int denom = 9999, bool distinct = false) {
    while (true) {
        auto x = random_state<S>(gen, d, denom);
        auto y = random_state<S>(gen, d, denom);
        if (distinct && (!strictly_distinct(x) || !strictly_distinct(y))) continue;
        if (x.rank() != static_cast<std::size_t>(d) || y.rank() != static_cast<std::size_t>(d))
            continue;
        if (locc::classify(x, y).incomparable()) return {x, y};
    }
}

}  // namespace testsupport
