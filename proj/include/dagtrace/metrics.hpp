#pragma once

#include <cstdint>

namespace dagtrace {

enum class AssertLevel {
    Off,           // no run-time invariant checks
    Decomposition, // value-decomposition and base-case target checks
    Full,          // additionally check the buffer bound at every step
};

// Live-word accounting: an abstract tape-cell measure is unobservable, so
// peak_live_words counts a concrete proxy, updated as containers grow and
// shrink: one word per stored semiring value (frontier buffers, boundary
// maps, prefix/suffix candidate maps, base-case tables) plus kFrameWords
// per live recursion frame.
class SpaceMeter {
public:
    void add(std::int64_t words) {
        current_ += words;
        if (current_ > peak_) peak_ = current_;
    }
    void sub(std::int64_t words) { current_ -= words; }

    std::int64_t current() const { return current_; }
    std::int64_t peak() const { return peak_; }

private:
    std::int64_t current_ = 0;
    std::int64_t peak_ = 0;
};

struct RunMetrics {
    std::int64_t peak_live_words = 0;
    int max_recursion_depth = 0;
    std::int64_t forward_pass_count = 0;
    std::int64_t vertex_visit_count = 0;
    // The root boundary holds one word per source; reported separately so
    // wide-source instances can be judged against the width-driven terms.
    std::int64_t root_boundary_words = 0;
};

// Words charged per recursion frame (interval endpoints, target, value).
inline constexpr std::int64_t kFrameWords = 4;

// Smallest d with 2^d >= n (n >= 1).
inline int ceil_log2(std::int64_t n) {
    int d = 0;
    std::int64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++d;
    }
    return d;
}

} // namespace dagtrace
