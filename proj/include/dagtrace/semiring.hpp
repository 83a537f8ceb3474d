#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "dagtrace/errors.hpp"

namespace dagtrace {

// Value of the max-type semiring: a totally ordered 64-bit signed scalar
// with a reserved bottom sentinel. combine() is max under that order,
// extend() is saturating integer addition with bottom absorbing. Exact
// integer arithmetic keeps canonical tie-breaking well defined; floating
// point is deliberately not supported.
class Value {
public:
    constexpr Value() : raw_(kBottomRaw) {}

    static constexpr Value bottom() { return Value(); }
    static constexpr Value identity_mul() { return of(0); }

    static constexpr Value of(std::int64_t payload) {
        Value v;
        v.raw_ = payload == kBottomRaw ? kMinFinite : payload;
        return v;
    }

    constexpr bool is_bottom() const { return raw_ == kBottomRaw; }
    constexpr std::int64_t payload() const { return raw_; }

    friend constexpr bool operator==(Value, Value) = default;
    friend constexpr std::strong_ordering operator<=>(Value a, Value b) {
        return a.raw_ <=> b.raw_;
    }

    // Largest finite payload; extend() saturates here instead of wrapping.
    static constexpr std::int64_t max_finite() { return std::numeric_limits<std::int64_t>::max(); }
    // Smallest finite payload, one above the bottom sentinel so saturation
    // can never fabricate bottom from finite operands.
    static constexpr std::int64_t min_finite() { return kMinFinite; }

private:
    static constexpr std::int64_t kBottomRaw = std::numeric_limits<std::int64_t>::min();
    static constexpr std::int64_t kMinFinite = kBottomRaw + 1;

    std::int64_t raw_;
};

// a (+) b: supremum of {a, b} under the total order. Commutative,
// associative, idempotent; bottom is the identity.
constexpr Value combine(Value a, Value b) { return a < b ? b : a; }

// a (x) b: saturating addition with bottom absorbing on either side.
constexpr Value extend(Value a, Value b) {
    if (a.is_bottom() || b.is_bottom()) return Value::bottom();
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.payload(), b.payload(), &sum)) {
        return a.payload() > 0 ? Value::of(Value::max_finite()) : Value::of(Value::min_finite());
    }
    return Value::of(sum); // of() clamps an exact-sentinel sum to min_finite
}

// Concrete semiring instances share the (max, saturating +) algebra; the
// tag records the scoring convention an instance was built with and is
// carried through DAG files and the CLI.
enum class SemiringTag {
    MaxPlus, // general tropical scores over the integers
    Lcs,     // longest-common-subsequence counting scores (match/0/0)
};

inline std::string to_string(SemiringTag tag) {
    return tag == SemiringTag::Lcs ? "lcs" : "max-plus";
}

inline SemiringTag parse_semiring_tag(const std::string& s) {
    if (s == "max-plus") return SemiringTag::MaxPlus;
    if (s == "lcs") return SemiringTag::Lcs;
    throw ValidationError("unknown semiring tag: " + s);
}

} // namespace dagtrace
