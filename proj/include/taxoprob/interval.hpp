#pragma once

#include "taxoprob/rational.hpp"

#include <string>

namespace taxoprob {

/// [lo, hi] with exact bounds. lo > hi denotes the empty interval; the
/// canonical empty answer is [1, 0].
struct ProbabilityInterval {
    Rational lo{0};
    Rational hi{1};

    static ProbabilityInterval unit() { return {Rational(0), Rational(1)}; }
    static ProbabilityInterval point(const Rational& p) { return {p, p}; }
    static ProbabilityInterval empty_answer() { return {Rational(1), Rational(0)}; }

    [[nodiscard]] bool empty() const { return lo > hi; }
    [[nodiscard]] bool is_empty_answer() const { return lo == 1 && hi == 0; }
    [[nodiscard]] bool within_unit() const { return lo >= 0 && hi <= 1; }

    /// Non-strict containment; every interval contains the empty one.
    [[nodiscard]] bool contains(const ProbabilityInterval& inner) const
    {
        return inner.empty() || (lo <= inner.lo && inner.hi <= hi);
    }

    [[nodiscard]] ProbabilityInterval intersect(const ProbabilityInterval& other) const
    {
        return {lo > other.lo ? lo : other.lo, hi < other.hi ? hi : other.hi};
    }

    /// `[19/20, 1]`
    [[nodiscard]] std::string to_string() const;
    /// `[0.9500, 1.0000]`
    [[nodiscard]] std::string to_decimal_string(int places) const;

    friend bool operator==(const ProbabilityInterval& a, const ProbabilityInterval& b)
    {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

} // namespace taxoprob
