#pragma once

#include "taxoprob/interval.hpp"
#include "taxoprob/rules.hpp"

#include <string>
#include <vector>

namespace taxoprob {

/// One strict improvement made by a rule during saturation.
struct TraceStep {
    std::size_t index = 0;
    int sweep = 0;
    RuleKind rule = RuleKind::Sharpening;
    Slot slot = Slot::BGivenA;
    bool swapped = false;
    // Roles of the orientation the rule was applied to, and its inputs
    // u = (B|A), v = (A|B), x = (C|B), y = (B|C).
    ConjunctiveEvent a, b, c;
    ProbabilityInterval u, v, x, y;
    ConjunctiveEvent conclusion, premise;
    ProbabilityInterval old_interval, new_interval;
    std::vector<std::string> lower_operands, upper_operands;

    [[nodiscard]] std::string to_string() const;
};

struct QueryAnswer {
    Rational lower{1};
    Rational upper{0};
    bool empty = true; // the (1,0) convention: no model gives the premise positive probability
    std::vector<TraceStep> trace;

    static QueryAnswer of(const ProbabilityInterval& interval)
    {
        QueryAnswer answer;
        answer.lower = interval.lo;
        answer.upper = interval.hi;
        answer.empty = interval.is_empty_answer();
        return answer;
    }

    [[nodiscard]] ProbabilityInterval interval() const { return {lower, upper}; }
};

} // namespace taxoprob
