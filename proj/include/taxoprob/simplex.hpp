#pragma once

#include "taxoprob/rational.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace taxoprob::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
    std::vector<Rational> coeffs; // one per variable
    Sense sense = Sense::LessEqual;
    Rational rhs{0};
};

/// optimise objective . x subject to constraints and x >= 0.
struct Problem {
    std::size_t num_vars = 0;
    std::vector<Constraint> constraints;
    std::vector<Rational> objective;
    bool maximize = true;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rational value{0};
    std::vector<Rational> x;
    std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule picks
/// entering and leaving variables, so degenerate problems terminate.
Solution solve(const Problem& problem);

/// Phase one only: whether the feasible region is nonempty.
bool feasible(const Problem& problem);

/// Runs phase one once; each optimise() call then starts from a copy of the
/// feasible tableau. The problem's own objective is ignored.
class FeasibleRegion {
public:
    explicit FeasibleRegion(const Problem& problem);
    ~FeasibleRegion();
    FeasibleRegion(FeasibleRegion&&) noexcept;
    FeasibleRegion& operator=(FeasibleRegion&&) noexcept;

    [[nodiscard]] bool feasible() const { return feasible_; }
    [[nodiscard]] Solution optimise(const std::vector<Rational>& objective, bool maximize) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    bool feasible_ = false;
};

} // namespace taxoprob::lp
