#include "taxoprob/simplex.hpp"

#include <gtest/gtest.h>

using namespace taxoprob;
using namespace taxoprob::lp;

namespace {

std::vector<Rational> row(std::initializer_list<int> values)
{
    std::vector<Rational> out;
    for (int v : values)
        out.emplace_back(v);
    return out;
}

} // namespace

TEST(Simplex, SmallMaximisation)
{
    // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    Problem p{2, {{row({1, 1}), Sense::LessEqual, 4}, {row({1, 3}), Sense::LessEqual, 6}, {row({1, 0}), Sense::LessEqual, 3}},
              row({3, 2}), true};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, 11);
    EXPECT_EQ(s.x[0], 3);
    EXPECT_EQ(s.x[1], 1);
}

TEST(Simplex, ExactFractionalOptimum)
{
    // min x + y, 3x + y >= 2, x + 3y >= 2
    Problem p{2, {{row({3, 1}), Sense::GreaterEqual, 2}, {row({1, 3}), Sense::GreaterEqual, 2}}, row({1, 1}), false};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, Rational(1));
    EXPECT_EQ(s.x[0], Rational(1, 2));
}

TEST(Simplex, Infeasible)
{
    Problem p{1, {{row({1}), Sense::GreaterEqual, 2}, {row({1}), Sense::LessEqual, 1}}, row({1}), true};
    EXPECT_EQ(solve(p).status, Status::Infeasible);
    EXPECT_FALSE(feasible(p));
}

TEST(Simplex, Unbounded)
{
    Problem p{2, {{row({1, -1}), Sense::LessEqual, 1}}, row({1, 0}), true};
    EXPECT_EQ(solve(p).status, Status::Unbounded);
}

TEST(Simplex, EqualityAndRedundantRows)
{
    // x + y = 1 twice, max x
    Problem p{2, {{row({1, 1}), Sense::Equal, 1}, {row({2, 2}), Sense::Equal, 2}}, row({1, 0}), true};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, 1);
}

TEST(Simplex, DegenerateCyclingExampleTerminates)
{
    // Beale's example cycles under the largest-coefficient rule.
    Problem p;
    p.num_vars = 4;
    p.maximize = true;
    p.objective = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
    p.constraints.push_back({{Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, Sense::LessEqual, 0});
    p.constraints.push_back({{Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, Sense::LessEqual, 0});
    p.constraints.push_back({{Rational(0), Rational(0), Rational(1), Rational(0)}, Sense::LessEqual, 1});
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, Rational(1, 20));
}

TEST(Simplex, FeasibleRegionReusesPhaseOne)
{
    // x + y + z = 1 with x >= y
    Problem p{3, {{row({1, 1, 1}), Sense::Equal, 1}, {row({1, -1, 0}), Sense::GreaterEqual, 0}}, {}, true};
    FeasibleRegion region(p);
    ASSERT_TRUE(region.feasible());
    EXPECT_EQ(region.optimise(row({0, 1, 0}), true).value, Rational(1, 2));
    EXPECT_EQ(region.optimise(row({0, 1, 0}), false).value, 0);
    EXPECT_EQ(region.optimise(row({1, 0, 0}), false).value, 0);
    EXPECT_EQ(region.optimise(row({1, 0, 0}), true).value, 1);
}

TEST(Simplex, NegativeRightHandSide)
{
    // -x <= -2 means x >= 2; min x
    Problem p{1, {{row({-1}), Sense::LessEqual, -2}}, row({1}), false};
    Solution s = solve(p);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, 2);
}
