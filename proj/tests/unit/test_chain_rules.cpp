#include "taxoprob/chain.hpp"
#include "taxoprob/oracle.hpp"
#include "taxoprob/rules.hpp"

#include "reference_tables.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace taxoprob;
using namespace taxoprob::testing;

namespace {

// Two-decimal rounding tolerance, decided exactly.
bool within_rounding(const Rational& value, double reference)
{
    Rational ref(static_cast<long>(std::lround(reference * 100)), 100);
    ref.canonicalize();
    return abs(value - ref) <= Rational(1, 200);
}

} // namespace

TEST(Consistency, InconsistentRows)
{
    struct Expect {
        char row;
        std::vector<int> conditions;
        std::vector<Role> forced;
    };
    const std::vector<Expect> rows{
        {'a', {7}, {Role::B}},
        {'b', {2, 5}, {Role::A, Role::B, Role::C}},
        {'c', {4}, {Role::A, Role::B, Role::C}},
        {'e', {4}, {Role::A, Role::B, Role::C}},
    };
    for (const auto& e : rows) {
        auto rc = load_row_chain(e.row);
        auto verdict = check_consistency(rc.chain);
        EXPECT_FALSE(verdict.consistent) << e.row;
        EXPECT_EQ(verdict.fired_conditions, e.conditions) << e.row;
        EXPECT_EQ(verdict.forced_false, e.forced) << e.row;
    }
}

TEST(Consistency, ConsistentRows)
{
    for (char row : {'d', 'f', 'g', 'h', 'i', 'j', 'k'}) {
        auto rc = load_row_chain(row);
        EXPECT_TRUE(chain_coherent(rc.chain, rc.kb.taxonomy())) << row;
        EXPECT_TRUE(check_consistency(rc.chain).consistent) << row;
        AtomSystem system = build_atom_system(chain_knowledge_base(rc.chain, rc.kb.taxonomy()));
        for (const auto* e : {&rc.chain.a, &rc.chain.b, &rc.chain.c})
            EXPECT_GT(*max_probability(system, *e), 0) << row << " " << e->to_string();
    }
}

TEST(Consistency, AgreesWithOracleOnRandomChains)
{
    std::mt19937_64 rng(3);
    int inconsistent = 0;
    for (int round = 0; round < 200; ++round) {
        auto rc = random_chain(rng, 3);
        KnowledgeBase kb = chain_knowledge_base(rc.chain, rc.taxonomy);
        AtomSystem system = build_atom_system(kb);
        bool oracle_consistent = true;
        for (const auto* e : {&rc.chain.a, &rc.chain.b, &rc.chain.c}) {
            auto best = max_probability(system, *e);
            oracle_consistent = oracle_consistent && best && *best > 0;
        }
        auto verdict = check_consistency(rc.chain);
        EXPECT_EQ(verdict.consistent, oracle_consistent) << "round " << round;
        if (!verdict.consistent) {
            ++inconsistent;
            for (Role role : verdict.forced_false) {
                const auto& e = role == Role::A ? rc.chain.a : role == Role::B ? rc.chain.b : rc.chain.c;
                auto best = max_probability(system, e);
                EXPECT_TRUE(!best || *best == 0) << "round " << round << " role " << role_name(role);
            }
        }
    }
    EXPECT_GT(inconsistent, 0);
}

TEST(Rules, SwapIsAnInvolution)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        auto rc = random_chain(rng, 4);
        ChainPremise twice = swap_chain(swap_chain(rc.chain));
        EXPECT_EQ(twice.a, rc.chain.a);
        EXPECT_EQ(twice.c, rc.chain.c);
        EXPECT_EQ(twice.u, rc.chain.u);
        EXPECT_EQ(twice.y, rc.chain.y);
        EXPECT_EQ(twice.guards, rc.chain.guards);
        EXPECT_EQ(twice.falsity, rc.chain.falsity);
    }
}

TEST(Rules, ApplyAllProducesBothOrientations)
{
    auto rc = load_row_chain('k');
    auto out = apply_all(rc.chain);
    EXPECT_FALSE(out.rejected);
    EXPECT_EQ(out.conclusions.size(), 14U);
    EXPECT_EQ(apply_all(rc.chain, rule_bit(RuleKind::Chaining), false).conclusions.size(), 1U);
    EXPECT_EQ(apply_all(rc.chain, kAllRules, false).conclusions.size(), 7U);
}

TEST(Rules, RejectsInconsistentChain)
{
    auto rc = load_row_chain('a');
    auto out = apply_all(rc.chain);
    ASSERT_TRUE(out.rejected);
    EXPECT_TRUE(out.conclusions.empty());
    EXPECT_EQ(out.rejected->fired_conditions, std::vector<int>{7});
}

TEST(Rules, ReproducesReferenceRows)
{
    for (const auto& ref : reference_rows()) {
        auto rc = load_row_chain(ref.row);
        auto out = apply_all(rc.chain);
        ASSERT_FALSE(out.rejected) << ref.row;
        for (const auto& bound : ref.bounds) {
            auto h = role_event(rc.chain, bound.conclusion);
            auto g = role_event(rc.chain, bound.premise);
            bool found = false;
            for (const auto& c : out.conclusions) {
                if (!(c.conclusion == h && c.premise == g))
                    continue;
                found = true;
                EXPECT_TRUE(within_rounding(c.interval.lo, bound.lo))
                    << ref.row << " (" << bound.conclusion << "|" << bound.premise << ") " << rule_name(c.rule);
                EXPECT_TRUE(within_rounding(c.interval.hi, bound.hi))
                    << ref.row << " (" << bound.conclusion << "|" << bound.premise << ") " << rule_name(c.rule);
            }
            EXPECT_TRUE(found) << ref.row << " (" << bound.conclusion << "|" << bound.premise << ")";
        }
    }
}

TEST(Rules, RowsMatchOracleExactly)
{
    for (char row : {'f', 'g', 'h', 'i', 'j', 'k'}) {
        auto rc = load_row_chain(row);
        auto mismatches = oracle_mismatches(rc.chain, rc.kb.taxonomy());
        EXPECT_TRUE(mismatches.empty()) << row << ": " << (mismatches.empty() ? "" : mismatches.front());
    }
}

TEST(Rules, RandomChainsMatchOracleExactly)
{
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 150) {
        auto rc = random_chain(rng, 2 + checked % 3);
        if (!check_consistency(rc.chain).consistent)
            continue;
        ++checked;
        auto mismatches = oracle_mismatches(rc.chain, rc.taxonomy);
        if (!mismatches.empty()) {
            ADD_FAILURE() << "A=" << rc.chain.a.to_string() << " B=" << rc.chain.b.to_string()
                          << " C=" << rc.chain.c.to_string() << " u=" << rc.chain.u.to_string()
                          << " v=" << rc.chain.v.to_string() << " x=" << rc.chain.x.to_string()
                          << " y=" << rc.chain.y.to_string() << ": " << mismatches.front();
        }
    }
}

// The chaining lower-bound operand guarded by v1 + x1 > 1 exists in two
// transcriptions. Only u1(v1 + x1 - 1)/v1 is sound and tight.
TEST(Rules, ChainingLowerBoundForms)
{
    std::mt19937_64 rng(99);
    int checked = 0;
    int alternate_form_wrong = 0;
    while (checked < 120) {
        auto rc = random_chain(rng, 3);
        if (!check_consistency(rc.chain).consistent || rc.chain.v.lo + rc.chain.x.lo <= 1)
            continue;
        ++checked;
        EXPECT_TRUE(oracle_mismatches(rc.chain, rc.taxonomy).empty());
        auto tight = tight_answer(chain_knowledge_base(rc.chain, rc.taxonomy), rc.chain.c, rc.chain.a);
        auto alternate = chaining(rc.chain, ChainingLowerForm::Alternate).conclusions.at(0).interval;
        if (alternate.lo > tight.lower)
            ++alternate_form_wrong;
    }
    EXPECT_GT(alternate_form_wrong, 0);
}
