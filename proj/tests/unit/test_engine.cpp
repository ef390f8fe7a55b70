#include "taxoprob/engine.hpp"
#include "taxoprob/errors.hpp"
#include "taxoprob/oracle.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace taxoprob;
using namespace taxoprob::testing;

namespace {

ConjunctiveEvent ev(std::vector<std::string> names)
{
    return ConjunctiveEvent::of(std::move(names));
}

DeductionState saturated(const KnowledgeBase& kb, const EngineConfig& config,
                         const std::vector<ConjunctiveEvent>& extra = {})
{
    DeductionState state = seed_state(kb, config, extra);
    saturate(state, kb, config);
    return state;
}

std::vector<std::string> trace_lines(const DeductionState& state)
{
    std::vector<std::string> out;
    for (const auto& step : state.trace())
        out.push_back(step.to_string());
    return out;
}

EngineConfig with_kernel(SweepKernel kernel)
{
    EngineConfig config;
    config.kernel = kernel;
    return config;
}

} // namespace

TEST(Engine, SeedingBuildsPoolAndCanonicalIntervals)
{
    auto parsed = load_kb("bird.kb");
    EngineConfig config;
    config.pool_policy = PoolPolicy::KbEvents;
    DeductionState state = seed_state(parsed.kb, config);
    const auto& pool = state.pool();
    EXPECT_NE(std::find(pool.begin(), pool.end(), ConjunctiveEvent::top()), pool.end());
    EXPECT_EQ(pool.size(), 4U); // top, bird, fly, ostrich
    EXPECT_EQ(state.interval(ev({"fly"}), ev({"bird"})), (ProbabilityInterval{q("0.95"), q("1")}));
    EXPECT_EQ(state.interval(ev({"bird"}), ev({"ostrich"})), ProbabilityInterval::point(1));
    EXPECT_EQ(state.interval(ev({"fly"}), ev({"ostrich"})), ProbabilityInterval::point(0));
    EXPECT_EQ(state.interval(ev({"bird"}), ev({"fly"})), ProbabilityInterval::unit());
    EXPECT_FALSE(state.interval(ev({"bird", "fly"}), ev({"fly"})).has_value());
    EXPECT_EQ(state.stored().size(), 2U);
}

TEST(Engine, PoolExcludesFalseEventsAndAddsProducts)
{
    auto parsed = load_kb("bird.kb");
    DeductionState state = seed_state(parsed.kb, EngineConfig{});
    const auto& pool = state.pool();
    EXPECT_EQ(std::find(pool.begin(), pool.end(), ev({"fly", "ostrich"})), pool.end());
    EXPECT_EQ(std::find(pool.begin(), pool.end(), ConjunctiveEvent::bottom()), pool.end());
    EXPECT_NE(std::find(pool.begin(), pool.end(), ev({"bird", "fly"})), pool.end());
}

TEST(Engine, PoolCapKeepsBaseEvents)
{
    auto parsed = load_kb("mutex_10.kb");
    EngineConfig config;
    config.pool_cap = 5;
    DeductionState state = seed_state(parsed.kb, config);
    EXPECT_EQ(state.pool().size(), 11U);
}

TEST(Engine, RejectsUnusableConfig)
{
    EngineConfig config;
    config.enabled_rules = 0;
    EXPECT_THROW(validate_config(config), Error);
    config = EngineConfig{};
    config.max_sweeps = 0;
    EXPECT_THROW(validate_config(config), Error);
}

TEST(Engine, BirdAnswer)
{
    auto parsed = load_kb("bird.kb");
    auto a = local_query(parsed.kb, parsed.queries.at(0));
    EXPECT_EQ(a.lower, 0);
    EXPECT_EQ(a.upper, Rational(1, 20));
}

TEST(Engine, MedicalReducedUsesOneChainingStep)
{
    auto parsed = load_kb("medical_reduced.kb");
    auto a = local_query(parsed.kb, parsed.queries.at(0));
    EXPECT_EQ(a.interval(), (ProbabilityInterval{Rational(4, 5), Rational(1)}));
    ASSERT_EQ(a.trace.size(), 1U);
    EXPECT_EQ(a.trace[0].rule, RuleKind::Chaining);
    EXPECT_EQ(a.trace[0].conclusion, ev({"fever", "head"}));
    EXPECT_EQ(a.trace[0].premise, ev({"typh"}));
}

TEST(Engine, ChainingStaysLooserThanOracle)
{
    auto parsed = load_kb("chaining.kb");
    auto a = local_query(parsed.kb, parsed.queries.at(0));
    EXPECT_EQ(a.lower, 0);
    EXPECT_EQ(a.upper, Rational(9261, 10240));
}

TEST(Engine, MutexUpperBoundIsNotTight)
{
    auto parsed = load_kb("mutex_10.kb");
    auto a = local_query(parsed.kb, parsed.queries.at(0));
    EXPECT_EQ(a.interval(), (ProbabilityInterval{Rational(1, 10), Rational(9, 10)}));
}

TEST(Engine, FalsePremiseGivesEmptyAnswer)
{
    auto parsed = load_kb("bird.kb");
    auto a = local_query(parsed.kb, {ev({"bird"}), ev({"fly", "ostrich"})});
    EXPECT_TRUE(a.empty);
    EXPECT_EQ(a.interval(), ProbabilityInterval::empty_answer());
}

TEST(Engine, KernelsAgreeIncludingTraces)
{
    auto compare = [](const KnowledgeBase& kb, const std::vector<ConjunctiveEvent>& extra, const std::string& label) {
        std::string serial_error;
        std::string parallel_error;
        DeductionState serial;
        DeductionState parallel;
        try {
            serial = saturated(kb, with_kernel(SweepKernel::Serial), extra);
        } catch (const ProbabilisticConflictError& e) {
            serial_error = e.what();
        }
        try {
            parallel = saturated(kb, with_kernel(SweepKernel::Parallel), extra);
        } catch (const ProbabilisticConflictError& e) {
            parallel_error = e.what();
        }
        EXPECT_EQ(serial_error, parallel_error) << label;
        EXPECT_TRUE(serial == parallel) << label;
        EXPECT_EQ(trace_lines(serial), trace_lines(parallel)) << label;
    };
    for (const auto& name : corpus_files()) {
        if (name == "mutex_100.kb")
            continue;
        auto parsed = load_kb(name);
        std::vector<ConjunctiveEvent> extra;
        for (const auto& g : parsed.queries) {
            extra.push_back(g.conclusion);
            extra.push_back(g.premise);
        }
        compare(parsed.kb, extra, name);
    }
    std::mt19937_64 rng(17);
    for (int round = 0; round < 25; ++round)
        compare(random_kb(rng, 3 + round % 3, 5), {}, "round " + std::to_string(round));
}

TEST(Engine, SaturationIsDeterministic)
{
    auto parsed = load_kb("mutex_10.kb");
    DeductionState first = saturated(parsed.kb, EngineConfig{});
    for (int i = 0; i < 3; ++i) {
        DeductionState again = saturated(parsed.kb, EngineConfig{});
        EXPECT_TRUE(first == again);
        EXPECT_EQ(trace_lines(first), trace_lines(again));
    }
}

TEST(Engine, IntervalsOnlyShrinkAndStepsAreStrict)
{
    std::mt19937_64 rng(23);
    for (int round = 0; round < 20; ++round) {
        KnowledgeBase kb = random_kb(rng, 4, 5);
        EngineConfig config;
        DeductionState seeded = seed_state(kb, config);
        DeductionState state = seeded;
        saturate(state, kb, config);
        EXPECT_TRUE(state.reached_fixpoint());
        for (const auto& f : state.stored()) {
            auto before = seeded.interval(f.conclusion, f.premise);
            ASSERT_TRUE(before.has_value());
            EXPECT_TRUE(before->contains(f.interval)) << "round " << round;
        }
        for (const auto& step : state.trace()) {
            EXPECT_TRUE(step.old_interval.contains(step.new_interval));
            EXPECT_FALSE(step.old_interval == step.new_interval) << step.to_string();
        }
    }
}

TEST(Engine, LocalAnswersContainTightAnswers)
{
    auto check = [](const KnowledgeBase& kb, const Goal& goal, const std::string& label) {
        QueryAnswer local;
        try {
            local = local_query(kb, goal);
        } catch (const ProbabilisticConflictError&) {
            EXPECT_TRUE(forces_asserted_premise_false(kb)) << label << " " << goal.to_string();
            return;
        }
        auto tight = tight_answer(kb, goal);
        EXPECT_TRUE(local.interval().contains(tight.interval()))
            << label << " " << goal.to_string() << " local " << local.interval().to_string() << " tight "
            << tight.interval().to_string();
    };
    for (const auto& name : corpus_files()) {
        auto parsed = load_kb(name);
        std::vector<Goal> goals = parsed.queries;
        if (goals.empty()) {
            const auto& f = parsed.kb.probabilistic();
            goals.push_back({f.at(2).conclusion, f.at(0).premise});
        }
        for (const auto& goal : goals)
            check(parsed.kb, goal, name);
    }
    std::mt19937_64 rng(29);
    for (int round = 0; round < 30; ++round) {
        KnowledgeBase kb = random_kb(rng, 3 + round % 3, 5);
        Goal goal{random_event(kb.universe(), rng, false), random_event(kb.universe(), rng)};
        check(kb, goal, "round " + std::to_string(round));
    }
}

TEST(Engine, ExplainReturnsStepsFromTheTrace)
{
    auto parsed = load_kb("mutex_10.kb");
    DeductionState state;
    auto a = local_query(parsed.kb, parsed.queries.at(0), EngineConfig{}, state);
    ASSERT_FALSE(a.trace.empty());
    for (const auto& step : a.trace) {
        ASSERT_LT(step.index, state.trace().size());
        EXPECT_EQ(step.to_string(), state.trace()[step.index].to_string());
    }
    EXPECT_TRUE(std::is_sorted(a.trace.begin(), a.trace.end(),
                               [](const TraceStep& x, const TraceStep& y) { return x.index < y.index; }));
    const auto& last = a.trace.back();
    EXPECT_EQ(last.conclusion, parsed.queries[0].conclusion);
    EXPECT_EQ(last.premise, parsed.queries[0].premise);
}

TEST(Engine, ContradictoryDeductionRaisesConflict)
{
    Universe u({"A", "B", "C"});
    auto kb = KnowledgeBase::build(u, {},
                                   {{ev({"B"}), ev({"A"}), {q("0.9"), q("1")}},
                                    {ev({"A"}), ev({"B"}), {q("0.9"), q("1")}},
                                    {ev({"C"}), ev({"B"}), {q("0.9"), q("1")}},
                                    {ev({"B"}), ev({"C"}), {q("0.9"), q("1")}},
                                    {ev({"C"}), ev({"A"}), {q("0"), q("0.1")}}});
    EXPECT_THROW(local_query(kb, {ev({"C"}), ev({"A"})}), ProbabilisticConflictError);
}

TEST(Engine, RuleSubsetsAreLooser)
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 20; ++round) {
        KnowledgeBase kb = random_kb(rng, 3, 5);
        Goal goal{random_event(kb.universe(), rng, false), random_event(kb.universe(), rng)};
        auto full = local_query(kb, goal);
        for (RuleKind rule : {RuleKind::Sharpening, RuleKind::Chaining, RuleKind::Fusion, RuleKind::Combination}) {
            EngineConfig config;
            config.enabled_rules = rule_bit(rule);
            EXPECT_TRUE(local_query(kb, goal, config).interval().contains(full.interval()))
                << "round " << round << " " << rule_name(rule);
        }
    }
}
