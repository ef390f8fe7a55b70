#include "taxoprob/errors.hpp"
#include "taxoprob/oracle.hpp"
#include "taxoprob/simplex.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace taxoprob;
using namespace taxoprob::testing;

namespace {

ConjunctiveEvent ev(std::vector<std::string> names)
{
    return ConjunctiveEvent::of(std::move(names));
}

QueryAnswer file_answer(const std::string& name)
{
    auto parsed = load_kb(name);
    return tight_answer(parsed.kb, parsed.queries.at(0));
}

// min sign * (Pr(FE) - t Pr(E)) over all models of the KB, in the atom masses themselves.
Rational parametric_minimum(const AtomSystem& system, const ConjunctiveEvent& f, const ConjunctiveEvent& e,
                            const Rational& t, int sign = 1)
{
    const std::size_t n = system.atoms.size();
    lp::Problem p;
    p.num_vars = n;
    p.maximize = false;
    for (const auto& row : system.rows)
        p.constraints.push_back({row.coeffs, lp::Sense::GreaterEqual, 0});
    p.constraints.push_back({std::vector<Rational>(n, Rational(1)), lp::Sense::Equal, 1});
    auto in_e = system.implying(e);
    auto in_fe = system.implying(conjoin(f, e));
    p.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        p.objective[i] = sign * ((in_fe[i] ? Rational(1) : Rational(0)) - (in_e[i] ? t : Rational(0)));
    auto s = lp::solve(p);
    EXPECT_EQ(s.status, lp::Status::Optimal);
    return s.value;
}

} // namespace

TEST(Oracle, Bird)
{
    auto a = file_answer("bird.kb");
    EXPECT_FALSE(a.empty);
    EXPECT_EQ(a.lower, 0);
    EXPECT_EQ(a.upper, Rational(1, 20));
}

TEST(Oracle, ChainingIsMuchTighterThanLocalRules)
{
    auto a = file_answer("chaining.kb");
    EXPECT_EQ(a.lower, 0);
    EXPECT_EQ(a.upper, Rational(27, 4096));
}

TEST(Oracle, MutexSystemShape)
{
    auto parsed = load_kb("mutex_10.kb");
    AtomSystem system = build_atom_system(parsed.kb);
    EXPECT_EQ(system.atoms.size(), 11U);
    EXPECT_EQ(system.rows.size(), 20U);
    auto a = tight_answer(system, ev({"B1"}), ConjunctiveEvent::top());
    EXPECT_EQ(a.lower, Rational(1, 10));
    EXPECT_EQ(a.upper, Rational(1, 10));
}

TEST(Oracle, MutexHundred)
{
    auto a = file_answer("mutex_100.kb");
    EXPECT_EQ(a.lower, Rational(1, 100));
    EXPECT_EQ(a.upper, Rational(1, 100));
}

TEST(Oracle, BoundsAreTightInOriginalVariables)
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 30; ++round) {
        KnowledgeBase kb = random_kb(rng, 3 + round % 2, 4);
        AtomSystem system = build_atom_system(kb);
        ConjunctiveEvent f = random_event(kb.universe(), rng, false);
        ConjunctiveEvent e = random_event(kb.universe(), rng);
        auto a = tight_answer(system, f, e);
        if (a.empty)
            continue;
        const Rational eps(1, 1000);
        // Pr(FE) >= l Pr(E) in every model, and no larger l works.
        EXPECT_GE(parametric_minimum(system, f, e, a.lower), 0) << "round " << round;
        if (a.lower < 1) {
            EXPECT_LT(parametric_minimum(system, f, e, a.lower + eps), 0) << "round " << round;
        }
        // Pr(FE) <= u Pr(E) in every model, and no smaller u works.
        EXPECT_GE(parametric_minimum(system, f, e, a.upper, -1), 0) << "round " << round;
        if (a.upper > 0) {
            EXPECT_LT(parametric_minimum(system, f, e, a.upper - eps, -1), 0) << "round " << round;
        }
    }
}

TEST(Oracle, EmptyAnswerWhenPremiseIsImpossible)
{
    Universe u({"A", "B"});
    auto kb = KnowledgeBase::build(u, {{ev({"A"}), ConjunctiveEvent::bottom()}},
                                   {{ev({"B"}), ConjunctiveEvent::top(), {q("0.2"), q("0.4")}}});
    auto a = tight_answer(kb, ev({"B"}), ev({"A"}));
    EXPECT_TRUE(a.empty);
    EXPECT_EQ(a.interval(), ProbabilityInterval::empty_answer());

    // A premise forced to zero by probabilities alone.
    auto kb2 = KnowledgeBase::build(u, {}, {{ev({"A"}), ConjunctiveEvent::top(), {q("0"), q("0")}}});
    EXPECT_TRUE(tight_answer(kb2, ev({"B"}), ev({"A"})).empty);
}

TEST(Oracle, UnsatisfiableKbGivesEmptyAnswer)
{
    Universe u({"A", "B"});
    auto kb = KnowledgeBase::build(u, {{ev({"A"}), ev({"B"})}},
                                   {{ev({"A"}), ConjunctiveEvent::top(), {q("0.6"), q("1")}},
                                    {ev({"B"}), ConjunctiveEvent::top(), {q("0"), q("0.3")}}});
    EXPECT_FALSE(kb_satisfiable(kb));
    EXPECT_TRUE(tight_answer(kb, ev({"A"}), ConjunctiveEvent::top()).empty);
}

TEST(Oracle, SelfConditional)
{
    auto parsed = load_kb("bird.kb");
    auto a = tight_answer(parsed.kb, ev({"bird"}), ev({"bird"}));
    EXPECT_EQ(a.interval(), ProbabilityInterval::point(1));
    auto b = tight_answer(parsed.kb, ev({"fly"}), ev({"ostrich"}));
    EXPECT_EQ(b.interval(), ProbabilityInterval::point(0));
}

TEST(Oracle, IrrelevantBasicDoesNotChangeAnswers)
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 20; ++round) {
        KnowledgeBase kb = random_kb(rng, 3, 4);
        std::vector<std::string> names = kb.universe().names();
        names.push_back("Z");
        KnowledgeBase wider = KnowledgeBase::build(Universe(names), kb.taxonomy().formulas(), kb.probabilistic());
        ConjunctiveEvent f = random_event(kb.universe(), rng, false);
        ConjunctiveEvent e = random_event(kb.universe(), rng);
        EXPECT_EQ(tight_answer(kb, f, e).interval(), tight_answer(wider, f, e).interval()) << "round " << round;
    }
}

TEST(Oracle, AtomCapIsReported)
{
    Universe u = small_universe(12);
    auto kb = KnowledgeBase::build(u, {}, {});
    EXPECT_THROW(build_atom_system(kb, 100), AtomSpaceTooLargeError);
}

TEST(Oracle, SemanticEntailment)
{
    Universe u({"A", "B", "C"});
    TaxonomyStore store(u, {{ev({"A"}), ev({"B"})}, {ev({"B"}), ev({"C"})}});
    EXPECT_TRUE(entails_bruteforce(store, ev({"A"}), ev({"C"})));
    EXPECT_FALSE(entails_bruteforce(store, ev({"C"}), ev({"A"})));
}
