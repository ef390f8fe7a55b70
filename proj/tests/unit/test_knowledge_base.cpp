#include "taxoprob/errors.hpp"
#include "taxoprob/knowledge_base.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace taxoprob;
using taxoprob::testing::q;

namespace {

ConjunctiveEvent ev(std::vector<std::string> names)
{
    return ConjunctiveEvent::of(std::move(names));
}

} // namespace

TEST(KnowledgeBase, DuplicatesIntersectWithWarning)
{
    std::vector<std::string> warnings;
    auto kb = KnowledgeBase::build(Universe({"G", "H"}), {},
                                   {{ev({"H"}), ev({"G"}), {q("0.2"), q("0.6")}},
                                    {ev({"H"}), ev({"G"}), {q("0.4"), q("0.9")}}},
                                   &warnings);
    EXPECT_EQ(kb.probabilistic().size(), 1U);
    EXPECT_EQ(*kb.asserted(ev({"H"}), ev({"G"})), (ProbabilityInterval{q("0.4"), q("0.6")}));
    EXPECT_EQ(warnings.size(), 1U);
}

TEST(KnowledgeBase, EmptyDuplicateIntersectionIsAConflict)
{
    EXPECT_THROW(KnowledgeBase::build(Universe({"G", "H"}), {},
                                      {{ev({"H"}), ev({"G"}), {q("0.1"), q("0.2")}},
                                       {ev({"H"}), ev({"G"}), {q("0.5"), q("0.9")}}}),
                 ProbabilisticConflictError);
}

TEST(KnowledgeBase, RejectsBadIntervalsAndNames)
{
    Universe u({"A", "B"});
    EXPECT_THROW(KnowledgeBase::build(u, {}, {{ev({"B"}), ev({"A"}), {q("0.9"), q("0.2")}}}), Error);
    EXPECT_THROW(KnowledgeBase::build(u, {}, {{ev({"B"}), ev({"A"}), {q("0"), Rational(3, 2)}}}), Error);
    EXPECT_THROW(KnowledgeBase::build(u, {}, {{ev({"Z"}), ev({"A"}), {q("0"), q("1")}}}), UnknownIdentifierError);
    EXPECT_THROW(KnowledgeBase::build(u, {{ev({"A"}), ev({"Z"})}}, {}), UnknownIdentifierError);
}

TEST(KnowledgeBase, CoherenceViolations)
{
    Universe u({"A", "B"});
    // A -> B entailed but lower bound below 1.
    auto kb1 = KnowledgeBase::build(u, {{ev({"A"}), ev({"B"})}}, {{ev({"B"}), ev({"A"}), {q("0.5"), q("1")}}});
    EXPECT_EQ(validate_coherence(kb1).size(), 1U);
    // Disjoint events need upper bound 0.
    auto kb2 = KnowledgeBase::build(u, {{ev({"A", "B"}), ConjunctiveEvent::bottom()}},
                                    {{ev({"B"}), ev({"A"}), {q("0"), q("0.3")}}});
    EXPECT_EQ(validate_coherence(kb2).size(), 1U);
    // Upper bound 0 without taxonomic disjointness.
    auto kb3 = KnowledgeBase::build(u, {}, {{ev({"B"}), ev({"A"}), {q("0"), q("0")}}});
    EXPECT_EQ(validate_coherence(kb3).size(), 1U);
    // Lower bound 1 without entailment.
    auto kb4 = KnowledgeBase::build(u, {}, {{ev({"B"}), ev({"A"}), {q("1"), q("1")}}});
    EXPECT_EQ(validate_coherence(kb4).size(), 1U);
    auto good = KnowledgeBase::build(u, {{ev({"A"}), ev({"B"})}}, {{ev({"B"}), ev({"A"}), {q("1"), q("1")}}});
    EXPECT_TRUE(validate_coherence(good).empty());
}

TEST(KnowledgeBase, CanonicalIntervals)
{
    Universe u({"A", "B", "C", "D"});
    auto kb = KnowledgeBase::build(u, {{ev({"A"}), ev({"B"})}, {ev({"C", "D"}), ConjunctiveEvent::bottom()}},
                                   {{ev({"C"}), ev({"A"}), {q("0.85"), q("0.9")}}});
    EXPECT_EQ(canonical_interval(kb, ev({"B"}), ev({"A"})), ProbabilityInterval::point(1));
    EXPECT_EQ(canonical_interval(kb, ev({"D"}), ev({"C"})), ProbabilityInterval::point(0));
    EXPECT_EQ(canonical_interval(kb, ev({"C"}), ev({"A"})), (ProbabilityInterval{q("0.85"), q("0.9")}));
    EXPECT_EQ(canonical_interval(kb, ev({"A"}), ev({"C"})), ProbabilityInterval::unit());
    EXPECT_EQ(canonical_interval(kb, ev({"A"}), ev({"A"})), ProbabilityInterval::point(1));
}

TEST(KnowledgeBase, CanonicalIntervalDetectsTaxonomyConflict)
{
    Universe u({"A", "B"});
    auto kb = KnowledgeBase::build(u, {{ev({"A"}), ev({"B"})}}, {{ev({"B"}), ev({"A"}), {q("0.1"), q("0.5")}}});
    EXPECT_THROW(canonical_interval(kb, ev({"B"}), ev({"A"})), ProbabilisticConflictError);
}
