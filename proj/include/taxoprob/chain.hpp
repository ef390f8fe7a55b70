#pragma once

#include "taxoprob/interval.hpp"
#include "taxoprob/knowledge_base.hpp"
#include "taxoprob/taxonomy.hpp"

#include <vector>

namespace taxoprob {

/// Whether the taxonomy makes the pairwise products of the chain roles false.
/// These decide whether the FUSION and COMBINATION premises can have mass.
struct ProductFalsity {
    bool ab = false;
    bool ac = false;
    bool bc = false;

    friend bool operator==(const ProductFalsity&, const ProductFalsity&) = default;
};

/// Biconnected chain A - B - C with u = (B|A), v = (A|B), x = (C|B), y = (B|C).
struct ChainPremise {
    ConjunctiveEvent a;
    ConjunctiveEvent b;
    ConjunctiveEvent c;
    ProbabilityInterval u;
    ProbabilityInterval v;
    ProbabilityInterval x;
    ProbabilityInterval y;
    GuardFlags guards;
    ProductFalsity falsity;
};

/// The eight bounds of a chain, flattened.
struct ChainBounds {
    Rational u1, u2, v1, v2, x1, x2, y1, y2;

    static ChainBounds of(const ChainPremise& chain)
    {
        return {chain.u.lo, chain.u.hi, chain.v.lo, chain.v.hi, chain.x.lo, chain.x.hi, chain.y.lo, chain.y.hi};
    }
};

enum class Role { A, B, C };

const char* role_name(Role role);

struct ConsistencyVerdict {
    bool consistent = true;
    std::vector<int> fired_conditions; // subset of 1..7, ascending
    std::vector<Role> forced_false;    // roles the knowledge base forces to probability 0
};

/// Instantiates the chain from canonical intervals of the KB.
/// Propagates ProbabilisticConflictError from canonical_interval.
ChainPremise build_chain(const KnowledgeBase& kb, const ConjunctiveEvent& a, const ConjunctiveEvent& b,
                         const ConjunctiveEvent& c);

/// Guard flags and product falsity for roles a, b, c.
void fill_taxonomic_facts(ChainPremise& chain, const TaxonomyStore& taxonomy);

/// Evaluates the seven inconsistency conditions with exact comparison.
ConsistencyVerdict check_consistency(const ChainPremise& chain);

/// Whether the four intervals agree with the taxonomy in the coherence sense.
bool chain_coherent(const ChainPremise& chain, const TaxonomyStore& taxonomy);

/// The chain's own knowledge base: the taxonomy plus the four formulas.
KnowledgeBase chain_knowledge_base(const ChainPremise& chain, const TaxonomyStore& taxonomy);

} // namespace taxoprob
