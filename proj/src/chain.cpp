#include "taxoprob/chain.hpp"

namespace taxoprob {

const char* role_name(Role role)
{
    switch (role) {
    case Role::A:
        return "A";
    case Role::B:
        return "B";
    case Role::C:
        return "C";
    }
    return "?";
}

void fill_taxonomic_facts(ChainPremise& chain, const TaxonomyStore& taxonomy)
{
    chain.guards = guard_flags(taxonomy, chain.a, chain.b, chain.c);
    chain.falsity.ab = taxonomy.forces_false(conjoin(chain.a, chain.b));
    chain.falsity.ac = taxonomy.forces_false(conjoin(chain.a, chain.c));
    chain.falsity.bc = taxonomy.forces_false(conjoin(chain.b, chain.c));
}

ChainPremise build_chain(const KnowledgeBase& kb, const ConjunctiveEvent& a, const ConjunctiveEvent& b,
                         const ConjunctiveEvent& c)
{
    ChainPremise chain;
    chain.a = a;
    chain.b = b;
    chain.c = c;
    chain.u = canonical_interval(kb, b, a);
    chain.v = canonical_interval(kb, a, b);
    chain.x = canonical_interval(kb, c, b);
    chain.y = canonical_interval(kb, b, c);
    fill_taxonomic_facts(chain, kb.taxonomy());
    return chain;
}

ConsistencyVerdict check_consistency(const ChainPremise& chain)
{
    const auto& g = chain.guards;
    const auto [u1, u2, v1, v2, x1, x2, y1, y2] = ChainBounds::of(chain);

    bool fired[8] = {};
    fired[1] = g.gamma && g.delta && u2 < y1;
    fired[2] = g.beta && g.epsilon && u1 > y2;
    fired[3] = g.gamma && u2 * x2 * (1 - y1) < v1 * y1 * (1 - u2);
    fired[4] = g.beta && u1 * x1 * (1 - y2) > v2 * y2 * (1 - u1);
    fired[5] = g.epsilon && v1 > x2;
    fired[6] = g.delta && v2 < x1;
    fired[7] = g.alpha && x1 + v1 > 1;

    ConsistencyVerdict verdict;
    for (int k = 1; k <= 7; ++k)
        if (fired[k])
            verdict.fired_conditions.push_back(k);
    verdict.consistent = verdict.fired_conditions.empty();

    bool ac_forced = fired[1] || fired[2] || fired[3] || fired[4];
    bool b_forced = fired[3] || fired[4] || fired[5] || fired[6] || fired[7];
    if (ac_forced)
        verdict.forced_false.push_back(Role::A);
    if (b_forced)
        verdict.forced_false.push_back(Role::B);
    if (ac_forced)
        verdict.forced_false.push_back(Role::C);
    return verdict;
}

bool chain_coherent(const ChainPremise& chain, const TaxonomyStore& taxonomy)
{
    auto coherent = [&](const ConjunctiveEvent& h, const ConjunctiveEvent& g, const ProbabilityInterval& iv) {
        if (iv.empty())
            return false;
        bool disjoint = taxonomy.forces_false(conjoin(g, h));
        bool implied = taxonomy.entails(g, h);
        return disjoint == (iv.hi == 0) && implied == (iv.lo == 1);
    };
    return coherent(chain.b, chain.a, chain.u) && coherent(chain.a, chain.b, chain.v) &&
           coherent(chain.c, chain.b, chain.x) && coherent(chain.b, chain.c, chain.y);
}

KnowledgeBase chain_knowledge_base(const ChainPremise& chain, const TaxonomyStore& taxonomy)
{
    std::vector<ProbabilisticFormula> formulas{
        {chain.b, chain.a, chain.u},
        {chain.a, chain.b, chain.v},
        {chain.c, chain.b, chain.x},
        {chain.b, chain.c, chain.y},
    };
    return KnowledgeBase::build(taxonomy.universe(), taxonomy.formulas(), std::move(formulas));
}

} // namespace taxoprob
