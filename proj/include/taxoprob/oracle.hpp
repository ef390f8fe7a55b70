#pragma once

#include "taxoprob/engine_types.hpp"
#include "taxoprob/knowledge_base.hpp"

#include <cstddef>
#include <vector>

namespace taxoprob {

/// Taxonomy-consistent atoms of a KB plus two homogeneous rows per
/// probabilistic formula (H|G)[l,u]:
///   sum_{A=>GH} m_A - l * sum_{A=>G} m_A >= 0
///   u * sum_{A=>G} m_A - sum_{A=>GH} m_A >= 0
struct AtomSystem {
    struct Row {
        std::vector<Rational> coeffs; // one per atom, row reads coeffs . m >= 0
        std::size_t formula = 0;
        bool upper = false;
    };

    Universe universe;
    std::vector<AtomicEvent> atoms;
    std::vector<Row> rows;

    /// Indicator of the atoms implying `event` (all zero for bottom).
    [[nodiscard]] std::vector<bool> implying(const ConjunctiveEvent& event) const;
};

AtomSystem build_atom_system(const KnowledgeBase& kb, std::size_t atom_cap = configured_atom_cap());

/// Whether a probabilistic interpretation satisfying the KB exists.
bool kb_satisfiable(const KnowledgeBase& kb);
bool kb_satisfiable(const AtomSystem& system);

/// The tight interval for (f|e) by linear programming over the atoms;
/// the empty answer [1,0] when no model gives e positive probability.
QueryAnswer tight_answer(const AtomSystem& system, const ConjunctiveEvent& f, const ConjunctiveEvent& e);
QueryAnswer tight_answer(const KnowledgeBase& kb, const ConjunctiveEvent& f, const ConjunctiveEvent& e);
inline QueryAnswer tight_answer(const KnowledgeBase& kb, const Goal& goal)
{
    return tight_answer(kb, goal.conclusion, goal.premise);
}

/// max Pr(e) over all models; nullopt when the KB has no model.
std::optional<Rational> max_probability(const AtomSystem& system, const ConjunctiveEvent& e);

/// Semantic taxonomic entailment: every taxonomy-consistent atom implying g
/// also implies h (for h = bottom: no consistent atom implies g).
bool entails_bruteforce(const TaxonomyStore& store, const ConjunctiveEvent& g, const ConjunctiveEvent& h,
                        std::size_t atom_cap = configured_atom_cap());

} // namespace taxoprob
