#pragma once

#include "taxoprob/event.hpp"
#include "taxoprob/interval.hpp"
#include "taxoprob/taxonomy.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace taxoprob {

/// (H|G)[lo, hi]: conclusion H, premise G.
struct ProbabilisticFormula {
    ConjunctiveEvent conclusion;
    ConjunctiveEvent premise;
    ProbabilityInterval interval;
};

/// A query target (F|E).
struct Goal {
    ConjunctiveEvent conclusion;
    ConjunctiveEvent premise;

    [[nodiscard]] std::string to_string() const
    {
        return "(" + conclusion.to_string() + " | " + premise.to_string() + ")";
    }

    friend bool operator==(const Goal&, const Goal&) = default;
};

/// Union of a taxonomy and a set of probabilistic formulas over one universe.
/// Holds at most one formula per (conclusion, premise) pair.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    /// Validates names against the universe, rejects intervals outside [0,1]
    /// or with lo > hi, and intersects duplicate pairs, appending a warning
    /// for each. Throws ProbabilisticConflictError if a duplicate
    /// intersection is empty.
    static KnowledgeBase build(Universe universe, std::vector<TaxonomicFormula> taxonomic,
                               std::vector<ProbabilisticFormula> probabilistic,
                               std::vector<std::string>* warnings = nullptr);

    [[nodiscard]] const Universe& universe() const { return taxonomy_.universe(); }
    [[nodiscard]] const TaxonomyStore& taxonomy() const { return taxonomy_; }
    [[nodiscard]] const std::vector<ProbabilisticFormula>& probabilistic() const { return probabilistic_; }

    [[nodiscard]] std::optional<ProbabilityInterval> asserted(const ConjunctiveEvent& conclusion,
                                                              const ConjunctiveEvent& premise) const;

private:
    TaxonomyStore taxonomy_;
    std::vector<ProbabilisticFormula> probabilistic_;
    std::map<std::pair<ConjunctiveEvent, ConjunctiveEvent>, std::size_t> index_;
};

struct CoherenceViolation {
    std::size_t formula_index;
    std::string message;
};

/// Checks every (H|G)[l,u]: TKB |= GH -> false iff u = 0, and TKB |= G -> H iff l = 1.
std::vector<CoherenceViolation> validate_coherence(const KnowledgeBase& kb);

/// The interval the taxonomy and the assertions force for (h|g), starting
/// from [0,1]. Throws ProbabilisticConflictError when the asserted interval
/// contradicts the taxonomy.
ProbabilityInterval canonical_interval(const KnowledgeBase& kb, const ConjunctiveEvent& h, const ConjunctiveEvent& g);

/// The taxonomy-only part of canonical_interval (no assertions).
ProbabilityInterval taxonomic_interval(const TaxonomyStore& taxonomy, const ConjunctiveEvent& h,
                                       const ConjunctiveEvent& g);

} // namespace taxoprob
