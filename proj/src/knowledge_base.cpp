#include "taxoprob/knowledge_base.hpp"

#include "taxoprob/errors.hpp"

namespace taxoprob {

std::string ProbabilityInterval::to_string() const
{
    return "[" + to_fraction_string(lo) + ", " + to_fraction_string(hi) + "]";
}

std::string ProbabilityInterval::to_decimal_string(int places) const
{
    return "[" + taxoprob::to_decimal_string(lo, places) + ", " + taxoprob::to_decimal_string(hi, places) + "]";
}

KnowledgeBase KnowledgeBase::build(Universe universe, std::vector<TaxonomicFormula> taxonomic,
                                   std::vector<ProbabilisticFormula> probabilistic, std::vector<std::string>* warnings)
{
    KnowledgeBase kb;
    kb.taxonomy_ = TaxonomyStore(std::move(universe), std::move(taxonomic));
    const auto& u = kb.taxonomy_.universe();

    for (auto& formula : probabilistic) {
        (void)u.bits_of(formula.conclusion);
        (void)u.bits_of(formula.premise);
        if (!formula.interval.within_unit())
            throw Error("bound out of [0,1] in (" + formula.conclusion.to_string() + " | " +
                        formula.premise.to_string() + ")");
        if (formula.interval.empty())
            throw Error("lower exceeds upper in (" + formula.conclusion.to_string() + " | " +
                        formula.premise.to_string() + ")");

        auto key = std::make_pair(formula.conclusion, formula.premise);
        if (auto it = kb.index_.find(key); it != kb.index_.end()) {
            auto& existing = kb.probabilistic_[it->second];
            ProbabilityInterval merged = existing.interval.intersect(formula.interval);
            if (merged.empty())
                throw ProbabilisticConflictError("duplicate assertions for (" + formula.conclusion.to_string() + " | " +
                                                 formula.premise.to_string() + ") have an empty intersection");
            if (warnings != nullptr)
                warnings->push_back("duplicate assertion for (" + formula.conclusion.to_string() + " | " +
                                    formula.premise.to_string() + "); intervals intersected to " +
                                    merged.to_string());
            existing.interval = merged;
            continue;
        }
        kb.index_.emplace(std::move(key), kb.probabilistic_.size());
        kb.probabilistic_.push_back(std::move(formula));
    }
    return kb;
}

std::optional<ProbabilityInterval> KnowledgeBase::asserted(const ConjunctiveEvent& conclusion,
                                                           const ConjunctiveEvent& premise) const
{
    auto it = index_.find(std::make_pair(conclusion, premise));
    if (it == index_.end())
        return std::nullopt;
    return probabilistic_[it->second].interval;
}

std::vector<CoherenceViolation> validate_coherence(const KnowledgeBase& kb)
{
    std::vector<CoherenceViolation> violations;
    const auto& tkb = kb.taxonomy();
    for (std::size_t i = 0; i < kb.probabilistic().size(); ++i) {
        const auto& f = kb.probabilistic()[i];
        std::string label = "(" + f.conclusion.to_string() + " | " + f.premise.to_string() + ")" + f.interval.to_string();

        bool disjoint = tkb.forces_false(conjoin(f.premise, f.conclusion));
        bool zero_upper = f.interval.hi == 0;
        if (disjoint && !zero_upper)
            violations.push_back({i, label + ": taxonomy entails premise and conclusion are disjoint, upper must be 0"});
        else if (!disjoint && zero_upper)
            violations.push_back({i, label + ": upper is 0 but the taxonomy does not make premise and conclusion disjoint"});

        bool implied = tkb.entails(f.premise, f.conclusion);
        bool unit_lower = f.interval.lo == 1;
        if (implied && !unit_lower)
            violations.push_back({i, label + ": taxonomy entails premise -> conclusion, lower must be 1"});
        else if (!implied && unit_lower)
            violations.push_back({i, label + ": lower is 1 but the taxonomy does not entail premise -> conclusion"});
    }
    return violations;
}

ProbabilityInterval taxonomic_interval(const TaxonomyStore& taxonomy, const ConjunctiveEvent& h,
                                       const ConjunctiveEvent& g)
{
    ProbabilityInterval interval = ProbabilityInterval::unit();
    if (taxonomy.entails(g, h))
        interval = ProbabilityInterval::point(1);
    if (taxonomy.forces_false(conjoin(g, h)))
        interval = ProbabilityInterval::point(0);
    return interval;
}

ProbabilityInterval canonical_interval(const KnowledgeBase& kb, const ConjunctiveEvent& h, const ConjunctiveEvent& g)
{
    ProbabilityInterval interval = taxonomic_interval(kb.taxonomy(), h, g);
    if (auto asserted = kb.asserted(h, g)) {
        interval = interval.intersect(*asserted);
        if (interval.empty())
            throw ProbabilisticConflictError("probabilistic conflict: asserted (" + h.to_string() + " | " +
                                             g.to_string() + ")" + asserted->to_string() +
                                             " contradicts the taxonomy");
    }
    return interval;
}

} // namespace taxoprob
