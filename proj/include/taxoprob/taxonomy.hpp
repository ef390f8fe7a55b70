#pragma once

#include "taxoprob/event.hpp"

#include <memory>
#include <vector>

namespace taxoprob {

/// G -> H, read semantically as Pr(G) = Pr(GH).
struct TaxonomicFormula {
    ConjunctiveEvent lhs;
    ConjunctiveEvent rhs;

    friend bool operator==(const TaxonomicFormula&, const TaxonomicFormula&) = default;
    friend auto operator<=>(const TaxonomicFormula&, const TaxonomicFormula&) = default;
};

struct ClosureResult {
    EventBits reached;
    bool falsum = false;
};

/// The six taxonomic entailments that switch rule operands on and off:
/// alpha ABC->false, beta C->A, gamma A->C, delta BC->A, epsilon AB->C, zeta AC->B.
struct GuardFlags {
    bool alpha = false;
    bool beta = false;
    bool gamma = false;
    bool delta = false;
    bool epsilon = false;
    bool zeta = false;

    friend bool operator==(const GuardFlags&, const GuardFlags&) = default;
};

/// A set of taxonomic formulas over a fixed universe, with a linear-time
/// hull operator. Closures are memoised; the cache is shared between copies
/// and safe for concurrent readers.
class TaxonomyStore {
public:
    /// A formula in index form. Formulas with a bottom left-hand side are
    /// tautologies and are not kept here.
    struct IndexedRule {
        EventBits lhs;
        bool rhs_bottom = false;
        EventBits rhs;
    };

    TaxonomyStore();
    /// Throws UnknownIdentifierError if a formula mentions a name outside `universe`.
    TaxonomyStore(Universe universe, std::vector<TaxonomicFormula> formulas);

    [[nodiscard]] const Universe& universe() const { return universe_; }
    [[nodiscard]] const std::vector<TaxonomicFormula>& formulas() const { return formulas_; }
    [[nodiscard]] const std::vector<IndexedRule>& rules() const { return rules_; }

    [[nodiscard]] ClosureResult closure(const EventBits& seed) const;
    [[nodiscard]] ClosureResult closure(const ConjunctiveEvent& seed) const;

    [[nodiscard]] bool entails(const ConjunctiveEvent& g, const ConjunctiveEvent& h) const;
    [[nodiscard]] bool forces_false(const ConjunctiveEvent& g) const;

    // Bit-level forms for hot loops; the arguments must be non-bottom conjunctions.
    [[nodiscard]] bool entails_bits(const EventBits& g, const EventBits& h) const;
    [[nodiscard]] bool forces_false_bits(const EventBits& g) const;

    /// Whether the atom satisfies every formula (mass not forced to zero).
    [[nodiscard]] bool atom_consistent(const AtomicEvent& atom) const;

private:
    struct Cache;

    [[nodiscard]] ClosureResult compute_closure(const EventBits& seed) const;

    Universe universe_;
    std::vector<TaxonomicFormula> formulas_;
    std::vector<IndexedRule> rules_;
    std::vector<std::vector<std::size_t>> watchers_; // basic index -> rules with it on the lhs
    std::vector<std::size_t> unconditional_;         // rules with a top lhs
    std::shared_ptr<Cache> cache_;
};

GuardFlags guard_flags(const TaxonomyStore& store, const ConjunctiveEvent& a, const ConjunctiveEvent& b,
                       const ConjunctiveEvent& c);

GuardFlags guard_flags_bits(const TaxonomyStore& store, const EventBits& a, const EventBits& b, const EventBits& c);

} // namespace taxoprob
