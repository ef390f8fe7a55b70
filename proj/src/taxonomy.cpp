#include "taxoprob/taxonomy.hpp"

#include "taxoprob/errors.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace taxoprob {

struct TaxonomyStore::Cache {
    std::shared_mutex mutex;
    std::unordered_map<EventBits, ClosureResult, EventBitsHash> closures;
};

TaxonomyStore::TaxonomyStore() : cache_(std::make_shared<Cache>()) {}

TaxonomyStore::TaxonomyStore(Universe universe, std::vector<TaxonomicFormula> formulas)
    : universe_(std::move(universe)), formulas_(std::move(formulas)), watchers_(universe_.size()),
      cache_(std::make_shared<Cache>())
{
    for (const auto& formula : formulas_) {
        // bits_of validates every name, including those of vacuous formulas.
        EventBits lhs = universe_.bits_of(formula.lhs);
        EventBits rhs = universe_.bits_of(formula.rhs);
        if (formula.lhs.is_bottom())
            continue;
        if (!formula.rhs.is_bottom() && rhs.is_subset_of(lhs))
            continue; // nothing to derive
        std::size_t index = rules_.size();
        rules_.push_back(IndexedRule{lhs, formula.rhs.is_bottom(), rhs});
        if (lhs.none())
            unconditional_.push_back(index);
        lhs.for_each([&](std::size_t i) { watchers_[i].push_back(index); });
    }
}

ClosureResult TaxonomyStore::compute_closure(const EventBits& seed) const
{
    const std::size_t n = universe_.size();
    ClosureResult result{seed, false};
    std::vector<std::size_t> missing(rules_.size());
    for (std::size_t r = 0; r < rules_.size(); ++r)
        missing[r] = rules_[r].lhs.count();

    std::deque<std::size_t> queue;
    seed.for_each([&](std::size_t i) { queue.push_back(i); });

    auto fire = [&](std::size_t r) {
        const auto& rule = rules_[r];
        if (rule.rhs_bottom) {
            result.falsum = true;
            return;
        }
        rule.rhs.for_each([&](std::size_t i) {
            if (!result.reached.test(i)) {
                result.reached.set(i);
                queue.push_back(i);
            }
        });
    };

    for (std::size_t r : unconditional_) {
        fire(r);
        if (result.falsum)
            break;
    }
    while (!queue.empty() && !result.falsum) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t r : watchers_[i]) {
            if (--missing[r] == 0) {
                fire(r);
                if (result.falsum)
                    break;
            }
        }
    }
    if (result.falsum) {
        result.reached = EventBits(n);
        result.reached.set_all();
    }
    return result;
}

ClosureResult TaxonomyStore::closure(const EventBits& seed) const
{
    {
        std::shared_lock lock(cache_->mutex);
        if (auto it = cache_->closures.find(seed); it != cache_->closures.end())
            return it->second;
    }
    ClosureResult result = compute_closure(seed);
    std::unique_lock lock(cache_->mutex);
    cache_->closures.emplace(seed, result);
    return result;
}

ClosureResult TaxonomyStore::closure(const ConjunctiveEvent& seed) const
{
    return closure(universe_.bits_of(seed));
}

bool TaxonomyStore::entails_bits(const EventBits& g, const EventBits& h) const
{
    if (h.is_subset_of(g))
        return true;
    ClosureResult cl = closure(g);
    return cl.falsum || h.is_subset_of(cl.reached);
}

bool TaxonomyStore::forces_false_bits(const EventBits& g) const
{
    return closure(g).falsum;
}

bool TaxonomyStore::entails(const ConjunctiveEvent& g, const ConjunctiveEvent& h) const
{
    if (g.is_bottom() || h.is_top())
        return true;
    EventBits g_bits = universe_.bits_of(g);
    if (h.is_bottom())
        return forces_false_bits(g_bits);
    return entails_bits(g_bits, universe_.bits_of(h));
}

bool TaxonomyStore::forces_false(const ConjunctiveEvent& g) const
{
    return entails(g, ConjunctiveEvent::bottom());
}

bool TaxonomyStore::atom_consistent(const AtomicEvent& atom) const
{
    for (const auto& rule : rules_) {
        if (!rule.lhs.is_subset_of(atom.positives()))
            continue;
        if (rule.rhs_bottom || !rule.rhs.is_subset_of(atom.positives()))
            return false;
    }
    return true;
}

GuardFlags guard_flags_bits(const TaxonomyStore& store, const EventBits& a, const EventBits& b, const EventBits& c)
{
    GuardFlags flags;
    flags.alpha = store.forces_false_bits(a | b | c);
    flags.beta = store.entails_bits(c, a);
    flags.gamma = store.entails_bits(a, c);
    flags.delta = store.entails_bits(b | c, a);
    flags.epsilon = store.entails_bits(a | b, c);
    flags.zeta = store.entails_bits(a | c, b);
    return flags;
}

GuardFlags guard_flags(const TaxonomyStore& store, const ConjunctiveEvent& a, const ConjunctiveEvent& b,
                       const ConjunctiveEvent& c)
{
    if (a.is_bottom() || b.is_bottom() || c.is_bottom()) {
        return GuardFlags{store.forces_false(conjoin(conjoin(a, b), c)),
                          store.entails(c, a),
                          store.entails(a, c),
                          store.entails(conjoin(b, c), a),
                          store.entails(conjoin(a, b), c),
                          store.entails(conjoin(a, c), b)};
    }
    const auto& u = store.universe();
    return guard_flags_bits(store, u.bits_of(a), u.bits_of(b), u.bits_of(c));
}

} // namespace taxoprob
