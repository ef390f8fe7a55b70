#include "taxoprob/engine.hpp"

#include "taxoprob/errors.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>
#include <tuple>

namespace taxoprob {

namespace {

std::string join_labels(const std::vector<std::string>& labels)
{
    std::string out;
    for (const auto& label : labels) {
        if (!out.empty())
            out += ", ";
        out += label;
    }
    return out;
}

} // namespace

std::string TraceStep::to_string() const
{
    std::ostringstream os;
    os << "#" << index << " sweep " << sweep << ": " << rule_name(rule) << (swapped ? " (swapped)" : "") << " on A=" << a.to_string()
       << ", B=" << b.to_string() << ", C=" << c.to_string() << " with u=" << u.to_string() << " v=" << v.to_string()
       << " x=" << x.to_string() << " y=" << y.to_string() << " -> (" << conclusion.to_string() << " | "
       << premise.to_string() << ") " << old_interval.to_string() << " => " << new_interval.to_string();
    if (!lower_operands.empty() || !upper_operands.empty())
        os << " [lower: " << join_labels(lower_operands) << "; upper: " << join_labels(upper_operands) << "]";
    return os.str();
}

void validate_config(const EngineConfig& config)
{
    if ((config.enabled_rules & kAllRules) == 0)
        throw Error("at least one inference rule must be enabled");
    if (config.max_sweeps < 1)
        throw Error("max_sweeps must be positive");
}

DeductionState::EventId DeductionState::id_of(const ConjunctiveEvent& event) const
{
    auto it = ids_.find(event);
    return it == ids_.end() ? kNoEvent : it->second;
}

ProbabilityInterval DeductionState::default_interval(EventId conclusion, EventId premise) const
{
    switch (kind(conclusion, premise)) {
    case PairKind::Implied:
        return ProbabilityInterval::point(1);
    case PairKind::Disjoint:
        return ProbabilityInterval::point(0);
    case PairKind::Free:
        break;
    }
    return ProbabilityInterval::unit();
}

const ProbabilityInterval& DeductionState::lookup(EventId conclusion, EventId premise,
                                                  ProbabilityInterval& scratch) const
{
    auto it = intervals_.find(key(conclusion, premise));
    if (it != intervals_.end())
        return it->second.interval;
    scratch = default_interval(conclusion, premise);
    return scratch;
}

std::optional<ProbabilityInterval> DeductionState::interval(const ConjunctiveEvent& conclusion,
                                                            const ConjunctiveEvent& premise) const
{
    EventId h = id_of(conclusion);
    EventId g = id_of(premise);
    if (h == kNoEvent || g == kNoEvent)
        return std::nullopt;
    ProbabilityInterval scratch;
    return lookup(h, g, scratch);
}

std::vector<ProbabilisticFormula> DeductionState::stored() const
{
    std::vector<std::uint64_t> keys;
    keys.reserve(intervals_.size());
    for (const auto& [k, entry] : intervals_)
        keys.push_back(k);
    // Premise-major, matching the pool order.
    std::sort(keys.begin(), keys.end(), [](std::uint64_t l, std::uint64_t r) {
        return std::make_pair(l & 0xffffffffU, l >> 32) < std::make_pair(r & 0xffffffffU, r >> 32);
    });
    std::vector<ProbabilisticFormula> out;
    out.reserve(keys.size());
    for (auto k : keys)
        out.push_back({pool_[k >> 32], pool_[k & 0xffffffffU], intervals_.at(k).interval});
    return out;
}

std::vector<TraceStep> DeductionState::explain(const ConjunctiveEvent& conclusion,
                                               const ConjunctiveEvent& premise) const
{
    EventId h = id_of(conclusion);
    EventId g = id_of(premise);
    if (h == kNoEvent || g == kNoEvent)
        return {};

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> writers;
    for (std::size_t i = 0; i < step_inputs_.size(); ++i)
        writers[step_inputs_[i].produced].push_back(i);

    std::set<std::size_t> chosen;
    std::vector<std::pair<std::uint64_t, int>> work{{key(h, g), INT_MAX}};
    std::set<std::pair<std::uint64_t, int>> seen;
    while (!work.empty()) {
        auto [k, before] = work.back();
        work.pop_back();
        if (!seen.insert({k, before}).second)
            continue;
        auto it = writers.find(k);
        if (it == writers.end())
            continue;
        std::optional<std::size_t> last_lower;
        std::optional<std::size_t> last_upper;
        for (std::size_t i : it->second) {
            if (trace_[i].sweep >= before)
                break;
            if (step_inputs_[i].lower_changed)
                last_lower = i;
            if (step_inputs_[i].upper_changed)
                last_upper = i;
        }
        for (auto step : {last_lower, last_upper}) {
            if (!step || !chosen.insert(*step).second)
                continue;
            for (auto input : step_inputs_[*step].inputs)
                work.emplace_back(input, trace_[*step].sweep);
        }
    }
    std::vector<TraceStep> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen)
        out.push_back(trace_[i]);
    return out;
}

bool operator==(const DeductionState& a, const DeductionState& b)
{
    if (a.pool_ != b.pool_ || a.intervals_.size() != b.intervals_.size() || a.trace_.size() != b.trace_.size() ||
        a.sweeps_ != b.sweeps_ || a.fixpoint_ != b.fixpoint_ || a.diagnostics_.size() != b.diagnostics_.size())
        return false;
    for (const auto& [k, entry] : a.intervals_) {
        auto it = b.intervals_.find(k);
        if (it == b.intervals_.end() || !(it->second.interval == entry.interval))
            return false;
    }
    for (std::size_t i = 0; i < a.trace_.size(); ++i)
        if (a.trace_[i].to_string() != b.trace_[i].to_string())
            return false;
    return true;
}

DeductionState seed_state(const KnowledgeBase& kb, const EngineConfig& config, const std::vector<ConjunctiveEvent>& extra)
{
    validate_config(config);
    const TaxonomyStore& tax = kb.taxonomy();
    const Universe& universe = kb.universe();

    std::set<ConjunctiveEvent> base;
    auto consider = [&](const ConjunctiveEvent& e) {
        if (!e.is_bottom() && !tax.forces_false(e))
            base.insert(e);
    };
    consider(ConjunctiveEvent::top());
    for (const auto& f : tax.formulas()) {
        consider(f.lhs);
        consider(f.rhs);
    }
    for (const auto& f : kb.probabilistic()) {
        consider(f.conclusion);
        consider(f.premise);
    }
    for (const auto& e : extra)
        consider(e);

    std::set<ConjunctiveEvent> pool_set = base;
    if (config.pool_policy == PoolPolicy::KbPlusProducts) {
        // One level of pairwise products, smallest conjunctions first, until the cap.
        std::vector<ConjunctiveEvent> base_list(base.begin(), base.end());
        std::set<std::pair<std::size_t, ConjunctiveEvent>> products;
        for (std::size_t i = 0; i < base_list.size(); ++i) {
            for (std::size_t j = i + 1; j < base_list.size(); ++j) {
                ConjunctiveEvent p = conjoin(base_list[i], base_list[j]);
                if (pool_set.count(p) != 0 || p.is_bottom() || tax.forces_false(p))
                    continue;
                products.emplace(p.conjuncts().size(), std::move(p));
            }
        }
        for (auto& [size, p] : products) {
            if (pool_set.size() >= config.pool_cap)
                break;
            pool_set.insert(p);
        }
    }

    DeductionState state;
    state.pool_.assign(pool_set.begin(), pool_set.end());
    const std::size_t n = state.pool_.size();
    if (n >= DeductionState::kNoEvent)
        throw Error("event pool too large");

    std::unordered_map<EventBits, DeductionState::EventId, EventBitsHash> by_bits;
    state.bits_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto id = static_cast<DeductionState::EventId>(i);
        state.ids_.emplace(state.pool_[i], id);
        state.bits_.push_back(universe.bits_of(state.pool_[i]));
        by_bits.emplace(state.bits_.back(), id);
    }

    state.kinds_.assign(n * n, DeductionState::PairKind::Free);
    state.products_.assign(n * n, DeductionState::kNoEvent);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t gi = 0; gi < static_cast<std::ptrdiff_t>(n); ++gi) {
        const auto g = static_cast<std::size_t>(gi);
        ClosureResult closure = tax.closure(state.bits_[g]);
        for (std::size_t h = 0; h < n; ++h) {
            EventBits both = state.bits_[g] | state.bits_[h];
            auto& kind = state.kinds_[g * n + h];
            if (state.bits_[h].is_subset_of(closure.reached))
                kind = DeductionState::PairKind::Implied;
            else if (tax.forces_false_bits(both))
                kind = DeductionState::PairKind::Disjoint;
            auto it = by_bits.find(both);
            if (it != by_bits.end())
                state.products_[g * n + h] = it->second;
        }
    }

    for (const auto& f : kb.probabilistic()) {
        auto h = state.id_of(f.conclusion);
        auto g = state.id_of(f.premise);
        if (h == DeductionState::kNoEvent || g == DeductionState::kNoEvent)
            continue;
        state.intervals_[DeductionState::key(h, g)] = {canonical_interval(kb, f.conclusion, f.premise)};
    }
    return state;
}

namespace {

using EventId = DeductionState::EventId;

struct Candidate {
    EventId conclusion;
    EventId premise;
    ProbabilityInterval interval;
    RuleKind rule;
    Slot slot;
    bool swapped;
    EventId a, b, c; // roles of the orientation used
    ProbabilityInterval u, v, x, y;
    std::vector<const char*> lower_operands;
    std::vector<const char*> upper_operands;
};

struct Rejection {
    EventId a, b, c;
    ConsistencyVerdict verdict;
};

struct TripleOutput {
    std::vector<Candidate> candidates;
    std::vector<Rejection> rejections;
};

} // namespace

class Saturator {
public:
    Saturator(DeductionState& state, const KnowledgeBase& kb, const EngineConfig& config)
        : state_(state), tax_(kb.taxonomy()), config_(config), n_(state.pool_.size())
    {
    }

    void run()
    {
        state_.fixpoint_ = false;
        for (int sweep = 1; sweep <= config_.max_sweeps; ++sweep) {
            state_.sweeps_ = sweep;
            std::vector<TripleOutput> outputs =
                config_.kernel == SweepKernel::Serial ? sweep_serial() : sweep_parallel();
            if (!merge(outputs, sweep)) {
                state_.fixpoint_ = true;
                return;
            }
        }
    }

private:
    // One output slot per first role A; within it triples appear in (B, C) order.
    std::vector<TripleOutput> sweep_serial()
    {
        std::vector<TripleOutput> outputs(n_);
        for (EventId a = 0; a < n_; ++a)
            for (EventId b = 0; b < n_; ++b)
                for (EventId c = 0; c < n_; ++c)
                    if (a != b && b != c && a != c)
                        evaluate(a, b, c, outputs[a]);
        return outputs;
    }

    std::vector<TripleOutput> sweep_parallel()
    {
        // Only chains with an informative pair (A,B) or (B,C) are evaluated.
        // In the first sweep a pair is informative when its interval differs
        // from the taxonomy default: a chain of four defaults has a
        // taxonomy-only premise, and by local completeness its conclusions
        // are the taxonomy defaults of the conclusion pairs. Later, a pair is
        // informative when the previous sweep changed it: a chain with
        // unchanged inputs reproduces conclusions already merged.
        std::vector<char> informative(n_ * n_, 0);
        auto mark = [&](std::uint64_t k) {
            auto h = static_cast<EventId>(k >> 32);
            auto g = static_cast<EventId>(k & 0xffffffffU);
            informative[std::size_t{g} * n_ + h] = 1;
            informative[std::size_t{h} * n_ + g] = 1;
        };
        if (first_sweep_) {
            for (const auto& [k, entry] : state_.intervals_)
                if (!(entry.interval == state_.default_interval(static_cast<EventId>(k >> 32),
                                                                static_cast<EventId>(k & 0xffffffffU))))
                    mark(k);
        } else {
            for (auto k : changed_)
                mark(k);
        }
        std::vector<std::vector<EventId>> neighbours(n_);
        for (EventId g = 0; g < n_; ++g)
            for (EventId h = 0; h < n_; ++h)
                if (informative[std::size_t{g} * n_ + h])
                    neighbours[g].push_back(h);

        std::vector<TripleOutput> outputs(n_);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t ai = 0; ai < static_cast<std::ptrdiff_t>(n_); ++ai) {
            const auto a = static_cast<EventId>(ai);
            for (EventId b = 0; b < n_; ++b) {
                if (a == b)
                    continue;
                if (informative[std::size_t{a} * n_ + b]) {
                    for (EventId c = 0; c < n_; ++c)
                        if (c != a && c != b)
                            evaluate(a, b, c, outputs[a]);
                } else {
                    for (EventId c : neighbours[b])
                        if (c != a)
                            evaluate(a, b, c, outputs[a]);
                }
            }
        }
        return outputs;
    }

    bool coherent(EventId h, EventId g, const ProbabilityInterval& iv) const
    {
        auto kind = state_.kind(h, g);
        return (kind == DeductionState::PairKind::Disjoint) == (iv.hi == 0) &&
               (kind == DeductionState::PairKind::Implied) == (iv.lo == 1);
    }

    void evaluate(EventId a, EventId b, EventId c, TripleOutput& out) const
    {
        ProbabilityInterval su, sv, sx, sy;
        ChainPremise chain;
        chain.u = state_.lookup(b, a, su);
        chain.v = state_.lookup(a, b, sv);
        chain.x = state_.lookup(c, b, sx);
        chain.y = state_.lookup(b, c, sy);
        if (!coherent(b, a, chain.u) || !coherent(a, b, chain.v) || !coherent(c, b, chain.x) ||
            !coherent(b, c, chain.y))
            return;

        const auto& bits = state_.bits_;
        using Kind = DeductionState::PairKind;
        GuardFlags& g = chain.guards;
        g.alpha = tax_.forces_false_bits(bits[a] | bits[b] | bits[c]);
        g.beta = state_.kind(a, c) == Kind::Implied;
        g.gamma = state_.kind(c, a) == Kind::Implied;
        g.delta = tax_.entails_bits(bits[b] | bits[c], bits[a]);
        g.epsilon = tax_.entails_bits(bits[a] | bits[b], bits[c]);
        g.zeta = tax_.entails_bits(bits[a] | bits[c], bits[b]);
        chain.falsity = {state_.kind(b, a) == Kind::Disjoint, state_.kind(c, a) == Kind::Disjoint,
                         state_.kind(c, b) == Kind::Disjoint};

        ConsistencyVerdict verdict = check_consistency(chain);
        if (!verdict.consistent) {
            out.rejections.push_back({a, b, c, std::move(verdict)});
            return;
        }

        emit(chain, a, b, c, false, out);
        if (config_.both_orientations)
            emit(swap_chain(chain), c, b, a, true, out);
    }

    std::pair<EventId, EventId> slot_ids(Slot slot, EventId a, EventId b, EventId c) const
    {
        switch (slot) {
        case Slot::BGivenA:
            return {b, a};
        case Slot::AGivenB:
            return {a, b};
        case Slot::CGivenA:
            return {c, a};
        case Slot::BGivenAC:
            return {b, state_.product(a, c)};
        case Slot::ACGivenB:
            return {state_.product(a, c), b};
        case Slot::CGivenAB:
            return {c, state_.product(a, b)};
        case Slot::ABGivenC:
            return {state_.product(a, b), c};
        }
        return {DeductionState::kNoEvent, DeductionState::kNoEvent};
    }

    void emit(const ChainPremise& chain, EventId a, EventId b, EventId c, bool swapped, TripleOutput& out) const
    {
        const ChainBounds bounds = ChainBounds::of(chain);
        std::vector<SlotResult> slots;
        for (RuleKind rule : {RuleKind::Sharpening, RuleKind::Chaining, RuleKind::Fusion, RuleKind::Combination}) {
            if ((config_.enabled_rules & rule_bit(rule)) == 0)
                continue;
            slots.clear();
            evaluate_rule(rule, bounds, chain.guards, chain.falsity, slots);
            for (auto& s : slots) {
                auto [h, g] = slot_ids(s.slot, a, b, c);
                // Conclusions outside the pool are dropped; taxonomy-false
                // premises never enter the pool.
                if (h == DeductionState::kNoEvent || g == DeductionState::kNoEvent)
                    continue;
                ProbabilityInterval scratch;
                const ProbabilityInterval& current = state_.lookup(h, g, scratch);
                if (current.intersect(s.interval) == current)
                    continue;
                out.candidates.push_back({h, g, std::move(s.interval), rule, s.slot, swapped, a, b, c, chain.u, chain.v,
                                          chain.x, chain.y, std::move(s.lower_operands),
                                          std::move(s.upper_operands)});
            }
        }
    }

    // Every candidate read the sweep-start state, so each step is recorded
    // against that snapshot; the merged value is the intersection of all of them.
    bool merge(std::vector<TripleOutput>& outputs, int sweep)
    {
        const std::size_t first_step = state_.trace_.size();
        std::unordered_map<std::uint64_t, ProbabilityInterval> merged;
        for (auto& out : outputs) {
            for (auto& r : out.rejections) {
                if (!rejected_.insert({r.a, r.b, r.c}).second)
                    continue;
                state_.diagnostics_.push_back(
                    {state_.pool_[r.a], state_.pool_[r.b], state_.pool_[r.c], std::move(r.verdict)});
            }
            for (auto& cand : out.candidates) {
                const auto k = DeductionState::key(cand.conclusion, cand.premise);
                ProbabilityInterval scratch;
                const ProbabilityInterval& old = state_.lookup(cand.conclusion, cand.premise, scratch);
                ProbabilityInterval next = old.intersect(cand.interval);
                if (next == old)
                    continue;
                TraceStep step = make_step(cand, old, next, sweep);
                auto [it, fresh] = merged.try_emplace(k, next);
                if (!fresh)
                    it->second = it->second.intersect(next);
                if (it->second.empty())
                    throw ProbabilisticConflictError("probabilistic conflict: " + step.to_string() +
                                                     " contradicts earlier steps of sweep " + std::to_string(sweep));
                state_.step_inputs_.push_back({k,
                                               {DeductionState::key(cand.b, cand.a), DeductionState::key(cand.a, cand.b),
                                                DeductionState::key(cand.c, cand.b), DeductionState::key(cand.b, cand.c)},
                                               false,
                                               false});
                state_.trace_.push_back(std::move(step));
            }
        }
        // A step explains a bound when it moved it to the merged value.
        for (std::size_t i = first_step; i < state_.trace_.size(); ++i) {
            const auto& step = state_.trace_[i];
            auto& inputs = state_.step_inputs_[i];
            const auto& final_value = merged.at(inputs.produced);
            inputs.lower_changed = step.new_interval.lo != step.old_interval.lo && step.new_interval.lo == final_value.lo;
            inputs.upper_changed = step.new_interval.hi != step.old_interval.hi && step.new_interval.hi == final_value.hi;
        }
        first_sweep_ = false;
        changed_.clear();
        for (auto& [k, value] : merged) {
            state_.intervals_[k] = {std::move(value)};
            changed_.push_back(k);
        }
        return !merged.empty();
    }

    TraceStep make_step(const Candidate& cand, const ProbabilityInterval& old, const ProbabilityInterval& next,
                        int sweep) const
    {
        TraceStep step;
        step.index = state_.trace_.size();
        step.sweep = sweep;
        step.rule = cand.rule;
        step.slot = cand.slot;
        step.swapped = cand.swapped;
        step.a = state_.pool_[cand.a];
        step.b = state_.pool_[cand.b];
        step.c = state_.pool_[cand.c];
        step.u = cand.u;
        step.v = cand.v;
        step.x = cand.x;
        step.y = cand.y;
        step.conclusion = state_.pool_[cand.conclusion];
        step.premise = state_.pool_[cand.premise];
        step.old_interval = old;
        step.new_interval = next;
        step.lower_operands.assign(cand.lower_operands.begin(), cand.lower_operands.end());
        step.upper_operands.assign(cand.upper_operands.begin(), cand.upper_operands.end());
        return step;
    }

    DeductionState& state_;
    const TaxonomyStore& tax_;
    const EngineConfig& config_;
    const std::size_t n_;
    std::set<std::tuple<EventId, EventId, EventId>> rejected_;
    bool first_sweep_ = true;
    std::vector<std::uint64_t> changed_; // keys the last merge changed
};

void saturate(DeductionState& state, const KnowledgeBase& kb, const EngineConfig& config)
{
    validate_config(config);
    Saturator(state, kb, config).run();
}

QueryAnswer local_query(const KnowledgeBase& kb, const Goal& goal, const EngineConfig& config,
                        DeductionState& state_out)
{
    const TaxonomyStore& tax = kb.taxonomy();
    const ConjunctiveEvent& f = goal.conclusion;
    const ConjunctiveEvent& e = goal.premise;
    // Validates the goal against the universe.
    (void)kb.universe().bits_of(f);
    (void)kb.universe().bits_of(e);

    state_out = seed_state(kb, config, {f, e, conjoin(f, e)});
    saturate(state_out, kb, config);

    if (e.is_bottom() || tax.forces_false(e))
        return QueryAnswer::of(ProbabilityInterval::empty_answer());
    auto interval = state_out.interval(f, e);
    if (!interval)
        return QueryAnswer::of(taxonomic_interval(tax, f, e));
    QueryAnswer answer = QueryAnswer::of(*interval);
    answer.trace = state_out.explain(f, e);
    return answer;
}

QueryAnswer local_query(const KnowledgeBase& kb, const Goal& goal, const EngineConfig& config)
{
    DeductionState state;
    return local_query(kb, goal, config, state);
}

} // namespace taxoprob
