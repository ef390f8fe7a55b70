#pragma once

#include "taxoprob/chain.hpp"
#include "taxoprob/engine_types.hpp"
#include "taxoprob/knowledge_base.hpp"
#include "taxoprob/rules.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace taxoprob {

enum class PoolPolicy { KbEvents, KbPlusProducts };

enum class SweepKernel {
    Parallel, // OpenMP, evaluates only chains that can still improve the state
    Serial,   // every ordered triple, one thread; the reference for tests
};

struct EngineConfig {
    RuleMask enabled_rules = kAllRules;
    bool both_orientations = true;
    PoolPolicy pool_policy = PoolPolicy::KbPlusProducts;
    int max_sweeps = 100;
    std::size_t pool_cap = 512;
    SweepKernel kernel = SweepKernel::Parallel;
};

/// Throws Error when the configuration is unusable (no rules, max_sweeps < 1).
void validate_config(const EngineConfig& config);

/// A chain skipped because an inconsistency condition fired on the current state.
struct ChainDiagnostic {
    ConjunctiveEvent a, b, c;
    ConsistencyVerdict verdict;
};

class DeductionState {
public:
    using EventId = std::uint32_t;
    static constexpr EventId kNoEvent = static_cast<EventId>(-1);

    /// Relation of a pool pair under the taxonomy alone.
    enum class PairKind : std::uint8_t { Free, Implied, Disjoint };

    struct Entry {
        ProbabilityInterval interval;
    };

    [[nodiscard]] const std::vector<ConjunctiveEvent>& pool() const { return pool_; }
    [[nodiscard]] EventId id_of(const ConjunctiveEvent& event) const;

    /// The stored interval, else the taxonomy default; nullopt when either
    /// event is outside the pool.
    [[nodiscard]] std::optional<ProbabilityInterval> interval(const ConjunctiveEvent& conclusion,
                                                              const ConjunctiveEvent& premise) const;

    /// Explicitly stored (conclusion, premise) pairs in pool order.
    [[nodiscard]] std::vector<ProbabilisticFormula> stored() const;

    [[nodiscard]] const std::vector<TraceStep>& trace() const { return trace_; }
    [[nodiscard]] const std::vector<ChainDiagnostic>& diagnostics() const { return diagnostics_; }
    [[nodiscard]] int sweeps() const { return sweeps_; }
    [[nodiscard]] bool reached_fixpoint() const { return fixpoint_; }

    /// Minimal subsequence of the trace that explains the final value of
    /// (conclusion | premise): the last writers of its bounds, followed back
    /// through the last writers of their inputs.
    [[nodiscard]] std::vector<TraceStep> explain(const ConjunctiveEvent& conclusion,
                                                 const ConjunctiveEvent& premise) const;

    friend bool operator==(const DeductionState& a, const DeductionState& b);

private:
    friend DeductionState seed_state(const KnowledgeBase&, const EngineConfig&, const std::vector<ConjunctiveEvent>&);
    friend class Saturator;

    static std::uint64_t key(EventId conclusion, EventId premise)
    {
        return (std::uint64_t{conclusion} << 32) | premise;
    }

    [[nodiscard]] PairKind kind(EventId conclusion, EventId premise) const
    {
        return kinds_[static_cast<std::size_t>(premise) * pool_.size() + conclusion];
    }
    [[nodiscard]] EventId product(EventId a, EventId b) const
    {
        return products_[static_cast<std::size_t>(a) * pool_.size() + b];
    }
    [[nodiscard]] ProbabilityInterval default_interval(EventId conclusion, EventId premise) const;
    [[nodiscard]] const ProbabilityInterval& lookup(EventId conclusion, EventId premise,
                                                    ProbabilityInterval& scratch) const;

    std::vector<ConjunctiveEvent> pool_;
    std::vector<EventBits> bits_;
    std::map<ConjunctiveEvent, EventId> ids_;
    std::vector<PairKind> kinds_;   // premise-major P x P
    std::vector<EventId> products_; // P x P, kNoEvent when the product is outside the pool
    std::unordered_map<std::uint64_t, Entry> intervals_;

    struct StepInputs {
        std::uint64_t produced;
        std::uint64_t inputs[4];
        bool lower_changed;
        bool upper_changed;
    };
    std::vector<TraceStep> trace_;
    std::vector<StepInputs> step_inputs_;
    std::vector<ChainDiagnostic> diagnostics_;
    int sweeps_ = 0;
    bool fixpoint_ = false;
};

/// Builds the pool and seeds canonical intervals for asserted pairs.
/// `extra` events (query events) join the pool before products are added.
DeductionState seed_state(const KnowledgeBase& kb, const EngineConfig& config,
                          const std::vector<ConjunctiveEvent>& extra = {});

/// Sweeps to fixpoint or max_sweeps. Throws ProbabilisticConflictError when
/// an intersection empties; the message names the offending step.
void saturate(DeductionState& state, const KnowledgeBase& kb, const EngineConfig& config);

/// Seeds with F, E and FE, saturates, and returns the state's interval for
/// (F|E) with its minimal trace.
QueryAnswer local_query(const KnowledgeBase& kb, const Goal& goal, const EngineConfig& config = {});

/// The same, also handing back the saturated state.
QueryAnswer local_query(const KnowledgeBase& kb, const Goal& goal, const EngineConfig& config,
                        DeductionState& state_out);

} // namespace taxoprob
