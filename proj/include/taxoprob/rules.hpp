#pragma once

#include "taxoprob/chain.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace taxoprob {

enum class RuleKind { Sharpening, Chaining, Fusion, Combination };

const char* rule_name(RuleKind rule);

using RuleMask = unsigned;
constexpr RuleMask rule_bit(RuleKind rule) { return 1U << static_cast<unsigned>(rule); }
constexpr RuleMask kAllRules = 0xF;

/// Conclusion positions relative to the chain roles of the orientation in use.
enum class Slot {
    BGivenA,  // SHARPENING a
    AGivenB,  // SHARPENING b
    CGivenA,  // CHAINING
    BGivenAC, // FUSION a
    ACGivenB, // FUSION b
    CGivenAB, // COMBINATION a
    ABGivenC, // COMBINATION b
};

const char* slot_name(Slot slot);

// Guard flag bits for operand requirements.
enum GuardBit : unsigned {
    kAlpha = 1U << 0,
    kBeta = 1U << 1,
    kGamma = 1U << 2,
    kDelta = 1U << 3,
    kEpsilon = 1U << 4,
    kZeta = 1U << 5,
};

unsigned guard_mask(const GuardFlags& flags);

/// One min/max operand: included iff all `flags` hold and `condition`
/// (when present) holds on the bounds. The condition always makes any
/// denominator in `value` strictly positive.
struct Operand {
    const char* label;
    unsigned flags;
    bool (*condition)(const ChainBounds&);
    Rational (*value)(const ChainBounds&);
};

/// A z1 (max) or z2 (min) bound of one conclusion.
struct BoundSpec {
    RuleKind rule;
    Slot slot;
    bool lower;
    std::span<const Operand> operands;
};

/// Two transcriptions of the first non-trivial CHAINING lower-bound operand.
/// Corrected: u1(v1 + x1 - 1)/v1. Alternate: u1 + u1/v1 + u1x1/v1. Only the
/// corrected form is sound; the other is kept for the validation suite.
enum class ChainingLowerForm { Corrected, Alternate };

/// All bound specifications, in rule order.
std::span<const BoundSpec> bound_specs(ChainingLowerForm form = ChainingLowerForm::Corrected);

struct EvaluatedBound {
    Rational value;
    std::vector<const char*> attained; // labels of operands equal to the optimum
};

/// max (lower) or min (upper) over the admitted operands.
EvaluatedBound evaluate_bound(const BoundSpec& spec, const ChainBounds& bounds, unsigned guards);

struct SlotResult {
    Slot slot;
    ProbabilityInterval interval;
    std::vector<const char*> lower_operands;
    std::vector<const char*> upper_operands;
};

/// Rule evaluation without event construction. For FUSION a and
/// COMBINATION a, a taxonomically false premise yields the empty answer [1,0].
void evaluate_rule(RuleKind rule, const ChainBounds& bounds, const GuardFlags& guards, const ProductFalsity& falsity,
                   std::vector<SlotResult>& out, ChainingLowerForm form = ChainingLowerForm::Corrected);

struct Conclusion {
    ConjunctiveEvent conclusion;
    ConjunctiveEvent premise;
    ProbabilityInterval interval;
    RuleKind rule;
    Slot slot;
    bool swapped = false;
    std::vector<std::string> lower_operands;
    std::vector<std::string> upper_operands;
};

struct RuleOutput {
    std::vector<Conclusion> conclusions;
    std::optional<ConsistencyVerdict> rejected; // set when apply_all refused an inconsistent chain
};

/// (A,B,C,u,v,x,y) -> (C,B,A,y,x,v,u) with beta<->gamma and delta<->epsilon.
ChainPremise swap_chain(const ChainPremise& chain);

RuleOutput sharpening(const ChainPremise& chain);
RuleOutput chaining(const ChainPremise& chain, ChainingLowerForm form = ChainingLowerForm::Corrected);
RuleOutput fusion(const ChainPremise& chain);
RuleOutput combination(const ChainPremise& chain);

/// Every enabled rule on the chain and, when `both_orientations`, on its swap.
/// An inconsistent chain yields no conclusions and carries its verdict.
RuleOutput apply_all(const ChainPremise& chain, RuleMask enabled = kAllRules, bool both_orientations = true,
                     ChainingLowerForm form = ChainingLowerForm::Corrected);

} // namespace taxoprob
