#include "taxoprob/rules.hpp"

#include <array>

namespace taxoprob {

const char* rule_name(RuleKind rule)
{
    switch (rule) {
    case RuleKind::Sharpening:
        return "SHARPENING";
    case RuleKind::Chaining:
        return "CHAINING";
    case RuleKind::Fusion:
        return "FUSION";
    case RuleKind::Combination:
        return "COMBINATION";
    }
    return "?";
}

const char* slot_name(Slot slot)
{
    switch (slot) {
    case Slot::BGivenA:
        return "(B|A)";
    case Slot::AGivenB:
        return "(A|B)";
    case Slot::CGivenA:
        return "(C|A)";
    case Slot::BGivenAC:
        return "(B|AC)";
    case Slot::ACGivenB:
        return "(AC|B)";
    case Slot::CGivenAB:
        return "(C|AB)";
    case Slot::ABGivenC:
        return "(AB|C)";
    }
    return "?";
}

unsigned guard_mask(const GuardFlags& f)
{
    return (f.alpha ? kAlpha : 0U) | (f.beta ? kBeta : 0U) | (f.gamma ? kGamma : 0U) | (f.delta ? kDelta : 0U) |
           (f.epsilon ? kEpsilon : 0U) | (f.zeta ? kZeta : 0U);
}

namespace {

Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }

#define VAL(expr) +[]([[maybe_unused]] const ChainBounds& b) -> Rational { return Rational(expr); }
#define WHEN(expr) +[](const ChainBounds& b) -> bool { return (expr); }

// ----------------------------------------------------------------- SHARPENING

const Operand kSharpenBALower[] = {
    {"u1", 0, nullptr, VAL(b.u1)},
    {"v1y1/(v1y1+x2(1-y1))", kGamma, WHEN(b.v1 * b.y1 > 0), VAL(b.v1 * b.y1 / (b.v1 * b.y1 + b.x2 * (1 - b.y1)))},
    {"y1", kGamma | kDelta, nullptr, VAL(b.y1)},
};

const Operand kSharpenBAUpper[] = {
    {"u2", 0, nullptr, VAL(b.u2)},
    {"v2y2/(v2y2+x1(1-y2))", kBeta, WHEN(b.v2 * b.y2 > 0), VAL(b.v2 * b.y2 / (b.v2 * b.y2 + b.x1 * (1 - b.y2)))},
    {"y2", kBeta | kEpsilon, nullptr, VAL(b.y2)},
};

const Operand kSharpenABLower[] = {
    {"u1x1(1-y2)/(y2(1-u1))", kBeta, WHEN(1 > b.u1 && b.u1 > b.y2 && b.y2 > 0),
     VAL(b.u1 * b.x1 * (1 - b.y2) / (b.y2 * (1 - b.u1)))},
    {"v1", 0, nullptr, VAL(b.v1)},
    {"x1", kDelta, nullptr, VAL(b.x1)},
};

const Operand kSharpenABUpper[] = {
    {"1-x1", kAlpha, nullptr, VAL(1 - b.x1)},
    {"u2x2(1-y1)/(y1(1-u2))", kGamma, WHEN(b.y1 > b.u2), VAL(b.u2 * b.x2 * (1 - b.y1) / (b.y1 * (1 - b.u2)))},
    {"v2", 0, nullptr, VAL(b.v2)},
    {"x2", kEpsilon, nullptr, VAL(b.x2)},
};

// ------------------------------------------------------------------- CHAINING

#define CHAINING_LOWER_TAIL                                                                                            \
    {"u1", kEpsilon, nullptr, VAL(b.u1)}, {"u1x1/v2", kDelta, WHEN(b.v2 > 0), VAL(b.u1 * b.x1 / b.v2)},               \
        {"u1x1/(v2y2)", kBeta, WHEN(b.v2 * b.y2 > 0), VAL(b.u1 * b.x1 / (b.v2 * b.y2))},                               \
        {"u1/y2", kBeta | kEpsilon, WHEN(b.y2 > 0), VAL(b.u1 / b.y2)}, {"1", kGamma, nullptr, VAL(1)},

const Operand kChainingLower[] = {
    {"0", 0, nullptr, VAL(0)},
    {"u1(v1+x1-1)/v1", 0, WHEN(b.v1 + b.x1 > 1), VAL(b.u1 * (b.v1 + b.x1 - 1) / b.v1)},
    CHAINING_LOWER_TAIL
};

const Operand kChainingLowerAlternate[] = {
    {"0", 0, nullptr, VAL(0)},
    {"u1+u1/v1+u1x1/v1", 0, WHEN(b.v1 + b.x1 > 1), VAL(b.u1 + b.u1 / b.v1 + b.u1 * b.x1 / b.v1)},
    CHAINING_LOWER_TAIL
};

#undef CHAINING_LOWER_TAIL

const Operand kChainingUpper[] = {
    {"1", 0, nullptr, VAL(1)},
    {"1-u1+u1x2/v1", 0, WHEN(b.v1 > b.x2), VAL(1 - b.u1 + b.u1 * b.x2 / b.v1)},
    {"u2x2/(v1y1)", 0, WHEN(b.v1 * b.y1 > 0), VAL(b.u2 * b.x2 / (b.v1 * b.y1))},
    {"x2/(v1y1+x2(1-y1))", 0, WHEN(b.v1 > b.x2 && b.y1 > 0), VAL(b.x2 / (b.v1 * b.y1 + b.x2 * (1 - b.y1)))},
    {"1-u1", kAlpha, nullptr, VAL(1 - b.u1)},
    {"u2-u2x2/v1+u2x2/(v1y1)", 0, WHEN(b.v1 * b.y1 > 0),
     VAL(b.u2 - b.u2 * b.x2 / b.v1 + b.u2 * b.x2 / (b.v1 * b.y1))},
    {"u2/y1", kDelta, WHEN(b.y1 > b.u2), VAL(b.u2 / b.y1)},
    {"(1-u1)/(1-y2)", kBeta, WHEN(b.u1 > b.y2), VAL((1 - b.u1) / (1 - b.y2))},
    {"u2x2/v1", kZeta, WHEN(b.v1 > b.x2), VAL(b.u2 * b.x2 / b.v1)},
    {"u2", kZeta, nullptr, VAL(b.u2)},
    {"u2(1-y1)min(x2,1-v1)/(v1y1)", kAlpha, WHEN(b.v1 * b.y1 > 0),
     VAL(b.u2 * (1 - b.y1) * min_of(b.x2, 1 - b.v1) / (b.v1 * b.y1))},
    {"0", kAlpha | kZeta, nullptr, VAL(0)},
    {"(1-y1)min(x2,1-v1)/(v1y1+(1-y1)min(x2,1-v1))", kAlpha, WHEN(b.v1 * b.y1 > 0),
     VAL((1 - b.y1) * min_of(b.x2, 1 - b.v1) / (b.v1 * b.y1 + (1 - b.y1) * min_of(b.x2, 1 - b.v1)))},
};

// --------------------------------------------------------------------- FUSION

const Operand kFusionBACLower[] = {
    {"y1(v1+x1-1)/(y1(v1-1)+x1)", 0, WHEN(b.x1 + b.v1 > 1),
     VAL(b.y1 * (b.v1 + b.x1 - 1) / (b.y1 * (b.v1 - 1) + b.x1))},
    {"u1(x1+v1-1)/(u1(x1-1)+v1)", 0, WHEN(b.x1 + b.v1 > 1),
     VAL(b.u1 * (b.x1 + b.v1 - 1) / (b.u1 * (b.x1 - 1) + b.v1))},
    {"u1", kEpsilon, nullptr, VAL(b.u1)},
    {"y1", kDelta, nullptr, VAL(b.y1)},
    {"v1y1/(v1y1+x2(1-y1))", kEpsilon, WHEN(b.v1 * b.y1 > 0), VAL(b.v1 * b.y1 / (b.v1 * b.y1 + b.x2 * (1 - b.y1)))},
    {"x1u1/(x1u1+v2(1-u1))", kDelta, WHEN(b.x1 * b.u1 > 0), VAL(b.x1 * b.u1 / (b.x1 * b.u1 + b.v2 * (1 - b.u1)))},
    {"0", 0, nullptr, VAL(0)},
    {"1", kZeta, nullptr, VAL(1)},
};

const Operand kFusionBACUpper[] = {
    {"1", 0, nullptr, VAL(1)},
    {"u2", kGamma, nullptr, VAL(b.u2)},
    {"y2", kBeta, nullptr, VAL(b.y2)},
    {"0", kAlpha, nullptr, VAL(0)},
};

const Operand kFusionACBLower[] = {
    {"0", 0, nullptr, VAL(0)},
    {"x1+v1-1", 0, nullptr, VAL(b.x1 + b.v1 - 1)},
    {"x1", kDelta, nullptr, VAL(b.x1)},
    {"v1", kEpsilon, nullptr, VAL(b.v1)},
};

const Operand kFusionACBUpper[] = {
    {"v2", 0, nullptr, VAL(b.v2)},
    {"x2", 0, nullptr, VAL(b.x2)},
    {"u2x2(1-y1)/(y1(1-u2))", kGamma, WHEN(b.y1 > b.u2), VAL(b.u2 * b.x2 * (1 - b.y1) / (b.y1 * (1 - b.u2)))},
    {"v2y2(1-u1)/(u1(1-y2))", kBeta, WHEN(b.u1 > b.y2), VAL(b.v2 * b.y2 * (1 - b.u1) / (b.u1 * (1 - b.y2)))},
    {"0", kAlpha, nullptr, VAL(0)},
};

// ---------------------------------------------------------------- COMBINATION

const Operand kCombinationCABLower[] = {
    {"0", 0, nullptr, VAL(0)},
    {"1-1/v1+x1/v1", 0, WHEN(b.v1 + b.x1 > 1), VAL(1 - 1 / b.v1 + b.x1 / b.v1)},
    {"1", kEpsilon, nullptr, VAL(1)},
    {"x1/v2", kDelta, WHEN(b.v2 > 0), VAL(b.x1 / b.v2)},
};

const Operand kCombinationCABUpper[] = {
    {"1", 0, nullptr, VAL(1)},
    {"y2(1-u1)/(u1(1-y2))", kBeta, WHEN(b.u1 > b.y2), VAL(b.y2 * (1 - b.u1) / (b.u1 * (1 - b.y2)))},
    {"0", kAlpha, nullptr, VAL(0)},
    {"x2/v1", 0, WHEN(b.v1 > b.x2), VAL(b.x2 / b.v1)},
};

const Operand kCombinationABCLower[] = {
    {"0", 0, nullptr, VAL(0)},
    {"v1y1/x1-y1/x1+y1", 0, WHEN(b.v1 + b.x1 > 1), VAL(b.v1 * b.y1 / b.x1 - b.y1 / b.x1 + b.y1)},
    {"y1", kDelta, nullptr, VAL(b.y1)},
    {"u1", kBeta | kEpsilon, nullptr, VAL(b.u1)},
    {"u1x1/(u1x1+v2(1-u1))", kBeta, WHEN(b.u1 * b.x1 > 0), VAL(b.u1 * b.x1 / (b.u1 * b.x1 + b.v2 * (1 - b.u1)))},
    {"v1y1/x2", kEpsilon, WHEN(b.x2 > 0), VAL(b.v1 * b.y1 / b.x2)},
};

const Operand kCombinationABCUpper[] = {
    {"v2y2/x1", 0, WHEN(b.x1 > b.v2), VAL(b.v2 * b.y2 / b.x1)},
    {"u2(1-y1)/(1-u2)", kGamma, WHEN(1 > b.u2), VAL(b.u2 * (1 - b.y1) / (1 - b.u2))},
    {"u2v2/(u2x1+v2(1-u2))", kGamma, WHEN(b.x1 > b.v2 && b.v2 > 0),
     VAL(b.u2 * b.v2 / (b.u2 * b.x1 + b.v2 * (1 - b.u2)))},
    {"0", kAlpha, nullptr, VAL(0)},
    {"y2", 0, nullptr, VAL(b.y2)},
    {"u2", kGamma, nullptr, VAL(b.u2)},
};

#undef VAL
#undef WHEN

template <std::size_t N>
std::span<const Operand> ops(const Operand (&table)[N])
{
    return {table, N};
}

const std::array<BoundSpec, 14> kSpecs = {{
    {RuleKind::Sharpening, Slot::BGivenA, true, ops(kSharpenBALower)},
    {RuleKind::Sharpening, Slot::BGivenA, false, ops(kSharpenBAUpper)},
    {RuleKind::Sharpening, Slot::AGivenB, true, ops(kSharpenABLower)},
    {RuleKind::Sharpening, Slot::AGivenB, false, ops(kSharpenABUpper)},
    {RuleKind::Chaining, Slot::CGivenA, true, ops(kChainingLower)},
    {RuleKind::Chaining, Slot::CGivenA, false, ops(kChainingUpper)},
    {RuleKind::Fusion, Slot::BGivenAC, true, ops(kFusionBACLower)},
    {RuleKind::Fusion, Slot::BGivenAC, false, ops(kFusionBACUpper)},
    {RuleKind::Fusion, Slot::ACGivenB, true, ops(kFusionACBLower)},
    {RuleKind::Fusion, Slot::ACGivenB, false, ops(kFusionACBUpper)},
    {RuleKind::Combination, Slot::CGivenAB, true, ops(kCombinationCABLower)},
    {RuleKind::Combination, Slot::CGivenAB, false, ops(kCombinationCABUpper)},
    {RuleKind::Combination, Slot::ABGivenC, true, ops(kCombinationABCLower)},
    {RuleKind::Combination, Slot::ABGivenC, false, ops(kCombinationABCUpper)},
}};

const std::array<BoundSpec, 14> kSpecsAlternate = [] {
    auto specs = kSpecs;
    specs[4].operands = ops(kChainingLowerAlternate);
    return specs;
}();

// Index of the first spec for a rule inside kSpecs.
std::size_t first_spec(RuleKind rule)
{
    switch (rule) {
    case RuleKind::Sharpening:
        return 0;
    case RuleKind::Chaining:
        return 4;
    case RuleKind::Fusion:
        return 6;
    case RuleKind::Combination:
        return 10;
    }
    return 0;
}

std::size_t spec_count(RuleKind rule) { return rule == RuleKind::Chaining ? 2 : 4; }

} // namespace

std::span<const BoundSpec> bound_specs(ChainingLowerForm form)
{
    return form == ChainingLowerForm::Corrected ? std::span<const BoundSpec>(kSpecs)
                                                : std::span<const BoundSpec>(kSpecsAlternate);
}

EvaluatedBound evaluate_bound(const BoundSpec& spec, const ChainBounds& bounds, unsigned guards)
{
    EvaluatedBound result;
    bool any = false;
    for (const auto& operand : spec.operands) {
        if ((operand.flags & guards) != operand.flags)
            continue;
        if (operand.condition != nullptr && !operand.condition(bounds))
            continue;
        Rational value = operand.value(bounds);
        bool better = !any || (spec.lower ? value > result.value : value < result.value);
        if (better) {
            result.value = std::move(value);
            result.attained.assign(1, operand.label);
            any = true;
        } else if (value == result.value) {
            result.attained.push_back(operand.label);
        }
    }
    if (!any)
        result.value = spec.lower ? Rational(0) : Rational(1);
    return result;
}

void evaluate_rule(RuleKind rule, const ChainBounds& bounds, const GuardFlags& guards, const ProductFalsity& falsity,
                   std::vector<SlotResult>& out, ChainingLowerForm form)
{
    const unsigned mask = guard_mask(guards);
    auto specs = bound_specs(form);
    const std::size_t first = first_spec(rule);
    for (std::size_t i = first; i < first + spec_count(rule); i += 2) {
        const BoundSpec& lower = specs[i];
        const BoundSpec& upper = specs[i + 1];
        bool false_premise = (lower.slot == Slot::BGivenAC && falsity.ac) || (lower.slot == Slot::CGivenAB && falsity.ab);
        if (false_premise) {
            out.push_back({lower.slot, ProbabilityInterval::empty_answer(), {}, {}});
            continue;
        }
        EvaluatedBound z1 = evaluate_bound(lower, bounds, mask);
        EvaluatedBound z2 = evaluate_bound(upper, bounds, mask);
        out.push_back({lower.slot, {std::move(z1.value), std::move(z2.value)}, std::move(z1.attained),
                       std::move(z2.attained)});
    }
}

ChainPremise swap_chain(const ChainPremise& chain)
{
    ChainPremise s;
    s.a = chain.c;
    s.b = chain.b;
    s.c = chain.a;
    s.u = chain.y;
    s.v = chain.x;
    s.x = chain.v;
    s.y = chain.u;
    s.guards = {chain.guards.alpha, chain.guards.gamma, chain.guards.beta,
                chain.guards.epsilon, chain.guards.delta, chain.guards.zeta};
    s.falsity = {chain.falsity.bc, chain.falsity.ac, chain.falsity.ab};
    return s;
}

namespace {

std::pair<ConjunctiveEvent, ConjunctiveEvent> slot_events(const ChainPremise& chain, Slot slot)
{
    switch (slot) {
    case Slot::BGivenA:
        return {chain.b, chain.a};
    case Slot::AGivenB:
        return {chain.a, chain.b};
    case Slot::CGivenA:
        return {chain.c, chain.a};
    case Slot::BGivenAC:
        return {chain.b, conjoin(chain.a, chain.c)};
    case Slot::ACGivenB:
        return {conjoin(chain.a, chain.c), chain.b};
    case Slot::CGivenAB:
        return {chain.c, conjoin(chain.a, chain.b)};
    case Slot::ABGivenC:
        return {conjoin(chain.a, chain.b), chain.c};
    }
    return {};
}

void append_rule(RuleKind rule, const ChainPremise& chain, bool swapped, ChainingLowerForm form, RuleOutput& output)
{
    std::vector<SlotResult> slots;
    evaluate_rule(rule, ChainBounds::of(chain), chain.guards, chain.falsity, slots, form);
    for (auto& s : slots) {
        auto [conclusion, premise] = slot_events(chain, s.slot);
        Conclusion c{std::move(conclusion), std::move(premise), std::move(s.interval), rule, s.slot, swapped, {}, {}};
        c.lower_operands.assign(s.lower_operands.begin(), s.lower_operands.end());
        c.upper_operands.assign(s.upper_operands.begin(), s.upper_operands.end());
        output.conclusions.push_back(std::move(c));
    }
}

} // namespace

RuleOutput sharpening(const ChainPremise& chain)
{
    RuleOutput out;
    append_rule(RuleKind::Sharpening, chain, false, ChainingLowerForm::Corrected, out);
    return out;
}

RuleOutput chaining(const ChainPremise& chain, ChainingLowerForm form)
{
    RuleOutput out;
    append_rule(RuleKind::Chaining, chain, false, form, out);
    return out;
}

RuleOutput fusion(const ChainPremise& chain)
{
    RuleOutput out;
    append_rule(RuleKind::Fusion, chain, false, ChainingLowerForm::Corrected, out);
    return out;
}

RuleOutput combination(const ChainPremise& chain)
{
    RuleOutput out;
    append_rule(RuleKind::Combination, chain, false, ChainingLowerForm::Corrected, out);
    return out;
}

RuleOutput apply_all(const ChainPremise& chain, RuleMask enabled, bool both_orientations, ChainingLowerForm form)
{
    RuleOutput out;
    ConsistencyVerdict verdict = check_consistency(chain);
    if (!verdict.consistent) {
        out.rejected = std::move(verdict);
        return out;
    }
    const ChainPremise swapped = swap_chain(chain);
    for (RuleKind rule : {RuleKind::Sharpening, RuleKind::Chaining, RuleKind::Fusion, RuleKind::Combination}) {
        if ((enabled & rule_bit(rule)) == 0)
            continue;
        append_rule(rule, chain, false, form, out);
        if (both_orientations)
            append_rule(rule, swapped, true, form, out);
    }
    return out;
}

} // namespace taxoprob
