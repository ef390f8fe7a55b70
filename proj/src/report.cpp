#include "taxoprob/report.hpp"

#include "taxoprob/oracle.hpp"

#include <set>
#include <sstream>

namespace taxoprob {

const char* status_name(RunStatus status)
{
    switch (status) {
    case RunStatus::Ok:
        return "ok";
    case RunStatus::InputError:
        return "input-error";
    case RunStatus::Incoherent:
        return "incoherent";
    case RunStatus::Conflict:
        return "conflict";
    }
    return "?";
}

int exit_code(RunStatus status)
{
    return static_cast<int>(status);
}

const char* method_name(Method method)
{
    switch (method) {
    case Method::Local:
        return "local";
    case Method::Oracle:
        return "oracle";
    case Method::Both:
        return "both";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text)
{
    if (text == "local")
        return Method::Local;
    if (text == "oracle")
        return Method::Oracle;
    if (text == "both")
        return Method::Both;
    return std::nullopt;
}

std::optional<RuleMask> parse_rule_mask(std::string_view text)
{
    if (text == "all")
        return kAllRules;
    RuleMask mask = 0;
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        if (item == "sharpening")
            mask |= rule_bit(RuleKind::Sharpening);
        else if (item == "chaining")
            mask |= rule_bit(RuleKind::Chaining);
        else if (item == "fusion")
            mask |= rule_bit(RuleKind::Fusion);
        else if (item == "combination")
            mask |= rule_bit(RuleKind::Combination);
        else
            return std::nullopt;
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    if (mask == 0)
        return std::nullopt;
    return mask;
}

std::optional<PoolPolicy> parse_pool_policy(std::string_view text)
{
    if (text == "kb-events")
        return PoolPolicy::KbEvents;
    if (text == "kb-plus-products")
        return PoolPolicy::KbPlusProducts;
    return std::nullopt;
}

namespace {

std::vector<std::string> render(const std::vector<Diagnostic>& diagnostics)
{
    std::vector<std::string> out;
    for (const auto& d : diagnostics)
        out.push_back(d.to_string());
    return out;
}

std::vector<std::string> coherence_messages(const KnowledgeBase& kb)
{
    std::vector<std::string> out;
    for (const auto& v : validate_coherence(kb))
        out.push_back(v.message);
    return out;
}

// Events of the KB that the taxonomy does not force false, plus top.
std::vector<ConjunctiveEvent> kb_events(const KnowledgeBase& kb)
{
    std::set<ConjunctiveEvent> events{ConjunctiveEvent::top()};
    auto add = [&](const ConjunctiveEvent& e) {
        if (!e.is_bottom() && !kb.taxonomy().forces_false(e))
            events.insert(e);
    };
    for (const auto& f : kb.taxonomy().formulas()) {
        add(f.lhs);
        add(f.rhs);
    }
    for (const auto& f : kb.probabilistic()) {
        add(f.conclusion);
        add(f.premise);
    }
    return {events.begin(), events.end()};
}

} // namespace

CheckReport run_check(std::string_view kb_text)
{
    CheckReport report;
    ParsedKb parsed;
    try {
        parsed = parse_kb(kb_text);
    } catch (const ParseError& e) {
        report.status = RunStatus::InputError;
        report.errors = render(e.diagnostics());
        return report;
    } catch (const ProbabilisticConflictError& e) {
        report.status = RunStatus::Conflict;
        report.errors.push_back(e.what());
        return report;
    } catch (const Error& e) {
        report.status = RunStatus::InputError;
        report.errors.push_back(e.what());
        return report;
    }
    report.warnings = render(parsed.warnings);
    const KnowledgeBase& kb = parsed.kb;
    report.coherence_violations = coherence_messages(kb);
    if (!report.coherence_violations.empty())
        report.status = RunStatus::Incoherent;

    try {
        const auto events = kb_events(kb);
        const std::size_t n = events.size();
        // A pair is known when the KB asserts or the taxonomy forces it.
        std::vector<std::vector<char>> known(n, std::vector<char>(n, 0));
        std::vector<std::vector<ProbabilityInterval>> iv(n, std::vector<ProbabilityInterval>(n));
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) {
                if (g == h)
                    continue;
                iv[g][h] = canonical_interval(kb, events[h], events[g]);
                known[g][h] = kb.asserted(events[h], events[g]).has_value() || !(iv[g][h] == ProbabilityInterval::unit());
            }
        auto linked = [&](std::size_t p, std::size_t q) { return known[p][q] && known[q][p]; };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a || !linked(a, b))
                    continue;
                for (std::size_t c = a + 1; c < n; ++c) {
                    if (c == b || !linked(b, c))
                        continue;
                    ChainPremise chain;
                    chain.a = events[a];
                    chain.b = events[b];
                    chain.c = events[c];
                    chain.u = iv[a][b];
                    chain.v = iv[b][a];
                    chain.x = iv[b][c];
                    chain.y = iv[c][b];
                    fill_taxonomic_facts(chain, kb.taxonomy());
                    ConsistencyVerdict verdict = check_consistency(chain);
                    if (!verdict.consistent)
                        report.consistent = false;
                    report.chains.push_back({events[a], events[b], events[c], std::move(verdict)});
                }
            }
    } catch (const ProbabilisticConflictError& e) {
        report.status = RunStatus::Conflict;
        report.errors.push_back(e.what());
    }
    return report;
}

namespace {

QueryReport answer(const ParsedKb& parsed, const Goal& goal, const QueryOptions& options)
{
    QueryReport report;
    report.goal = goal;
    report.method = options.method;
    report.warnings = render(parsed.warnings);
    const KnowledgeBase& kb = parsed.kb;

    auto violations = coherence_messages(kb);
    if (!violations.empty()) {
        for (auto& v : violations)
            (options.force ? report.warnings : report.errors).push_back("incoherent: " + v);
        if (!options.force) {
            report.status = RunStatus::Incoherent;
            return report;
        }
    }

    try {
        if (options.method != Method::Oracle) {
            DeductionState state;
            report.local = local_query(kb, goal, options.engine, state);
            report.skipped_chains = state.diagnostics();
            if (!state.reached_fixpoint())
                report.warnings.push_back("saturation stopped after " + std::to_string(state.sweeps()) +
                                          " sweeps without reaching a fixpoint");
        }
        if (options.method != Method::Local)
            report.oracle = tight_answer(kb, goal);
    } catch (const ProbabilisticConflictError& e) {
        report.status = RunStatus::Conflict;
        report.errors.push_back(e.what());
    } catch (const AtomSpaceTooLargeError& e) {
        report.status = RunStatus::InputError;
        report.errors.push_back(e.what());
    }
    return report;
}

QueryReport input_error(std::vector<std::string> errors, Method method)
{
    QueryReport report;
    report.status = RunStatus::InputError;
    report.method = method;
    report.errors = std::move(errors);
    return report;
}

std::optional<ParsedKb> parse_for_query(std::string_view kb_text, QueryReport& failure)
{
    try {
        return parse_kb(kb_text);
    } catch (const ParseError& e) {
        failure.status = RunStatus::InputError;
        failure.errors = render(e.diagnostics());
    } catch (const ProbabilisticConflictError& e) {
        failure.status = RunStatus::Conflict;
        failure.errors.push_back(e.what());
    } catch (const Error& e) {
        failure.status = RunStatus::InputError;
        failure.errors.push_back(e.what());
    }
    return std::nullopt;
}

} // namespace

QueryReport run_query(std::string_view kb_text, std::string_view goal_text, const QueryOptions& options)
{
    QueryReport failure;
    failure.method = options.method;
    auto parsed = parse_for_query(kb_text, failure);
    if (!parsed)
        return failure;
    Goal goal;
    try {
        goal = parse_goal(goal_text, parsed->kb.universe());
    } catch (const ParseError& e) {
        std::vector<std::string> errors;
        for (const auto& d : e.diagnostics())
            errors.push_back("goal " + d.to_string());
        return input_error(std::move(errors), options.method);
    }
    return answer(*parsed, goal, options);
}

std::vector<QueryReport> run_file_queries(std::string_view kb_text, const QueryOptions& options)
{
    QueryReport failure;
    failure.method = options.method;
    auto parsed = parse_for_query(kb_text, failure);
    if (!parsed)
        return {failure};
    if (parsed->queries.empty())
        return {input_error({"no goal given and the file has no query lines"}, options.method)};
    std::vector<QueryReport> reports;
    for (const auto& goal : parsed->queries)
        reports.push_back(answer(*parsed, goal, options));
    return reports;
}

// ------------------------------------------------------------------ output

namespace {

std::string role_list(const ChainCheck& chain)
{
    std::string out;
    for (Role role : chain.verdict.forced_false) {
        if (!out.empty())
            out += ", ";
        const auto& e = role == Role::A ? chain.a : role == Role::B ? chain.b : chain.c;
        out += std::string(role_name(role)) + "=" + e.to_string();
    }
    return out;
}

nlohmann::ordered_json interval_json(const ProbabilityInterval& iv)
{
    return {to_fraction_string(iv.lo), to_fraction_string(iv.hi)};
}

double rounded(const Rational& value, int precision)
{
    return std::stod(to_decimal_string(value, precision));
}

std::string decimal_pair(const QueryAnswer& a, int precision)
{
    return "[" + to_decimal_string(a.lower, precision) + ", " + to_decimal_string(a.upper, precision) + "]";
}

std::string describe(const QueryAnswer& a, int precision)
{
    std::string text = a.interval().to_string() + "  " + decimal_pair(a, precision);
    if (a.empty)
        text += "  (empty: no model gives the premise positive probability)";
    return text;
}

} // namespace

nlohmann::ordered_json to_json(const TraceStep& step)
{
    nlohmann::ordered_json j;
    j["index"] = step.index;
    j["sweep"] = step.sweep;
    j["rule"] = rule_name(step.rule);
    j["slot"] = slot_name(step.slot);
    j["swapped"] = step.swapped;
    j["chain"] = {{"A", step.a.to_string()}, {"B", step.b.to_string()}, {"C", step.c.to_string()}};
    j["inputs"] = {{"u", interval_json(step.u)},
                   {"v", interval_json(step.v)},
                   {"x", interval_json(step.x)},
                   {"y", interval_json(step.y)}};
    j["conclusion"] = step.conclusion.to_string();
    j["premise"] = step.premise.to_string();
    j["old"] = interval_json(step.old_interval);
    j["new"] = interval_json(step.new_interval);
    j["lower_operands"] = step.lower_operands;
    j["upper_operands"] = step.upper_operands;
    return j;
}

nlohmann::ordered_json to_json(const CheckReport& report)
{
    nlohmann::ordered_json j;
    j["status"] = status_name(report.status);
    j["errors"] = report.errors;
    j["warnings"] = report.warnings;
    j["coherent"] = report.coherence_violations.empty();
    j["coherence_violations"] = report.coherence_violations;
    j["consistent"] = report.consistent;
    auto chains = nlohmann::ordered_json::array();
    for (const auto& c : report.chains) {
        nlohmann::ordered_json entry;
        entry["A"] = c.a.to_string();
        entry["B"] = c.b.to_string();
        entry["C"] = c.c.to_string();
        entry["consistent"] = c.verdict.consistent;
        entry["fired_conditions"] = c.verdict.fired_conditions;
        auto forced = nlohmann::ordered_json::array();
        for (Role role : c.verdict.forced_false) {
            const auto& e = role == Role::A ? c.a : role == Role::B ? c.b : c.c;
            forced.push_back({{"role", role_name(role)}, {"event", e.to_string()}});
        }
        entry["forced_false"] = forced;
        chains.push_back(entry);
    }
    j["chains"] = chains;
    return j;
}

nlohmann::ordered_json to_json(const QueryReport& report, int precision, bool with_trace)
{
    nlohmann::ordered_json j;
    j["goal"] = report.goal ? nlohmann::ordered_json(report.goal->to_string()) : nlohmann::ordered_json(nullptr);
    j["method"] = method_name(report.method);
    if (report.local) {
        const auto& a = *report.local;
        nlohmann::ordered_json local;
        local["lower"] = rounded(a.lower, precision);
        local["upper"] = rounded(a.upper, precision);
        local["exact_lower"] = to_fraction_string(a.lower);
        local["exact_upper"] = to_fraction_string(a.upper);
        local["empty"] = a.empty;
        auto trace = nlohmann::ordered_json::array();
        if (with_trace)
            for (const auto& step : a.trace)
                trace.push_back(to_json(step));
        local["trace"] = trace;
        j["local"] = local;
    } else {
        j["local"] = nullptr;
    }
    if (report.oracle) {
        const auto& a = *report.oracle;
        nlohmann::ordered_json oracle;
        oracle["lower"] = rounded(a.lower, precision);
        oracle["upper"] = rounded(a.upper, precision);
        oracle["empty"] = a.empty;
        oracle["exact_lower"] = to_fraction_string(a.lower);
        oracle["exact_upper"] = to_fraction_string(a.upper);
        j["oracle"] = oracle;
    } else {
        j["oracle"] = nullptr;
    }
    if (report.local && report.oracle && !report.oracle->empty) {
        j["gap"] = {{"lower", to_fraction_string(report.oracle->lower - report.local->lower)},
                    {"upper", to_fraction_string(report.local->upper - report.oracle->upper)}};
    }
    j["status"] = status_name(report.status);
    j["errors"] = report.errors;
    j["warnings"] = report.warnings;
    return j;
}

std::string to_text(const CheckReport& report)
{
    std::ostringstream os;
    for (const auto& e : report.errors)
        os << "error: " << e << '\n';
    for (const auto& w : report.warnings)
        os << "warning: " << w << '\n';
    if (report.status == RunStatus::InputError) {
        os << "status: " << status_name(report.status) << '\n';
        return os.str();
    }
    if (report.coherence_violations.empty()) {
        os << "coherent: yes\n";
    } else {
        os << "coherent: no\n";
        for (const auto& v : report.coherence_violations)
            os << "  " << v << '\n';
    }
    os << "consistent: " << (report.consistent ? "yes" : "no") << '\n';
    for (const auto& c : report.chains) {
        if (c.verdict.consistent)
            continue;
        os << "  chain A=" << c.a.to_string() << ", B=" << c.b.to_string() << ", C=" << c.c.to_string()
           << ": condition";
        if (c.verdict.fired_conditions.size() > 1)
            os << 's';
        for (std::size_t i = 0; i < c.verdict.fired_conditions.size(); ++i)
            os << (i == 0 ? " " : ", ") << c.verdict.fired_conditions[i];
        os << "; forced false: " << role_list(c) << '\n';
    }
    os << "chains checked: " << report.chains.size() << '\n';
    os << "status: " << status_name(report.status) << '\n';
    return os.str();
}

std::string to_text(const QueryReport& report, int precision, bool with_trace)
{
    std::ostringstream os;
    for (const auto& e : report.errors)
        os << "error: " << e << '\n';
    for (const auto& w : report.warnings)
        os << "warning: " << w << '\n';
    if (report.goal)
        os << "goal:   " << report.goal->to_string() << '\n';
    if (report.local) {
        os << "local:  " << describe(*report.local, precision) << '\n';
        if (with_trace) {
            if (report.local->trace.empty())
                os << "  (no rule steps; the value is seeded from the knowledge base)\n";
            for (const auto& step : report.local->trace)
                os << "  " << step.to_string() << '\n';
        }
    }
    if (report.oracle)
        os << "oracle: " << describe(*report.oracle, precision) << '\n';
    if (report.local && report.oracle && !report.oracle->empty) {
        Rational lower_gap = report.oracle->lower - report.local->lower;
        Rational upper_gap = report.local->upper - report.oracle->upper;
        os << "gap:    lower " << to_fraction_string(lower_gap) << " (" << to_decimal_string(lower_gap, precision)
           << "), upper " << to_fraction_string(upper_gap) << " (" << to_decimal_string(upper_gap, precision) << ")\n";
    }
    os << "status: " << status_name(report.status) << '\n';
    return os.str();
}

} // namespace taxoprob
