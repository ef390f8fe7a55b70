#pragma once

#include "taxoprob/engine.hpp"
#include "taxoprob/kb_format.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace taxoprob {

enum class RunStatus { Ok, InputError, Incoherent, Conflict };

const char* status_name(RunStatus status);
int exit_code(RunStatus status);

enum class Method { Local, Oracle, Both };

const char* method_name(Method method);
std::optional<Method> parse_method(std::string_view text);

/// `all` or a comma-separated subset of sharpening,chaining,fusion,combination.
std::optional<RuleMask> parse_rule_mask(std::string_view text);
std::optional<PoolPolicy> parse_pool_policy(std::string_view text);

struct ChainCheck {
    ConjunctiveEvent a, b, c;
    ConsistencyVerdict verdict;
};

struct CheckReport {
    RunStatus status = RunStatus::Ok;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<std::string> coherence_violations;
    std::vector<ChainCheck> chains; // every biconnected pool chain, A before C
    bool consistent = true;
};

/// Coherence and per-chain consistency of a KB given as text.
CheckReport run_check(std::string_view kb_text);

struct QueryOptions {
    Method method = Method::Both;
    EngineConfig engine;
    bool trace = false;
    bool force = false;
};

struct QueryReport {
    RunStatus status = RunStatus::Ok;
    std::optional<Goal> goal;
    Method method = Method::Both;
    std::optional<QueryAnswer> local;
    std::optional<QueryAnswer> oracle;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::vector<ChainDiagnostic> skipped_chains;
};

/// Answers `goal` (text form) against a KB given as text.
QueryReport run_query(std::string_view kb_text, std::string_view goal, const QueryOptions& options);

/// The same for every `query:` line of the file; a single input-error report
/// when the file does not parse or has no queries.
std::vector<QueryReport> run_file_queries(std::string_view kb_text, const QueryOptions& options);

nlohmann::ordered_json to_json(const CheckReport& report);
nlohmann::ordered_json to_json(const QueryReport& report, int precision, bool with_trace);
nlohmann::ordered_json to_json(const TraceStep& step);

std::string to_text(const CheckReport& report);
std::string to_text(const QueryReport& report, int precision, bool with_trace);

} // namespace taxoprob
