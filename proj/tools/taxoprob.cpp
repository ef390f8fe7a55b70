// Command-line front end: `taxoprob check <kb>` and `taxoprob query <kb> --goal "(F | E)"`.

#include "taxoprob/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace taxoprob;

namespace {

int run_check_command(const std::string& path, bool json)
{
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(RunStatus::InputError);
    }
    CheckReport report = run_check(text);
    if (json)
        std::cout << to_json(report).dump(2) << '\n';
    else
        std::cout << to_text(report);
    return exit_code(report.status);
}

int run_query_command(const std::string& path, const std::string& goal, const QueryOptions& options, bool json,
                      int precision)
{
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(RunStatus::InputError);
    }

    std::vector<QueryReport> reports;
    if (!goal.empty())
        reports.push_back(run_query(text, goal, options));
    else
        reports = run_file_queries(text, options);

    // The worst status decides the exit code.
    RunStatus worst = RunStatus::Ok;
    for (const auto& r : reports)
        if (exit_code(r.status) > exit_code(worst))
            worst = r.status;

    if (json) {
        if (!goal.empty()) {
            std::cout << to_json(reports.front(), precision, options.trace).dump(2) << '\n';
        } else {
            auto all = nlohmann::ordered_json::array();
            for (const auto& r : reports)
                all.push_back(to_json(r, precision, options.trace));
            std::cout << all.dump(2) << '\n';
        }
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i > 0)
                std::cout << '\n';
            std::cout << to_text(reports[i], precision, options.trace);
        }
    }
    return exit_code(worst);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Taxonomic and probabilistic deduction over conjunctive events"};
    app.require_subcommand(1);

    std::string check_path;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "Report coherence and chain consistency of a knowledge base");
    check->add_option("kb", check_path, "Knowledge base file")->required();
    check->add_flag("--json", check_json, "Emit JSON");

    std::string query_path;
    std::string goal;
    std::string method = "both";
    std::string rules = "all";
    std::string pool = "kb-plus-products";
    std::string kernel = "parallel";
    bool trace = false;
    bool json = false;
    bool force = false;
    bool one_orientation = false;
    int max_sweeps = 100;
    int precision = 4;
    auto* query = app.add_subcommand("query", "Bound a conditional probability (F | E)");
    query->add_option("kb", query_path, "Knowledge base file")->required();
    query->add_option("--goal,-g", goal, "Goal \"(F | E)\"; defaults to the file's query lines");
    query->add_option("--method,-m", method, "local, oracle or both")->check(CLI::IsMember({"local", "oracle", "both"}));
    query->add_option("--rules,-r", rules, "all, or a comma list of sharpening,chaining,fusion,combination");
    query->add_flag("--trace,-t", trace, "Show the rule steps behind the local answer");
    query->add_flag("--json", json, "Emit JSON");
    query->add_flag("--force", force, "Answer even if the knowledge base is incoherent");
    query->add_option("--max-sweeps", max_sweeps, "Saturation sweep limit")->check(CLI::PositiveNumber);
    query->add_option("--pool", pool, "kb-events or kb-plus-products")
        ->check(CLI::IsMember({"kb-events", "kb-plus-products"}));
    query->add_option("--precision", precision, "Decimal places in output")->check(CLI::Range(0, 30));
    query->add_option("--kernel", kernel, "parallel or serial sweep kernel")
        ->check(CLI::IsMember({"parallel", "serial"}));
    query->add_flag("--one-orientation", one_orientation, "Apply rules to the chain as given only, not its swap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_code(RunStatus::InputError);
    }

    if (*check)
        return run_check_command(check_path, check_json);

    QueryOptions options;
    options.method = *parse_method(method);
    auto mask = parse_rule_mask(rules);
    if (!mask) {
        std::cerr << "error: unknown rule set '" << rules << "'\n";
        return exit_code(RunStatus::InputError);
    }
    options.engine.enabled_rules = *mask;
    options.engine.pool_policy = *parse_pool_policy(pool);
    options.engine.max_sweeps = max_sweeps;
    options.engine.kernel = kernel == "serial" ? SweepKernel::Serial : SweepKernel::Parallel;
    options.engine.both_orientations = !one_orientation;
    options.trace = trace;
    options.force = force;
    return run_query_command(query_path, goal, options, json, precision);
}
