#pragma once

#include "taxoprob/errors.hpp"
#include "taxoprob/knowledge_base.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taxoprob {

struct SourcePos {
    std::size_t line = 0;   // 1-based
    std::size_t column = 0; // 1-based

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;

    /// `3:14: lower exceeds upper`
    [[nodiscard]] std::string to_string() const;
};

/// Declarations of a KB file in source order, with the line each came from.
struct KbDocument {
    std::optional<std::vector<std::string>> basics;
    std::vector<TaxonomicFormula> taxonomic;
    std::vector<SourcePos> taxonomic_pos;
    std::vector<ProbabilisticFormula> probabilistic;
    std::vector<SourcePos> probabilistic_pos;
    std::vector<Goal> queries;
    std::vector<SourcePos> query_pos;
};

struct ParsedKb {
    KbDocument document;
    KnowledgeBase kb;
    std::vector<Goal> queries;
    std::vector<Diagnostic> warnings;
};

/// All diagnostics of a failed parse.
class ParseError : public Error {
public:
    explicit ParseError(std::vector<Diagnostic> diagnostics);

    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Parses the line-oriented KB format:
///   basics: <ident>+
///   tax: <event> -> <event>
///   prob: ( <event> | <event> ) [ <num> , <num> ]
///   query: ( <event> | <event> )
/// with `#` comments, blank lines, LF or CRLF endings. Without a `basics:`
/// line the universe is the set of identifiers used.
/// Throws ParseError listing every diagnostic found, or
/// ProbabilisticConflictError when duplicate assertions have an empty intersection.
ParsedKb parse_kb(std::string_view text);

/// Parses `( <event> | <event> )` against a known universe.
Goal parse_goal(std::string_view text, const Universe& universe);

/// Text that parse_kb reads back to an equal knowledge base.
std::string render_kb(const KnowledgeBase& kb, const std::vector<Goal>& queries = {});

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::string& path);

} // namespace taxoprob
