#include "taxoprob/kb_format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace taxoprob {

std::string Diagnostic::to_string() const
{
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

namespace {

std::string summarise(const std::vector<Diagnostic>& diagnostics)
{
    std::string text;
    for (const auto& d : diagnostics) {
        if (!text.empty())
            text += "\n";
        text += d.to_string();
    }
    return text;
}

} // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(summarise(diagnostics)), diagnostics_(std::move(diagnostics))
{
}

namespace {

struct LineError {
    std::size_t column;
    std::string message;
};

struct Identifier {
    std::string name;
    SourcePos pos;
};

struct RawEvent {
    std::vector<std::string> tokens;
    std::vector<Identifier> identifiers;
};

bool ident_char(char ch)
{
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

class Cursor {
public:
    Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }

    [[nodiscard]] bool at_end()
    {
        skip_space();
        return pos_ >= text_.size();
    }

    [[nodiscard]] std::size_t column() const { return pos_ + 1; }
    [[nodiscard]] SourcePos here() const { return {line_, column()}; }

    bool accept(std::string_view token)
    {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token)
    {
        if (!accept(token))
            fail("expected '" + std::string(token) + "'" + found());
    }

    [[nodiscard]] bool peek_ident()
    {
        skip_space();
        return pos_ < text_.size() && ident_char(text_[pos_]);
    }

    Identifier ident()
    {
        skip_space();
        SourcePos at = here();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_]))
            ++pos_;
        if (start == pos_)
            fail("expected identifier" + found());
        return {std::string(text_.substr(start, pos_ - start)), at};
    }

    /// One or more identifiers or the keywords true/false.
    RawEvent event()
    {
        RawEvent ev;
        if (!peek_ident())
            fail("expected event" + found());
        while (peek_ident()) {
            Identifier id = ident();
            if (id.name != "true" && id.name != "false") {
                if (!is_valid_basic_name(id.name))
                    fail_at(id.pos.column, "invalid identifier '" + id.name + "'");
                ev.identifiers.push_back(id);
            }
            ev.tokens.push_back(std::move(id.name));
        }
        return ev;
    }

    Rational bound()
    {
        skip_space();
        std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == '/'))
            ++pos_;
        auto value = parse_rational(text_.substr(digits, pos_ - digits));
        if (!value)
            fail_at(start + 1, "malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'");
        if (negative)
            *value = -*value;
        if (*value < 0 || *value > 1)
            fail_at(start + 1, "bound out of [0,1]: " + std::string(text_.substr(start, pos_ - start)));
        return *value;
    }

    [[noreturn]] void fail(const std::string& message) const { throw LineError{column(), message}; }
    [[noreturn]] static void fail_at(std::size_t column, const std::string& message)
    {
        throw LineError{column, message};
    }

private:
    [[nodiscard]] std::string found() const
    {
        if (pos_ >= text_.size())
            return ", found end of line";
        return ", found '" + std::string(1, text_[pos_]) + "'";
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct RawConditional {
    RawEvent conclusion;
    RawEvent premise;
};

RawConditional conditional(Cursor& cur)
{
    cur.expect("(");
    RawEvent conclusion = cur.event();
    cur.expect("|");
    RawEvent premise = cur.event();
    cur.expect(")");
    return {std::move(conclusion), std::move(premise)};
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size())
            break;
        start = end + 1;
    }
    return lines;
}

ConjunctiveEvent to_event(const RawEvent& raw)
{
    return normalize_event(raw.tokens);
}

} // namespace

ParsedKb parse_kb(std::string_view text)
{
    ParsedKb parsed;
    KbDocument& doc = parsed.document;
    std::vector<Diagnostic> errors;
    std::vector<Identifier> used;
    std::set<std::string> declared;
    bool has_basics = false;
    std::map<std::pair<ConjunctiveEvent, ConjunctiveEvent>, std::size_t> first_seen;

    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::size_t lineno = i + 1;
        Cursor cur(line, lineno);
        if (cur.at_end())
            continue;
        try {
            SourcePos start = cur.here();
            auto collect = [&](const RawEvent& ev) { used.insert(used.end(), ev.identifiers.begin(), ev.identifiers.end()); };
            if (cur.accept("basics:")) {
                has_basics = true;
                if (!doc.basics)
                    doc.basics.emplace();
                if (cur.at_end())
                    cur.fail("expected at least one identifier");
                while (!cur.at_end()) {
                    Identifier id = cur.ident();
                    if (!is_valid_basic_name(id.name))
                        Cursor::fail_at(id.pos.column, "invalid basic event name '" + id.name + "'");
                    if (declared.insert(id.name).second)
                        doc.basics->push_back(id.name);
                }
            } else if (cur.accept("tax:")) {
                RawEvent lhs = cur.event();
                cur.expect("->");
                RawEvent rhs = cur.event();
                if (!cur.at_end())
                    cur.fail("unexpected trailing text");
                collect(lhs);
                collect(rhs);
                doc.taxonomic.push_back({to_event(lhs), to_event(rhs)});
                doc.taxonomic_pos.push_back(start);
            } else if (cur.accept("prob:")) {
                RawConditional cond = conditional(cur);
                cur.expect("[");
                std::size_t lower_col = cur.column();
                Rational lo = cur.bound();
                cur.expect(",");
                Rational hi = cur.bound();
                cur.expect("]");
                if (!cur.at_end())
                    cur.fail("unexpected trailing text");
                if (lo > hi)
                    Cursor::fail_at(lower_col, "lower exceeds upper");
                collect(cond.conclusion);
                collect(cond.premise);
                ProbabilisticFormula f{to_event(cond.conclusion), to_event(cond.premise), {lo, hi}};
                auto [it, inserted] = first_seen.emplace(std::make_pair(f.conclusion, f.premise), lineno);
                if (!inserted)
                    parsed.warnings.push_back({start, "duplicate (" + f.conclusion.to_string() + " | " +
                                                          f.premise.to_string() + ") intersected with line " +
                                                          std::to_string(it->second)});
                doc.probabilistic.push_back(std::move(f));
                doc.probabilistic_pos.push_back(start);
            } else if (cur.accept("query:")) {
                RawConditional cond = conditional(cur);
                if (!cur.at_end())
                    cur.fail("unexpected trailing text");
                collect(cond.conclusion);
                collect(cond.premise);
                doc.queries.push_back({to_event(cond.conclusion), to_event(cond.premise)});
                doc.query_pos.push_back(start);
            } else {
                cur.fail("malformed line: expected 'basics:', 'tax:', 'prob:' or 'query:'");
            }
        } catch (const LineError& e) {
            errors.push_back({{lineno, e.column}, e.message});
        }
    }

    std::vector<std::string> names;
    if (has_basics) {
        for (const auto& id : used)
            if (declared.count(id.name) == 0)
                errors.push_back({id.pos, "unknown identifier '" + id.name + "'"});
        names = *doc.basics;
    } else {
        std::set<std::string> seen;
        for (const auto& id : used)
            if (seen.insert(id.name).second)
                names.push_back(id.name);
    }

    if (!errors.empty()) {
        std::stable_sort(errors.begin(), errors.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::make_pair(a.pos.line, a.pos.column) < std::make_pair(b.pos.line, b.pos.column);
        });
        throw ParseError(std::move(errors));
    }

    parsed.kb = KnowledgeBase::build(Universe(std::move(names)), doc.taxonomic, doc.probabilistic);
    parsed.queries = doc.queries;
    return parsed;
}

Goal parse_goal(std::string_view text, const Universe& universe)
{
    Cursor cur(text, 1);
    try {
        RawConditional cond = conditional(cur);
        if (!cur.at_end())
            cur.fail("unexpected trailing text");
        std::vector<Diagnostic> errors;
        for (const auto* ev : {&cond.conclusion, &cond.premise})
            for (const auto& id : ev->identifiers)
                if (!universe.contains(id.name))
                    errors.push_back({id.pos, "unknown identifier '" + id.name + "'"});
        if (!errors.empty())
            throw ParseError(std::move(errors));
        return {to_event(cond.conclusion), to_event(cond.premise)};
    } catch (const LineError& e) {
        throw ParseError({{{1, e.column}, e.message}});
    }
}

std::string render_kb(const KnowledgeBase& kb, const std::vector<Goal>& queries)
{
    std::ostringstream os;
    if (!kb.universe().empty()) {
        os << "basics:";
        for (const auto& name : kb.universe().names())
            os << ' ' << name;
        os << '\n';
    }
    for (const auto& f : kb.taxonomy().formulas())
        os << "tax: " << f.lhs.to_string() << " -> " << f.rhs.to_string() << '\n';
    for (const auto& f : kb.probabilistic())
        os << "prob: (" << f.conclusion.to_string() << " | " << f.premise.to_string() << ") ["
           << to_fraction_string(f.interval.lo) << ", " << to_fraction_string(f.interval.hi) << "]\n";
    for (const auto& q : queries)
        os << "query: " << q.to_string() << '\n';
    return os.str();
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace taxoprob
