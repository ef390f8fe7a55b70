#include "taxoprob/event.hpp"

#include "taxoprob/errors.hpp"
#include "taxoprob/taxonomy.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <string>

namespace taxoprob {

// ---------------------------------------------------------------- EventBits

bool EventBits::is_subset_of(const EventBits& other) const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & ~other.words_[w]) != 0)
            return false;
    return true;
}

bool EventBits::intersects(const EventBits& other) const
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & other.words_[w]) != 0)
            return true;
    return false;
}

bool EventBits::none() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t EventBits::count() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

void EventBits::set_all()
{
    for (std::size_t i = 0; i < size_; ++i)
        set(i);
}

EventBits& EventBits::operator|=(const EventBits& other)
{
    for (std::size_t w = 0; w < words_.size(); ++w)
        words_[w] |= other.words_[w];
    return *this;
}

std::size_t EventBits::hash() const
{
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_)
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// --------------------------------------------------------- ConjunctiveEvent

ConjunctiveEvent ConjunctiveEvent::bottom()
{
    ConjunctiveEvent e;
    e.bottom_ = true;
    return e;
}

ConjunctiveEvent ConjunctiveEvent::of(std::vector<std::string> names)
{
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    ConjunctiveEvent e;
    e.conjuncts_ = std::move(names);
    return e;
}

std::string ConjunctiveEvent::to_string() const
{
    if (bottom_)
        return "false";
    if (conjuncts_.empty())
        return "true";
    std::string out;
    for (const auto& name : conjuncts_) {
        if (!out.empty())
            out += ' ';
        out += name;
    }
    return out;
}

std::strong_ordering operator<=>(const ConjunctiveEvent& a, const ConjunctiveEvent& b)
{
    if (a.bottom_ != b.bottom_)
        return a.bottom_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.conjuncts_ <=> b.conjuncts_;
}

ConjunctiveEvent normalize_event(std::span<const std::string> tokens, const Universe* declared)
{
    bool bottom = false;
    std::vector<std::string> names;
    for (const auto& token : tokens) {
        if (token == "false") {
            bottom = true;
        } else if (token == "true") {
            continue;
        } else {
            if (declared != nullptr && !declared->contains(token))
                throw UnknownIdentifierError(token);
            names.push_back(token);
        }
    }
    if (bottom)
        return ConjunctiveEvent::bottom();
    return ConjunctiveEvent::of(std::move(names));
}

ConjunctiveEvent conjoin(const ConjunctiveEvent& c, const ConjunctiveEvent& d)
{
    if (c.is_bottom() || d.is_bottom())
        return ConjunctiveEvent::bottom();
    std::vector<std::string> merged;
    merged.reserve(c.conjuncts().size() + d.conjuncts().size());
    std::set_union(c.conjuncts().begin(), c.conjuncts().end(), d.conjuncts().begin(), d.conjuncts().end(),
                   std::back_inserter(merged));
    return ConjunctiveEvent::of(std::move(merged));
}

// ----------------------------------------------------------------- Universe

Universe::Universe(std::vector<std::string> names) : names_(std::move(names))
{
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const
{
    auto it = std::lower_bound(names_.begin(), names_.end(), name,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == names_.end() || *it != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

EventBits Universe::bits_of(const ConjunctiveEvent& event) const
{
    EventBits bits(names_.size());
    for (const auto& name : event.conjuncts()) {
        auto idx = index_of(name);
        if (!idx)
            throw UnknownIdentifierError(name);
        bits.set(*idx);
    }
    return bits;
}

ConjunctiveEvent Universe::event_of(const EventBits& bits) const
{
    std::vector<std::string> names;
    bits.for_each([&](std::size_t i) { names.push_back(names_[i]); });
    return ConjunctiveEvent::of(std::move(names));
}

bool is_valid_basic_name(std::string_view name)
{
    if (name.empty() || name == "true" || name == "false")
        return false;
    return std::all_of(name.begin(), name.end(),
                       [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

bool atom_implies(const Universe& universe, const AtomicEvent& atom, const ConjunctiveEvent& event)
{
    if (event.is_bottom())
        return false;
    return atom_implies(atom, universe.bits_of(event));
}

// -------------------------------------------------------------- enumeration

std::size_t configured_atom_cap()
{
    if (const char* env = std::getenv("TAXOPROB_ATOM_CAP")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return static_cast<std::size_t>(value);
    }
    return kDefaultAtomCap;
}

namespace {

class AtomEnumerator {
public:
    AtomEnumerator(const Universe& universe, const TaxonomyStore* prune, std::size_t cap)
        : n_(universe.size()), prune_(prune), cap_(cap), positive_(n_), negative_(n_)
    {
        if (prune_ != nullptr) {
            touching_.resize(n_);
            const auto& rules = prune_->rules();
            for (std::size_t r = 0; r < rules.size(); ++r) {
                EventBits involved = rules[r].lhs | rules[r].rhs;
                involved.for_each([&](std::size_t i) { touching_[i].push_back(r); });
                if (rules[r].lhs.none() && rules[r].rhs_bottom)
                    contradiction_ = true; // top -> false: no consistent atom at all
            }
        }
    }

    std::vector<AtomicEvent> run()
    {
        if (!contradiction_)
            descend(0);
        return std::move(out_);
    }

private:
    // A rule is definitely violated once its lhs is entirely positive and its
    // rhs is bottom or has a conjunct fixed negative.
    [[nodiscard]] bool violated(std::size_t var) const
    {
        const auto& rules = prune_->rules();
        for (std::size_t r : touching_[var]) {
            const auto& rule = rules[r];
            if (!rule.lhs.is_subset_of(positive_))
                continue;
            if (rule.rhs_bottom || rule.rhs.intersects(negative_))
                return true;
        }
        return false;
    }

    void emit()
    {
        if (out_.size() >= cap_)
            throw AtomSpaceTooLargeError("atom space too large: more than " + std::to_string(cap_) + " atoms");
        out_.emplace_back(positive_);
    }

    void descend(std::size_t var)
    {
        if (var == n_) {
            emit();
            return;
        }
        for (bool sign : {false, true}) {
            if (sign)
                positive_.set(var);
            else
                negative_.set(var);
            if (prune_ == nullptr || !violated(var))
                descend(var + 1);
            positive_.reset(var);
            negative_.reset(var);
        }
    }

    std::size_t n_;
    const TaxonomyStore* prune_;
    std::size_t cap_;
    EventBits positive_;
    EventBits negative_;
    std::vector<std::vector<std::size_t>> touching_;
    bool contradiction_ = false;
    std::vector<AtomicEvent> out_;
};

} // namespace

std::vector<AtomicEvent> enumerate_atoms(const Universe& universe, const TaxonomyStore* prune, std::size_t cap)
{
    if (prune == nullptr && universe.size() < 63 && (std::size_t{1} << universe.size()) > cap)
        throw AtomSpaceTooLargeError("atom space too large: 2^" + std::to_string(universe.size()) + " atoms exceed cap " +
                                     std::to_string(cap));
    if (prune == nullptr && universe.size() >= 63)
        throw AtomSpaceTooLargeError("atom space too large: 2^" + std::to_string(universe.size()) + " atoms");
    return AtomEnumerator(universe, prune, cap).run();
}

} // namespace taxoprob

std::size_t std::hash<taxoprob::ConjunctiveEvent>::operator()(const taxoprob::ConjunctiveEvent& event) const noexcept
{
    std::size_t h = event.is_bottom() ? 0x51ed27ULL : 0x2545f491ULL;
    for (const auto& name : event.conjuncts())
        h ^= std::hash<std::string>{}(name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}
