#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taxoprob {

class TaxonomyStore;

/// Fixed-width bitset over the indices of a universe.
class EventBits {
public:
    EventBits() = default;
    explicit EventBits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    [[nodiscard]] std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    [[nodiscard]] bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    [[nodiscard]] bool is_subset_of(const EventBits& other) const;
    [[nodiscard]] bool intersects(const EventBits& other) const;
    [[nodiscard]] bool none() const;
    [[nodiscard]] std::size_t count() const;
    void set_all();

    EventBits& operator|=(const EventBits& other);
    friend EventBits operator|(EventBits lhs, const EventBits& rhs) { return lhs |= rhs; }

    friend bool operator==(const EventBits&, const EventBits&) = default;

    [[nodiscard]] std::size_t hash() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                auto bit = static_cast<std::size_t>(__builtin_ctzll(word));
                f(w * 64 + bit);
                word &= word - 1;
            }
        }
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct EventBitsHash {
    std::size_t operator()(const EventBits& bits) const { return bits.hash(); }
};

/// A conjunctive event: bottom, or a (possibly empty) set of basic event names.
/// The empty conjunction is top. Conjuncts are kept sorted and unique.
class ConjunctiveEvent {
public:
    ConjunctiveEvent() = default; // top

    static ConjunctiveEvent bottom();
    static ConjunctiveEvent top() { return {}; }
    static ConjunctiveEvent of(std::vector<std::string> names);

    [[nodiscard]] bool is_bottom() const { return bottom_; }
    [[nodiscard]] bool is_top() const { return !bottom_ && conjuncts_.empty(); }
    [[nodiscard]] const std::vector<std::string>& conjuncts() const { return conjuncts_; }

    /// `false`, `true`, or space-separated conjuncts.
    [[nodiscard]] std::string to_string() const;

    // Top sorts first, then conjunctions lexicographically, bottom last.
    friend std::strong_ordering operator<=>(const ConjunctiveEvent& a, const ConjunctiveEvent& b);
    friend bool operator==(const ConjunctiveEvent&, const ConjunctiveEvent&) = default;

private:
    bool bottom_ = false;
    std::vector<std::string> conjuncts_;
};

/// Canonicalises a token list (identifiers or the keywords true/false).
/// Throws UnknownIdentifierError when `declared` is given and a name is missing from it.
class Universe;
ConjunctiveEvent normalize_event(std::span<const std::string> tokens, const Universe* declared = nullptr);

ConjunctiveEvent conjoin(const ConjunctiveEvent& c, const ConjunctiveEvent& d);

/// The set of basic events, ordered by name; indices follow that order.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> names);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] bool empty() const { return names_.empty(); }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const { return index_of(name).has_value(); }

    /// Conjuncts of `event` as bits. Bottom maps to the empty set; callers
    /// must check is_bottom() themselves.
    [[nodiscard]] EventBits bits_of(const ConjunctiveEvent& event) const;
    [[nodiscard]] ConjunctiveEvent event_of(const EventBits& bits) const;

    friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

/// True for identifiers accepted as basic-event names.
bool is_valid_basic_name(std::string_view name);

/// A complete sign assignment over a universe, stored as its positive set.
class AtomicEvent {
public:
    explicit AtomicEvent(EventBits positive) : positive_(std::move(positive)) {}

    [[nodiscard]] bool positive(std::size_t i) const { return positive_.test(i); }
    [[nodiscard]] const EventBits& positives() const { return positive_; }
    [[nodiscard]] std::size_t size() const { return positive_.size(); }

    friend bool operator==(const AtomicEvent&, const AtomicEvent&) = default;

private:
    EventBits positive_;
};

/// Whether the atom implies the conjunction given as bits (all conjuncts positive).
[[nodiscard]] inline bool atom_implies(const AtomicEvent& atom, const EventBits& conjuncts)
{
    return conjuncts.is_subset_of(atom.positives());
}

[[nodiscard]] bool atom_implies(const Universe& universe, const AtomicEvent& atom, const ConjunctiveEvent& event);

constexpr std::size_t kDefaultAtomCap = std::size_t{1} << 22;

/// Atom cap from the TAXOPROB_ATOM_CAP environment variable, else kDefaultAtomCap.
std::size_t configured_atom_cap();

/// All atoms of the universe; with `prune`, only those consistent with the
/// taxonomy. Throws AtomSpaceTooLargeError once more than `cap` atoms would be yielded.
std::vector<AtomicEvent> enumerate_atoms(const Universe& universe, const TaxonomyStore* prune = nullptr,
                                         std::size_t cap = configured_atom_cap());

} // namespace taxoprob

template <>
struct std::hash<taxoprob::ConjunctiveEvent> {
    std::size_t operator()(const taxoprob::ConjunctiveEvent& event) const noexcept;
};
