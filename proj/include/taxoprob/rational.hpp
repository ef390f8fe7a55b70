#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace taxoprob {

/// Exact rational number. All probability bounds are carried in this type so
/// that strict guard comparisons are decided exactly.
using Rational = mpq_class;

/// Parses `0.95`, `.5`, `1`, or `19/20` into an exact rational.
/// Decimal literals are read digit-by-digit, never through a binary float.
std::optional<Rational> parse_rational(std::string_view text);

/// `19/20`, `0`, `1`.
std::string to_fraction_string(const Rational& value);

/// Round-half-up decimal rendering with a fixed number of places.
std::string to_decimal_string(const Rational& value, int places);

[[nodiscard]] inline double to_double(const Rational& value) { return value.get_d(); }

} // namespace taxoprob
