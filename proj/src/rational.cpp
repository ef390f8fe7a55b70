#include "taxoprob/rational.hpp"

#include <cctype>

namespace taxoprob {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty())
        return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            return std::nullopt;
        mpz_class d(std::string(den), 10);
        if (d == 0)
            return std::nullopt;
        Rational q(mpz_class(std::string(num), 10), d);
        q.canonicalize();
        return q;
    }

    auto dot = text.find('.');
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && frac_part.empty() && int_part.empty())
        return std::nullopt;
    if (!int_part.empty() && !all_digits(int_part))
        return std::nullopt;
    if (!frac_part.empty() && !all_digits(frac_part))
        return std::nullopt;
    if (dot != std::string_view::npos && frac_part.empty())
        return std::nullopt;

    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_fraction_string(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rational& value, int places)
{
    if (places < 0)
        places = 0;
    bool negative = sgn(value) < 0;
    Rational magnitude = abs(value);

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    // floor(|q| * 10^p + 1/2) == floor((2 * num * 10^p + den) / (2 * den))
    mpz_class scaled = (2 * magnitude.get_num() * scale + magnitude.get_den()) / (2 * magnitude.get_den());

    std::string digits = scaled.get_str();
    if (places > 0) {
        if (digits.size() <= static_cast<size_t>(places))
            digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<size_t>(places), ".");
    }
    if (negative && scaled != 0)
        digits.insert(0, "-");
    return digits;
}

} // namespace taxoprob
