#include "rdnet/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace rdnet {

namespace {

BigInt pow10(long n) {
    BigInt p = 1;
    for (long i = 0; i < n; ++i) p *= 10;
    return p;
}

} // namespace

std::optional<Rational> parse_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    BigInt digits = 0;
    long frac_digits = 0;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits = digits * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits = digits * 10 + (text[i] - '0');
            ++frac_digits;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) return std::nullopt;
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        bool any_exp = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 4000) return std::nullopt;
            any_exp = true;
            ++i;
        }
        if (!any_exp) return std::nullopt;
        if (exp_negative) exponent = -exponent;
    }
    if (i != text.size()) return std::nullopt;

    const long shift = exponent - frac_digits;
    Rational value = shift >= 0 ? Rational(digits * pow10(shift)) : Rational(digits, pow10(-shift));
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

std::string to_decimal_string(const Rational& r) {
    BigInt den = denominator_of(r);
    long twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return to_string(r);

    const long places = std::max(twos, fives);
    BigInt scaled = numerator_of(r) * pow10(places) / denominator_of(r);
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string s = scaled.str();
    if (places > 0) {
        if (static_cast<long>(s.size()) <= places) s.insert(0, static_cast<std::size_t>(places) - s.size() + 1, '0');
        s.insert(s.size() - static_cast<std::size_t>(places), 1, '.');
    }
    return negative ? "-" + s : s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // 53 bits of mantissa are exact after scaling by 2^53.
    const auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r = Rational(BigInt(m));
    if (exp > 0) r *= Rational(BigInt(1) << exp);
    else if (exp < 0) r /= Rational(BigInt(1) << -exp);
    return r;
}

} // namespace rdnet
