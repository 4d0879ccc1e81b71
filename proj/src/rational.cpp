#include "exclusion/rational.hpp"

#include "exclusion/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace exclusion {

namespace {

using u128 = unsigned __int128;

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty())
        throw ParseError("expected digits in rational '" + std::string(whole) + "'");
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range)
        throw ParseError("rational component too large in '" + std::string(whole) + "'");
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Rational::Rational(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0)
        throw ParseError("rational with zero denominator");
    const std::uint64_t g = std::gcd(numerator, denominator);
    num_ = numerator / (g == 0 ? 1 : g);
    den_ = denominator / (g == 0 ? 1 : g);
    if (num_ == 0)
        den_ = 1;
}

Rational Rational::parse(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto n = parse_digits(text.substr(0, slash), text);
        const auto d = parse_digits(text.substr(slash + 1), text);
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(n, d);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        if (frac_part.empty() || frac_part.size() > 18)
            throw ParseError("unsupported decimal '" + std::string(text) + "'");
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        const std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
        const std::uint64_t frac = parse_digits(frac_part, text);
        const u128 n = static_cast<u128>(whole) * scale + frac;
        if (n > std::numeric_limits<std::uint64_t>::max())
            throw ParseError("decimal too large '" + std::string(text) + "'");
        return Rational(static_cast<std::uint64_t>(n), scale);
    }
    return Rational(parse_digits(text, text), 1);
}

std::string Rational::to_string() const {
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint64_t Rational::floor_times(std::uint64_t k) const {
    return static_cast<std::uint64_t>(static_cast<u128>(num_) * k / den_);
}

std::strong_ordering Rational::compare_scaled(std::uint64_t k, std::uint64_t m) const {
    return static_cast<u128>(num_) * k <=> static_cast<u128>(m) * den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<u128>(a.num_) * b.den_ <=> static_cast<u128>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace exclusion
