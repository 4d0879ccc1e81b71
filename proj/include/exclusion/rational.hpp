#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace exclusion {

// Non-negative exact fraction, always kept in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::uint64_t numerator, std::uint64_t denominator = 1);

    std::uint64_t numerator() const { return num_; }
    std::uint64_t denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }

    // Accepts "n", "n/d" and finite decimals "0.25" (read exactly).
    static Rational parse(std::string_view text);
    std::string to_string() const;

    // floor(this * k)
    std::uint64_t floor_times(std::uint64_t k) const;
    // this * k compared against an integer m, exactly.
    std::strong_ordering compare_scaled(std::uint64_t k, std::uint64_t m) const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace exclusion
