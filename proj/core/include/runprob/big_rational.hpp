#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace runprob {

using BigInt = mpz_class;

/// Arbitrary-precision signed rational kept in canonical form.
///
/// The denominator is always positive and coprime with the numerator; every
/// arithmetic operation re-canonicalizes, so structural equality is value
/// equality.
class BigRational {
public:
    BigRational() = default;
    BigRational(std::int64_t value); // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& numerator, const BigInt& denominator);
    explicit BigRational(const BigInt& integer);

    /// Parses "a/b", an integer, or a decimal such as "0.5", "-1.25" or "3e-2".
    /// Decimals convert exactly to a power-of-ten fraction. Throws DomainError.
    static BigRational parse(std::string_view text);

    [[nodiscard]] BigInt numerator() const;
    [[nodiscard]] BigInt denominator() const;

    /// "a/b", or just "a" when the denominator is 1.
    [[nodiscard]] std::string to_string() const;

    /// Correctly rounded (nearest) conversion.
    [[nodiscard]] double to_double() const;

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const;

    [[nodiscard]] BigRational abs() const;
    [[nodiscard]] BigRational pow(unsigned long exponent) const;

    BigRational& operator+=(const BigRational& rhs);
    BigRational& operator-=(const BigRational& rhs);
    BigRational& operator*=(const BigRational& rhs);
    BigRational& operator/=(const BigRational& rhs);

    friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
    friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
    friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
    friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
    BigRational operator-() const;

    friend bool operator==(const BigRational& a, const BigRational& b);
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    explicit BigRational(mpq_class value);

    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& value);

} // namespace runprob
