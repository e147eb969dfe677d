#include "runprob/big_rational.hpp"

#include <cctype>
#include <ostream>
#include <utility>

#include <mpfr.h>

#include "runprob/errors.hpp"

namespace runprob {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad_number(std::string_view text) {
    throw DomainError("not a rational or decimal number: '" + std::string(text) + "'");
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text)) bad_number(whole);
    BigInt value(std::string(text), 10);
    return negative ? BigInt(-value) : value;
}

BigRational parse_decimal(std::string_view text) {
    const std::string_view whole = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(whole);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_number(whole);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
            bad_number(whole);
        }
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(text)) bad_number(whole);
        digits = std::string(text);
    }

    BigInt mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? BigRational(mantissa, scale) : BigRational(BigInt(mantissa * scale));
}

} // namespace

BigRational::BigRational(std::int64_t value) {
    // mpq_class has no int64 constructor on every platform; go through mpz.
    mpz_class num;
    mpz_set_si(num.get_mpz_t(), static_cast<long>(value));
    value_ = mpq_class(num);
}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) throw DomainError("zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

BigRational::BigRational(const BigInt& integer) : value_(integer) {}

BigRational::BigRational(mpq_class value) : value_(std::move(value)) {}

BigRational BigRational::parse(std::string_view text) {
    if (text.empty()) bad_number(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) bad_number(text);
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den(std::string(den_text), 10);
        if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        return BigRational(num, den);
    }
    return parse_decimal(text);
}

BigInt BigRational::numerator() const { return value_.get_num(); }
BigInt BigRational::denominator() const { return value_.get_den(); }

std::string BigRational::to_string() const { return value_.get_str(10); }

double BigRational::to_double() const {
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, value_.get_mpq_t(), MPFR_RNDN);
    const double out = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

bool BigRational::is_integer() const { return value_.get_den() == 1; }

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(value_))); }

BigRational BigRational::pow(unsigned long exponent) const {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    // Powers of coprime integers stay coprime; only the sign needs care.
    mpq_class out;
    out.get_num() = num;
    out.get_den() = den;
    return BigRational(std::move(out));
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
    value_ += rhs.value_;
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

BigRational BigRational::operator-() const { return BigRational(mpq_class(-value_)); }

bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const BigRational& value) { return os << value.to_string(); }

} // namespace runprob
