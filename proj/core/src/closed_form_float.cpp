#include "runprob/closed_form_float.hpp"

#include <cfloat>
#include <cmath>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "runprob/errors.hpp"

namespace runprob::numeric {

namespace {

constexpr long kMaxPrecisionBits = 1L << 18;

/// Owning MPFR value; results of binary operations take the left operand's precision.
class MpFloat {
public:
    explicit MpFloat(mpfr_prec_t precision, double value = 0.0) {
        mpfr_init2(v_, precision);
        mpfr_set_d(v_, value, MPFR_RNDN);
    }
    MpFloat(const MpFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    MpFloat(MpFloat&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    MpFloat& operator=(const MpFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpFloat& operator=(MpFloat&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    friend MpFloat operator+(const MpFloat& a, const MpFloat& b) { return a.binary(b, mpfr_add); }
    friend MpFloat operator-(const MpFloat& a, const MpFloat& b) { return a.binary(b, mpfr_sub); }
    friend MpFloat operator*(const MpFloat& a, const MpFloat& b) { return a.binary(b, mpfr_mul); }
    MpFloat operator-() const {
        MpFloat out(precision());
        mpfr_neg(out.v_, v_, MPFR_RNDN);
        return out;
    }
    friend bool operator<(const MpFloat& a, const MpFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const MpFloat& a, const MpFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

private:
    using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    MpFloat binary(const MpFloat& b, BinaryOp op) const {
        MpFloat out(precision());
        op(out.v_, v_, b.v_, MPFR_RNDN);
        return out;
    }

    mpfr_t v_;
};

/// Double arithmetic with std::lgamma.
struct DoubleArith {
    using Value = double;

    explicit DoubleArith(std::int64_t n) : lgamma_table(static_cast<std::size_t>(n) + 1) {
        for (std::size_t j = 0; j < lgamma_table.size(); ++j) lgamma_table[j] = std::lgamma(static_cast<double>(j) + 1.0);
    }

    Value from_int(std::int64_t v) const { return static_cast<double>(v); }
    Value from_double(double v) const { return v; }
    Value unit() const { return DBL_EPSILON / 2.0; }
    Value log_factorial(std::int64_t j) const { return lgamma_table[static_cast<std::size_t>(j)]; }
    static Value exp(const Value& v) { return std::exp(v); }
    static Value abs(const Value& v) { return std::fabs(v); }
    static bool finite(const Value& v) { return std::isfinite(v); }

    /// log of a positive rational without underflow in either part.
    Value log_rational(const BigRational& x) const {
        const auto log_mpz = [](const BigInt& v) {
            long exponent = 0;
            const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
            return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
        };
        return log_mpz(x.numerator()) - log_mpz(x.denominator());
    }

    std::vector<double> lgamma_table;
};

/// MPFR arithmetic at a fixed working precision.
struct MpfrArith {
    using Value = MpFloat;

    MpfrArith(std::int64_t n, mpfr_prec_t precision) : precision(precision) {
        // log j! by running sums of log j, carried with guard bits so the
        // accumulated rounding stays below one unit of the working precision.
        const mpfr_prec_t guarded = precision + 40;
        MpFloat acc(guarded, 0.0);
        MpFloat term(guarded);
        lgamma_table.reserve(static_cast<std::size_t>(n) + 1);
        lgamma_table.emplace_back(precision, 0.0);
        for (std::int64_t j = 1; j <= n; ++j) {
            mpfr_log_ui(term.get(), static_cast<unsigned long>(j), MPFR_RNDN);
            mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
            MpFloat rounded(precision);
            mpfr_set(rounded.get(), acc.get(), MPFR_RNDN);
            lgamma_table.push_back(std::move(rounded));
        }
    }

    Value from_int(std::int64_t v) const {
        MpFloat out(precision);
        mpfr_set_si(out.get(), static_cast<long>(v), MPFR_RNDN);
        return out;
    }
    Value from_double(double v) const { return MpFloat(precision, v); }
    Value unit() const {
        MpFloat out(precision, 1.0);
        mpfr_mul_2si(out.get(), out.get(), -static_cast<long>(precision), MPFR_RNDN);
        return out;
    }
    const Value& log_factorial(std::int64_t j) const { return lgamma_table[static_cast<std::size_t>(j)]; }
    static Value exp(const Value& v) {
        MpFloat out(v.precision());
        mpfr_exp(out.get(), v.get(), MPFR_RNDN);
        return out;
    }
    static Value abs(const Value& v) {
        MpFloat out(v.precision());
        mpfr_abs(out.get(), v.get(), MPFR_RNDN);
        return out;
    }
    static bool finite(const Value& v) { return mpfr_number_p(v.get()) != 0; }

    Value log_rational(const BigRational& x) const {
        MpFloat out(precision);
        mpfr_set_q(out.get(), x.raw().get_mpq_t(), MPFR_RNDN);
        mpfr_log(out.get(), out.get(), MPFR_RNDN);
        return out;
    }

    mpfr_prec_t precision;
    std::vector<MpFloat> lgamma_table;
};

template <class Arith>
struct Evaluation {
    typename Arith::Value z;
    typename Arith::Value bound;
    std::size_t terms = 0;
    bool finite = true;
};

/// Sums every term of beta_{n,r} and of -p^r beta_{n-r,r} into one
/// compensated accumulator.
template <class Arith>
Evaluation<Arith> evaluate_closed_form(const Arith& arith, const RunQuery& query) {
    using Value = typename Arith::Value;
    const auto& [p, r, n] = query;

    const Value log_weight = arith.log_rational(complement(p) * p.pow(static_cast<unsigned long>(r)));
    const Value log_p_r = arith.log_rational(p.pow(static_cast<unsigned long>(r)));
    const Value zero = arith.from_int(0);
    const Value u = arith.unit();

    Value sum = zero;
    Value compensation = zero;
    Value max_partial = zero;
    Value term_error = zero;
    std::size_t count = 0;
    bool finite = true;

    const auto add_beta = [&](std::int64_t m, const Value& log_extra, bool negate) {
        if (m < 0) return;
        const Value abs_extra = Arith::abs(log_extra);
        for (std::int64_t l = 0; l <= m / (r + 1); ++l) {
            const std::int64_t k = m - l * r;
            const Value& lg_k = arith.log_factorial(k);
            const Value& lg_l = arith.log_factorial(l);
            const Value& lg_kl = arith.log_factorial(k - l);
            const Value l_value = arith.from_int(l);
            const Value log_power = l == 0 ? zero : l_value * log_weight;
            const Value log_magnitude = lg_k - lg_l - lg_kl + log_power + log_extra;
            Value term = Arith::exp(log_magnitude);
            if (!Arith::finite(term)) finite = false;
            if ((l % 2 == 1) != negate) term = -term;

            // Neumaier step
            const Value next = sum + term;
            if (Arith::abs(sum) >= Arith::abs(term)) {
                compensation = compensation + ((sum - next) + term);
            } else {
                compensation = compensation + ((term - next) + sum);
            }
            sum = next;
            if (max_partial < Arith::abs(sum)) max_partial = Arith::abs(sum);

            // Each log component carries a few units of rounding relative to
            // its magnitude; exp turns that absolute error into relative error.
            const Value log_scale = lg_k + lg_l + lg_kl + Arith::abs(log_power) + abs_extra;
            term_error = term_error + Arith::abs(term) * u * (arith.from_int(4) * log_scale + arith.from_int(2));
            ++count;
        }
    };

    add_beta(n, zero, false);
    add_beta(n - r, log_p_r, true);

    Evaluation<Arith> out{sum + compensation, zero, count, finite};
    out.bound = arith.from_int(static_cast<std::int64_t>(count)) * u * max_partial + term_error +
                u * Arith::abs(out.z);
    out.finite = out.finite && Arith::finite(out.z) && Arith::finite(out.bound);
    return out;
}

[[noreturn]] void throw_underflow(const RunQuery& query) {
    throw UnderflowError("z_" + std::to_string(query.n) + " lies below the normal double range for p=" +
                         query.p.to_string() + ", r=" + std::to_string(query.r));
}

} // namespace

FloatEvaluation closed_form_float_evaluation(const RunQuery& query, double relative_target) {
    validate_query(query);
    if (is_degenerate(query.p)) {
        throw DomainError("closed-form float evaluation requires 0 < p < 1");
    }

    {
        const DoubleArith arith(query.n);
        const auto result = evaluate_closed_form(arith, query);
        if (result.finite && result.z >= DBL_MIN && result.bound <= relative_target * result.z) {
            return {result.z, result.bound, 53, result.terms};
        }
    }

    const MpFloat target(64, relative_target);
    const MpFloat smallest_normal(64, DBL_MIN);
    for (long precision = 128; precision <= kMaxPrecisionBits; precision *= 2) {
        const MpfrArith arith(query.n, precision);
        const auto result = evaluate_closed_form(arith, query);
        if (!result.finite) throw OverflowError("intermediate term left the MPFR exponent range");

        const MpFloat magnitude = MpfrArith::abs(result.z);
        if (magnitude + result.bound < smallest_normal) throw_underflow(query);
        if (!(target * magnitude < result.bound)) {
            if (magnitude < smallest_normal) throw_underflow(query);
            const double z = mpfr_get_d(result.z.get(), MPFR_RNDN);
            const double bound =
                mpfr_get_d(result.bound.get(), MPFR_RNDU) + std::fabs(z) * (DBL_EPSILON / 2.0);
            return {z, bound, precision, result.terms};
        }
    }
    throw ConvergenceError("closed-form float evaluation did not reach its error target within " +
                           std::to_string(kMaxPrecisionBits) + " bits");
}

MethodResult z_closed_form_float(const RunQuery& query) {
    validate_query(query);
    if (auto z = degenerate_z(query)) return MethodResult::floating(z->to_double(), Method::ClosedForm, 0.0);
    const auto evaluation = closed_form_float_evaluation(query);
    return MethodResult::floating(evaluation.z, Method::ClosedForm, evaluation.error_bound);
}

} // namespace runprob::numeric
