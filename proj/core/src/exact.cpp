#include "runprob/exact.hpp"

#include <deque>
#include <utility>

#include "runprob/binomial.hpp"
#include "runprob/errors.hpp"

namespace runprob::exact {

namespace {

/// q p^r
BigRational kernel_weight(const BigRational& p, std::int64_t r) {
    return complement(p) * p.pow(static_cast<unsigned long>(r));
}

/// Coefficients of num/den up to x^{n_max}; den[0] must be nonzero.
std::vector<BigRational> power_series_quotient(const std::vector<BigRational>& num,
                                               const std::vector<BigRational>& den, std::int64_t n_max) {
    std::vector<std::pair<std::size_t, BigRational>> tail;
    for (std::size_t j = 1; j < den.size(); ++j) {
        if (!den[j].is_zero()) tail.emplace_back(j, den[j]);
    }
    const BigRational& lead = den.front();

    std::vector<BigRational> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (std::size_t m = 0; m <= static_cast<std::size_t>(n_max); ++m) {
        BigRational acc = m < num.size() ? num[m] : BigRational(0);
        for (const auto& [j, coeff] : tail) {
            if (j > m) break;
            acc -= coeff * out[m - j];
        }
        out.push_back(lead == BigRational(1) ? std::move(acc) : acc / lead);
    }
    return out;
}

} // namespace

BigRational BetaExpansion::sum() const {
    BigRational acc(0);
    for (const auto& term : terms) acc += term.value;
    return acc;
}

BigRational beta_term(std::int64_t l, std::int64_t k, std::int64_t r, const BigRational& p) {
    validate_parameters(p, r);
    if (l < 0 || k < 0 || l > k) return BigRational(0);
    BigRational value(binomial_exact(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l)));
    value *= kernel_weight(p, r).pow(static_cast<unsigned long>(l));
    return l % 2 == 0 ? value : -value;
}

BetaExpansion beta_expansion(std::int64_t n, std::int64_t r, const BigRational& p) {
    validate_parameters(p, r);
    BetaExpansion out;
    out.n = n;
    out.r = r;
    if (n < 0) {
        out.l_max = -1;
        return out;
    }
    out.l_max = n / (r + 1);
    const BigRational weight = kernel_weight(p, r);
    BigRational weight_power(1);
    for (std::int64_t l = 0; l <= out.l_max; ++l) {
        const std::int64_t k = n - l * r;
        BigRational value(binomial_exact(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(l)));
        value *= weight_power;
        out.terms.push_back({l, k, l % 2 == 0 ? std::move(value) : -value});
        weight_power *= weight;
    }
    return out;
}

BigRational beta_exact(std::int64_t n, std::int64_t r, const BigRational& p) {
    validate_parameters(p, r);
    if (n < 0) return BigRational(0);

    // Sum over a common denominator b^{l_max}, where q p^r = a / b in lowest
    // terms, so the loop runs on integers and canonicalizes once.
    const BigRational weight = kernel_weight(p, r);
    const BigInt a = weight.numerator();
    const BigInt b = weight.denominator();
    const std::int64_t l_max = n / (r + 1);

    std::vector<BigInt> b_powers(static_cast<std::size_t>(l_max) + 1);
    b_powers[0] = 1;
    for (std::size_t i = 1; i < b_powers.size(); ++i) b_powers[i] = b_powers[i - 1] * b;

    BigInt acc = 0;
    BigInt a_power = 1;
    for (std::int64_t l = 0; l <= l_max; ++l) {
        BigInt term = binomial_exact(static_cast<std::uint64_t>(n - l * r), static_cast<std::uint64_t>(l));
        term *= a_power;
        term *= b_powers[static_cast<std::size_t>(l_max - l)];
        if (l % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
        a_power *= a;
    }
    return BigRational(acc, b_powers.back());
}

MethodResult z_closed_form(const RunQuery& query) {
    validate_query(query);
    if (auto z = degenerate_z(query)) return MethodResult::exact(std::move(*z), Method::ClosedForm);
    const auto& [p, r, n] = query;
    BigRational z = beta_exact(n, r, p) - p.pow(static_cast<unsigned long>(r)) * beta_exact(n - r, r, p);
    return MethodResult::exact(std::move(z), Method::ClosedForm);
}

MethodResult z_recurrence(const RunQuery& query) {
    validate_query(query);
    if (auto z = degenerate_z(query)) return MethodResult::exact(std::move(*z), Method::Recurrence);
    const auto& [p, r, n] = query;
    if (n < r) return MethodResult::exact(BigRational(1), Method::Recurrence);

    const BigRational weight = kernel_weight(p, r);
    // window = z_{m-r}, ..., z_m
    std::deque<BigRational> window(static_cast<std::size_t>(r), BigRational(1));
    window.push_back(BigRational(1) - p.pow(static_cast<unsigned long>(r)));
    for (std::int64_t m = r; m < n; ++m) {
        BigRational next = window.back() - weight * window.front();
        window.pop_front();
        window.push_back(std::move(next));
    }
    return MethodResult::exact(std::move(window.back()), Method::Recurrence);
}

MethodResult SeriesCache::at(std::int64_t n) const {
    if (n < 0 || n >= static_cast<std::int64_t>(coefficients.size())) {
        throw DomainError("series index " + std::to_string(n) + " outside the cached range");
    }
    return MethodResult::exact(coefficients[static_cast<std::size_t>(n)], Method::Series);
}

std::vector<BigRational> kernel_numerator(const BigRational& p, std::int64_t r) {
    validate_parameters(p, r);
    std::vector<BigRational> u(static_cast<std::size_t>(r) + 1, BigRational(0));
    u[0] = BigRational(1);
    u[static_cast<std::size_t>(r)] -= p.pow(static_cast<unsigned long>(r));
    return u;
}

std::vector<BigRational> kernel_denominator(const BigRational& p, std::int64_t r) {
    validate_parameters(p, r);
    std::vector<BigRational> v(static_cast<std::size_t>(r) + 2, BigRational(0));
    v[0] = BigRational(1);
    v[1] = BigRational(-1);
    v[static_cast<std::size_t>(r) + 1] = kernel_weight(p, r);
    return v;
}

SeriesCache series_coefficients(const BigRational& p, std::int64_t r, std::int64_t n_max) {
    validate_parameters(p, r);
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    return {p, r, power_series_quotient(kernel_numerator(p, r), kernel_denominator(p, r), n_max)};
}

std::vector<BigRational> beta_series_coefficients(const BigRational& p, std::int64_t r, std::int64_t n_max) {
    validate_parameters(p, r);
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    return power_series_quotient({BigRational(1)}, kernel_denominator(p, r), n_max);
}

std::vector<BigRational> truncated_product(const std::vector<BigRational>& a, const std::vector<BigRational>& b,
                                           std::int64_t order) {
    std::vector<BigRational> out(static_cast<std::size_t>(order) + 1, BigRational(0));
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

} // namespace runprob::exact
