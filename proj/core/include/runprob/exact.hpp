#pragma once

#include <cstdint>
#include <vector>

#include "runprob/big_rational.hpp"
#include "runprob/method_result.hpp"
#include "runprob/query.hpp"

/// Exact evaluators of z_n: the alternating binomial closed form, the
/// order-(r+1) difference equation, and power-series division of the
/// generating function U(x)/V(x). All three return identical rationals.
namespace runprob::exact {

/// One summand of beta_{n,r}: the pair (l, k) with r*l + k = n and its
/// value (-1)^l C(k, l) (q p^r)^l.
struct BetaTerm {
    std::int64_t l = 0;
    std::int64_t k = 0;
    BigRational value;
};

/// The full term list of beta_{n,r}, l = 0 .. floor(n / (r+1)).
struct BetaExpansion {
    std::int64_t n = 0;
    std::int64_t r = 1;
    std::int64_t l_max = 0;
    std::vector<BetaTerm> terms;

    [[nodiscard]] BigRational sum() const;
};

/// Enumerates the (l, k) pairs and term values of beta_{n,r}. For n < 0 the
/// expansion is empty (l_max = -1).
BetaExpansion beta_expansion(std::int64_t n, std::int64_t r, const BigRational& p);

/// The summand for an arbitrary pair (l, k); zero whenever l > k.
BigRational beta_term(std::int64_t l, std::int64_t k, std::int64_t r, const BigRational& p);

/// beta_{n,r} = sum_l (-1)^l C(n - l r, l) (q p^r)^l; 1 for n = 0, 0 for n < 0.
BigRational beta_exact(std::int64_t n, std::int64_t r, const BigRational& p);

/// z_n = beta_{n,r} - p^r beta_{n-r,r}.
MethodResult z_closed_form(const RunQuery& query);

/// Iterates z_{m+1} = z_m - q p^r z_{m-r} from the seeds z_0..z_{r-1} = 1,
/// z_r = 1 - p^r, keeping only the last r+1 values.
MethodResult z_recurrence(const RunQuery& query);

/// z_0 .. z_{n_max} together with the parameters that generated them.
struct SeriesCache {
    BigRational p;
    std::int64_t r = 1;
    std::vector<BigRational> coefficients;

    [[nodiscard]] MethodResult at(std::int64_t n) const;
};

/// Coefficients of U(x)/V(x) by formal power-series long division.
SeriesCache series_coefficients(const BigRational& p, std::int64_t r, std::int64_t n_max);

/// Coefficients of 1/V(x); entry m equals beta_exact(m, r, p).
std::vector<BigRational> beta_series_coefficients(const BigRational& p, std::int64_t r, std::int64_t n_max);

/// U(x) = 1 - p^r x^r and V(x) = 1 - x + q p^r x^{r+1} as exact coefficient lists.
std::vector<BigRational> kernel_numerator(const BigRational& p, std::int64_t r);
std::vector<BigRational> kernel_denominator(const BigRational& p, std::int64_t r);

/// Truncated Cauchy product a * b up to x^{order}.
std::vector<BigRational> truncated_product(const std::vector<BigRational>& a, const std::vector<BigRational>& b,
                                           std::int64_t order);

} // namespace runprob::exact
