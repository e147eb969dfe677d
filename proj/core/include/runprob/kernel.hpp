#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "runprob/big_rational.hpp"

namespace runprob::numeric {

/// Float coefficients (ascending powers) of the generating-function kernel
/// G(x) = U(x) / V(x), U(x) = 1 - p^r x^r, V(x) = 1 - x + q p^r x^{r+1}.
struct KernelPolynomials {
    std::vector<double> u_coeffs;
    std::vector<double> v_coeffs;
    double p = 0.0;
    double q = 0.0;
    std::int64_t r = 1;
};

/// Builds the kernel; every coefficient is correctly rounded from its exact
/// rational value. Throws DomainError for invalid (p, r).
KernelPolynomials make_kernel(const BigRational& p, std::int64_t r);

/// Horner evaluation of sum_j coeffs[j] x^j and its derivative.
std::complex<double> evaluate(std::span<const double> coeffs, std::complex<double> x);
std::complex<double> evaluate_derivative(std::span<const double> coeffs, std::complex<double> x);

} // namespace runprob::numeric
