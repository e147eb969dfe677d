#include "runprob/kernel.hpp"

#include "runprob/query.hpp"

namespace runprob::numeric {

KernelPolynomials make_kernel(const BigRational& p, std::int64_t r) {
    validate_parameters(p, r);
    const BigRational q = complement(p);
    const BigRational p_r = p.pow(static_cast<unsigned long>(r));

    KernelPolynomials k;
    k.p = p.to_double();
    k.q = q.to_double();
    k.r = r;
    k.u_coeffs.assign(static_cast<std::size_t>(r) + 1, 0.0);
    k.u_coeffs[0] = 1.0;
    k.u_coeffs[static_cast<std::size_t>(r)] = (-p_r).to_double();
    k.v_coeffs.assign(static_cast<std::size_t>(r) + 2, 0.0);
    k.v_coeffs[0] = 1.0;
    k.v_coeffs[1] = -1.0;
    k.v_coeffs[static_cast<std::size_t>(r) + 1] = (q * p_r).to_double();
    return k;
}

std::complex<double> evaluate(std::span<const double> coeffs, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> evaluate_derivative(std::span<const double> coeffs, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 1;) acc = acc * x + static_cast<double>(j) * coeffs[j];
    return acc;
}

} // namespace runprob::numeric
