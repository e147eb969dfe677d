#include "runprob/spectral.hpp"

#include <cmath>
#include <limits>

#include "runprob/errors.hpp"

namespace runprob::numeric {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

cplx integer_power(cplx base, std::int64_t exponent) {
    cplx result = 1.0;
    while (exponent > 0) {
        if ((exponent & 1) != 0) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

void check_matches(const RunQuery& query, const SpectralDecomposition& s) {
    validate_query(query);
    if (s.kernel.r != query.r || s.kernel.p != query.p.to_double()) {
        throw DomainError("spectral decomposition was built for different (p, r)");
    }
    if (s.condition_flag == ConditionFlag::NearMultiple) {
        throw IllConditionedError("roots of V are near-multiple (NearMultiple); the distinct-root formula does not "
                                  "apply, use the recurrence or matrix method instead");
    }
}

/// Relative forward error estimate of a computed simple root.
double root_error(const SpectralDecomposition& s, cplx x) {
    const cplx d = evaluate_derivative(s.kernel.v_coeffs, x);
    const double forward = std::abs(evaluate(s.kernel.v_coeffs, x)) / std::abs(d) / std::abs(x);
    return std::max(forward, kEps);
}

} // namespace

MethodResult z_spectral(const RunQuery& query, const SpectralDecomposition& s) {
    check_matches(query, s);
    const std::int64_t power = query.n + 1;
    cplx sum = 0.0;
    double bound = 0.0;
    for (std::size_t k = 0; k < s.roots.size(); ++k) {
        if (k == s.removable_index) continue;
        const cplx term = s.residues[k] * integer_power(1.0 / s.roots[k], power);
        sum += term;
        const double relative = static_cast<double>(power + 1) * root_error(s, s.roots[k]) +
                                4.0 * static_cast<double>(s.kernel.r + 2) * kEps;
        bound += std::abs(term) * relative;
    }
    if (std::abs(sum.imag()) > 1e-9) {
        throw ConvergenceError("spectral sum left an imaginary part of " + std::to_string(sum.imag()));
    }
    return MethodResult::floating(sum.real(), Method::Spectral, bound);
}

MethodResult z_asymptotic(const RunQuery& query, const SpectralDecomposition& s) {
    check_matches(query, s);

    std::vector<std::size_t> poles;
    for (std::size_t k = 0; k < s.roots.size(); ++k) {
        if (k != s.removable_index) poles.push_back(k);
    }
    const cplx x1 = s.roots[poles.front()];
    if (x1.imag() != 0.0 || x1.real() <= 1.0) {
        throw DominanceError("dominant pole is not real and greater than 1");
    }
    double truncation = 0.0;
    if (poles.size() > 1) {
        const double gap = std::abs(s.roots[poles[1]]) - std::abs(x1);
        if (gap < 1e-9) throw DominanceError("two smallest pole moduli coincide; no unique dominant root");
        double max_residue = 0.0;
        for (std::size_t i = 1; i < poles.size(); ++i) max_residue = std::max(max_residue, std::abs(s.residues[poles[i]]));
        truncation = static_cast<double>(query.r) * max_residue *
                     std::pow(std::abs(s.roots[poles[1]]), -static_cast<double>(query.n + 1));
    }
    const double z = (s.residues[poles.front()] * integer_power(1.0 / x1, query.n + 1)).real();
    return MethodResult::floating(z, Method::Asymptotic, truncation);
}

} // namespace runprob::numeric
