#include "runprob/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "runprob/errors.hpp"

namespace runprob::numeric {

namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// With V(x) = (1 - p x) W(x) and U(x) = (1 - p x) U1(x):
//   W(x)  = 1 - q * sum_{j=1..r} p^{j-1} x^j
//   U1(x) = sum_{j=0..r-1} (p x)^j
std::vector<double> deflated_denominator(const KernelPolynomials& k) {
    std::vector<double> w(static_cast<std::size_t>(k.r) + 1, 0.0);
    w[0] = 1.0;
    double p_power = 1.0;
    for (std::size_t j = 1; j < w.size(); ++j) {
        w[j] = -k.q * p_power;
        p_power *= k.p;
    }
    return w;
}

std::vector<double> deflated_numerator(const KernelPolynomials& k) {
    std::vector<double> u(static_cast<std::size_t>(k.r), 0.0);
    double p_power = 1.0;
    for (auto& c : u) {
        c = p_power;
        p_power *= k.p;
    }
    return u;
}

cplx newton_polish(std::span<const double> coeffs, cplx x) {
    for (int i = 0; i < 50; ++i) {
        const cplx d = evaluate_derivative(coeffs, x);
        if (d == 0.0) break;
        const cplx step = evaluate(coeffs, x) / d;
        x -= step;
        if (std::abs(step) <= 2.0 * kEps * std::abs(x)) break;
    }
    return x;
}

double backward_error(const KernelPolynomials& k, cplx x) {
    const double scale = std::max(1.0, std::pow(std::abs(x), static_cast<double>(k.r + 1)));
    return std::abs(evaluate(k.v_coeffs, x)) / scale;
}

/// Snaps near-real roots onto the axis and forces exact conjugate pairs.
void symmetrize(std::vector<cplx>& roots) {
    for (auto& x : roots) {
        if (std::abs(x.imag()) <= 64.0 * kEps * std::abs(x)) x = {x.real(), 0.0};
    }
    std::vector<bool> paired(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (paired[i] || roots[i].imag() <= 0.0) continue;
        std::size_t best = roots.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (paired[j] || roots[j].imag() >= 0.0) continue;
            const double dist = std::abs(roots[j] - std::conj(roots[i]));
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == roots.size()) continue;
        const cplx mean{0.5 * (roots[i].real() + roots[best].real()),
                        0.5 * (roots[i].imag() - roots[best].imag())};
        roots[i] = mean;
        roots[best] = std::conj(mean);
        paired[i] = paired[best] = true;
    }
}

} // namespace

std::string_view to_string(ConditionFlag flag) {
    return flag == ConditionFlag::WellSeparated ? "WellSeparated" : "NearMultiple";
}

std::vector<cplx> aberth_roots(std::span<const double> coeffs, double initial_radius, int max_sweeps,
                               int* sweeps_used) {
    std::size_t degree = coeffs.size();
    while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
    if (degree < 2) return {};
    --degree;
    const auto poly = coeffs.first(degree + 1);

    // Offset angle keeps the start off the real axis, where a real
    // polynomial's iterates would otherwise stay trapped.
    std::vector<cplx> z(degree);
    for (std::size_t k = 0; k < degree; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
        z[k] = std::polar(initial_radius, angle);
    }

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (std::size_t k = 0; k < degree; ++k) {
            const cplx value = evaluate(poly, z[k]);
            if (value == 0.0) continue;
            const cplx ratio = value / evaluate_derivative(poly, z[k]);
            cplx repulsion = 0.0;
            for (std::size_t j = 0; j < degree; ++j) {
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            }
            const cplx step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            if (std::abs(step) > 4.0 * kEps * std::abs(z[k])) converged = false;
        }
        if (converged) {
            ++sweep;
            break;
        }
    }
    if (sweeps_used != nullptr) *sweeps_used = sweep;
    return z;
}

SpectralDecomposition solve_kernel_roots(const KernelPolynomials& kernel, const RootSolverOptions& options) {
    if (kernel.p <= 0.0 || kernel.p >= 1.0) {
        throw DegenerateKernelError("kernel V(x) degenerates for p in {0, 1}; no spectral form");
    }
    const double weight = kernel.v_coeffs.back();
    const double radius = std::pow(1.0 / weight, 1.0 / static_cast<double>(kernel.r + 1));

    SpectralDecomposition out;
    out.kernel = kernel;
    out.roots = aberth_roots(kernel.v_coeffs, radius, options.max_sweeps, &out.sweeps);
    if (out.roots.size() != static_cast<std::size_t>(kernel.r) + 1) {
        throw ConvergenceError("root solver returned the wrong number of roots");
    }
    for (const auto& x : out.roots) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) ||
            backward_error(kernel, x) > options.residual_tolerance) {
            throw ConvergenceError("root iteration missed the residual bound after " + std::to_string(out.sweeps) +
                                   " sweeps");
        }
    }

    // 1/p is known exactly; the remaining roots belong to W and are polished there.
    const cplx removable{1.0 / kernel.p, 0.0};
    const auto nearest = std::min_element(out.roots.begin(), out.roots.end(), [&](cplx a, cplx b) {
        return std::abs(a - removable) < std::abs(b - removable);
    });
    *nearest = removable;
    const auto w = deflated_denominator(kernel);
    for (auto it = out.roots.begin(); it != out.roots.end(); ++it) {
        if (it != nearest) *it = newton_polish(w, *it);
    }
    const auto removable_offset = static_cast<std::size_t>(nearest - out.roots.begin());

    symmetrize(out.roots);

    std::vector<std::size_t> order(out.roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(out.roots[a]);
        const double mb = std::abs(out.roots[b]);
        if (ma != mb) return ma < mb;
        return std::arg(out.roots[a]) < std::arg(out.roots[b]);
    });

    const auto u1 = deflated_numerator(kernel);
    std::vector<cplx> sorted(order.size());
    out.residues.assign(order.size(), 0.0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted[i] = out.roots[order[i]];
        if (order[i] == removable_offset) {
            out.removable_index = i;
            continue;
        }
        // -U1/W' equals -U/V' at every simple root of W.
        out.residues[i] = -evaluate(u1, sorted[i]) / evaluate_derivative(w, sorted[i]);
    }
    out.roots = std::move(sorted);

    double max_modulus = 0.0;
    out.min_root_separation = std::numeric_limits<double>::infinity();
    out.max_backward_error = 0.0;
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        max_modulus = std::max(max_modulus, std::abs(out.roots[i]));
        out.max_backward_error = std::max(out.max_backward_error, backward_error(kernel, out.roots[i]));
        for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
            out.min_root_separation = std::min(out.min_root_separation, std::abs(out.roots[i] - out.roots[j]));
        }
    }
    if (out.max_backward_error > options.residual_tolerance) {
        throw ConvergenceError("polished roots missed the residual bound");
    }
    out.condition_flag = out.min_root_separation < options.separation_threshold * max_modulus
                             ? ConditionFlag::NearMultiple
                             : ConditionFlag::WellSeparated;
    return out;
}

} // namespace runprob::numeric
