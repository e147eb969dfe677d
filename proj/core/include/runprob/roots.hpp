#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "runprob/kernel.hpp"

namespace runprob::numeric {

enum class ConditionFlag { WellSeparated, NearMultiple };

std::string_view to_string(ConditionFlag flag);

/// Roots x_k of V and residues rho_k = -U(x_k) / V'(x_k), so that
/// z_n = sum_k rho_k / x_k^{n+1}.
///
/// Roots are sorted by ascending modulus, ties by ascending argument in
/// (-pi, pi]; non-real roots come in exact conjugate pairs. V and U share
/// the factor (1 - p x), so x = 1/p is always a root of V whose residue is
/// exactly zero; `removable_index` locates it.
struct SpectralDecomposition {
    KernelPolynomials kernel;
    std::vector<std::complex<double>> roots;
    std::vector<std::complex<double>> residues;
    std::size_t removable_index = 0;
    double min_root_separation = 0.0;
    double max_backward_error = 0.0;
    ConditionFlag condition_flag = ConditionFlag::WellSeparated;
    int sweeps = 0;
};

struct RootSolverOptions {
    int max_sweeps = 200;
    /// Backward-error acceptance: |V(x)| <= tolerance * max(1, |x|^{r+1}).
    double residual_tolerance = 1e-10;
    /// NearMultiple when min separation < this * max |x_k|.
    double separation_threshold = 1e-6;
};

/// Aberth-Ehrlich simultaneous iteration for all roots of a polynomial with
/// ascending coefficients, started on a circle of the given radius. Returns
/// the iterates after convergence or after max_sweeps (see `sweeps_used`).
std::vector<std::complex<double>> aberth_roots(std::span<const double> coeffs, double initial_radius, int max_sweeps,
                                               int* sweeps_used = nullptr);

/// All r+1 roots of V with residues and conditioning diagnostics.
/// Throws DegenerateKernelError for p in {0, 1} and ConvergenceError when a
/// root misses the backward-error bound after the sweep cap.
SpectralDecomposition solve_kernel_roots(const KernelPolynomials& kernel, const RootSolverOptions& options = {});

} // namespace runprob::numeric
