#pragma once

#include <cstddef>

#include "runprob/method_result.hpp"
#include "runprob/query.hpp"

namespace runprob::numeric {

/// Outcome of the floating closed-form evaluation, with diagnostics.
struct FloatEvaluation {
    double z = 0.0;
    double error_bound = 0.0;
    /// 53 when the double pass sufficed, otherwise the MPFR working precision.
    long precision_bits = 53;
    std::size_t terms = 0;
};

/// Evaluates z_n = beta_{n,r} - p^r beta_{n-r,r} in floating point.
///
/// Terms are formed in log space (log-gamma binomials plus a separate sign)
/// and accumulated with Neumaier summation. A double pass runs first; when its
/// error bound exceeds `relative_target * |z|`, the same algorithm is rerun in
/// MPFR at doubling precision until the bound is met. Throws UnderflowError
/// when |z| is below the normal double range and ConvergenceError if the
/// precision cap is reached.
FloatEvaluation closed_form_float_evaluation(const RunQuery& query, double relative_target = 1e-12);

/// MethodResult wrapper over closed_form_float_evaluation; p in {0, 1} is
/// answered by the direct short-circuit.
MethodResult z_closed_form_float(const RunQuery& query);

} // namespace runprob::numeric
