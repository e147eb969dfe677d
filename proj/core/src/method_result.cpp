#include "runprob/method_result.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "runprob/errors.hpp"

namespace runprob {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::ClosedForm: return "ClosedForm";
    case Method::Recurrence: return "Recurrence";
    case Method::Series: return "Series";
    case Method::Spectral: return "Spectral";
    case Method::Asymptotic: return "Asymptotic";
    case Method::MatrixPower: return "MatrixPower";
    case Method::BruteForce: return "BruteForce";
    case Method::MonteCarlo: return "MonteCarlo";
    }
    return "?";
}

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "Exact" : "Float"; }

MethodResult MethodResult::exact(BigRational z, Method method) {
    if (z < BigRational(0) || z > BigRational(1)) {
        throw DomainError("probability outside [0, 1]: " + z.to_string());
    }
    MethodResult out;
    out.y_ = BigRational(1) - z;
    out.z_ = std::move(z);
    out.method_ = method;
    out.mode_ = Mode::Exact;
    return out;
}

MethodResult MethodResult::floating(double z, Method method, std::optional<double> error_bound) {
    if (error_bound && !(*error_bound >= 0.0)) throw DomainError("negative error bound");
    // No clamping: a value may leave [0, 1] only by its own rounding slack.
    const double slack = std::max(error_bound.value_or(0.0), 8.0 * std::numeric_limits<double>::epsilon());
    if (!(z >= -slack && z <= 1.0 + slack)) {
        throw DomainError("probability outside [0, 1]: " + std::to_string(z));
    }
    MethodResult out;
    out.z_ = z;
    out.y_ = 1.0 - z;
    out.method_ = method;
    out.mode_ = Mode::Float;
    out.error_bound_ = error_bound;
    return out;
}

double MethodResult::z_float() const {
    if (const auto* d = std::get_if<double>(&z_)) return *d;
    return std::get<BigRational>(z_).to_double();
}

double MethodResult::y_float() const {
    if (const auto* d = std::get_if<double>(&y_)) return *d;
    return std::get<BigRational>(y_).to_double();
}

} // namespace runprob
