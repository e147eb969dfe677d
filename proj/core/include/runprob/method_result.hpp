#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "runprob/big_rational.hpp"

namespace runprob {

enum class Method { ClosedForm, Recurrence, Series, Spectral, Asymptotic, MatrixPower, BruteForce, MonteCarlo };

enum class Mode { Exact, Float };

std::string_view to_string(Method method);
std::string_view to_string(Mode mode);

/// A computed (z_n, y_n) pair. z is the probability of no run, y = 1 - z.
///
/// Exact results carry BigRational values with y + z = 1 exactly; float
/// results carry doubles and may carry an absolute error bound. A float z
/// is never clamped; it may sit outside [0, 1] only by its rounding slack
/// (the error bound, or 8 ulp of 1 when there is none).
class MethodResult {
public:
    using Value = std::variant<BigRational, double>;

    /// Throws DomainError if z is outside [0, 1].
    static MethodResult exact(BigRational z, Method method);
    static MethodResult floating(double z, Method method, std::optional<double> error_bound = std::nullopt);

    [[nodiscard]] const Value& z() const { return z_; }
    [[nodiscard]] const Value& y() const { return y_; }
    [[nodiscard]] Method method() const { return method_; }
    [[nodiscard]] Mode mode() const { return mode_; }
    [[nodiscard]] const std::optional<double>& error_bound() const { return error_bound_; }

    /// Exact value; throws std::bad_variant_access in Float mode.
    [[nodiscard]] const BigRational& z_exact() const { return std::get<BigRational>(z_); }
    [[nodiscard]] const BigRational& y_exact() const { return std::get<BigRational>(y_); }

    /// Value as double (correctly rounded from the exact value when Exact).
    [[nodiscard]] double z_float() const;
    [[nodiscard]] double y_float() const;

private:
    MethodResult() = default;

    Value z_;
    Value y_;
    Method method_ = Method::ClosedForm;
    Mode mode_ = Mode::Exact;
    std::optional<double> error_bound_;
};

} // namespace runprob
