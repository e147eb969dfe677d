#include "runprob/matrix_power.hpp"

#include <cfloat>

namespace runprob::numeric {

SquareMatrix SquareMatrix::identity(std::size_t dim) {
    SquareMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    const std::size_t d = a.dim();
    SquareMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

std::vector<double> SquareMatrix::apply(const std::vector<double>& v) const {
    std::vector<double> out(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
    }
    return out;
}

SquareMatrix companion_matrix(double kernel_weight, std::int64_t r) {
    const auto d = static_cast<std::size_t>(r) + 1;
    SquareMatrix m(d);
    m(0, 0) = 1.0;
    m(0, d - 1) = -kernel_weight;
    for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1.0;
    return m;
}

MethodResult z_matrix_power(const RunQuery& query) {
    validate_query(query);
    if (auto z = degenerate_z(query)) return MethodResult::floating(z->to_double(), Method::MatrixPower, 0.0);
    const auto& [p, r, n] = query;
    const BigRational p_r = p.pow(static_cast<unsigned long>(r));
    if (n < r) return MethodResult::floating(1.0, Method::MatrixPower, 0.0);

    // state = (z_r, z_{r-1}, ..., z_0)
    std::vector<double> state(static_cast<std::size_t>(r) + 1, 1.0);
    state[0] = (BigRational(1) - p_r).to_double();

    auto exponent = static_cast<std::uint64_t>(n - r);
    SquareMatrix power = companion_matrix((complement(p) * p_r).to_double(), r);
    int products = 0;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            state = power.apply(state);
            ++products;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            power = power * power;
            ++products;
        }
    }
    // Every mode of the companion matrix has modulus <= 1, so rounding
    // stays at absolute eps scale per product.
    const double bound = static_cast<double>(products + 1) * static_cast<double>(r + 1) * DBL_EPSILON;
    return MethodResult::floating(state[0], Method::MatrixPower, bound);
}

MethodResult z_recurrence_float(const RunQuery& query) {
    validate_query(query);
    if (auto z = degenerate_z(query)) return MethodResult::floating(z->to_double(), Method::Recurrence, 0.0);
    const auto& [p, r, n] = query;
    const BigRational p_r = p.pow(static_cast<unsigned long>(r));
    if (n < r) return MethodResult::floating(1.0, Method::Recurrence, 0.0);

    const double weight = (complement(p) * p_r).to_double();
    const auto width = static_cast<std::size_t>(r) + 1;
    // ring buffer: slot m % width holds z_m
    std::vector<double> ring(width, 1.0);
    ring[static_cast<std::size_t>(r) % width] = (BigRational(1) - p_r).to_double();
    for (std::int64_t m = r; m < n; ++m) {
        const double next = ring[static_cast<std::size_t>(m) % width] -
                            weight * ring[static_cast<std::size_t>(m - r) % width];
        ring[static_cast<std::size_t>(m + 1) % width] = next;
    }
    const double bound = 2.0 * static_cast<double>(n - r + 1) * DBL_EPSILON;
    return MethodResult::floating(ring[static_cast<std::size_t>(n) % width], Method::Recurrence, bound);
}

} // namespace runprob::numeric
