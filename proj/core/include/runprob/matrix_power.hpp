#pragma once

#include <cstdint>
#include <vector>

#include "runprob/method_result.hpp"
#include "runprob/query.hpp"

namespace runprob::numeric {

/// Row-major dense square matrix, just enough for companion-matrix powers.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

    static SquareMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
    [[nodiscard]] std::vector<double> apply(const std::vector<double>& v) const;

private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// (r+1) x (r+1) companion matrix of z_{m+1} = z_m - q p^r z_{m-r} acting on
/// the state (z_m, z_{m-1}, ..., z_{m-r}).
SquareMatrix companion_matrix(double kernel_weight, std::int64_t r);

/// z_n = e_0 . M^{n-r} (z_r, z_{r-1}, ..., z_0) by repeated squaring.
MethodResult z_matrix_power(const RunQuery& query);

/// The difference equation iterated in double precision.
MethodResult z_recurrence_float(const RunQuery& query);

} // namespace runprob::numeric
