#pragma once

#include <cstdint>
#include <optional>

#include "runprob/big_rational.hpp"

namespace runprob {

/// One problem instance: is there a run of at least r successes in n
/// Bernoulli(p) trials?
struct RunQuery {
    BigRational p;
    std::int64_t r = 1;
    std::int64_t n = 0;
};

/// Returns the query unchanged, or throws DomainError when p is outside
/// [0, 1], r < 1, or n < 0.
RunQuery validate_query(const RunQuery& query);

/// Throws DomainError unless 0 <= p <= 1 and r >= 1.
void validate_parameters(const BigRational& p, std::int64_t r);

/// q = 1 - p.
BigRational complement(const BigRational& p);

/// Direct value of z_n for p in {0, 1}; empty for 0 < p < 1.
/// p = 0: z_n = 1 for all n. p = 1: z_n = 1 for n < r, 0 otherwise.
std::optional<BigRational> degenerate_z(const RunQuery& query);

/// True when p is 0 or 1.
bool is_degenerate(const BigRational& p);

} // namespace runprob
