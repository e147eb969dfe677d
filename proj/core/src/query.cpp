#include "runprob/query.hpp"

#include "runprob/errors.hpp"

namespace runprob {

void validate_parameters(const BigRational& p, std::int64_t r) {
    if (p < BigRational(0) || p > BigRational(1)) {
        throw DomainError("p must lie in [0, 1], got " + p.to_string());
    }
    if (r < 1) throw DomainError("run length r must be >= 1, got " + std::to_string(r));
}

RunQuery validate_query(const RunQuery& query) {
    validate_parameters(query.p, query.r);
    if (query.n < 0) throw DomainError("trial count n must be >= 0, got " + std::to_string(query.n));
    return query;
}

BigRational complement(const BigRational& p) { return BigRational(1) - p; }

bool is_degenerate(const BigRational& p) { return p.is_zero() || p == BigRational(1); }

std::optional<BigRational> degenerate_z(const RunQuery& query) {
    if (query.p.is_zero()) return BigRational(1);
    if (query.p == BigRational(1)) return BigRational(query.n < query.r ? 1 : 0);
    return std::nullopt;
}

} // namespace runprob
