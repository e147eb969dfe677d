#pragma once

#include <cstdint>

#include "runprob/big_rational.hpp"

namespace runprob {

/// C(a, b) as an exact integer; 0 when b > a.
BigInt binomial_exact(std::uint64_t a, std::uint64_t b);

} // namespace runprob
