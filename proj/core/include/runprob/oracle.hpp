#pragma once

#include <cstdint>
#include <span>

#include "runprob/method_result.hpp"
#include "runprob/query.hpp"

/// Ground truth for the analytic evaluators: exhaustive enumeration of all
/// outcome sequences and a seeded Monte Carlo simulator.
namespace runprob::oracle {

inline constexpr std::int64_t kBruteForceCap = 24;

/// Trials per Monte Carlo block. Block b draws from its own xoshiro256**
/// stream seeded with the b-th SplitMix64 output of the master seed.
inline constexpr std::uint64_t kMonteCarloBlock = 65536;

/// True when the low n bits of `bits` (bit i = trial i, set = success)
/// contain at least r consecutive set bits.
bool contains_run(std::uint32_t bits, std::int64_t n, std::int64_t r);

/// True when the outcome sequence holds at least r consecutive successes.
bool contains_run(std::span<const bool> outcomes, std::int64_t r);

/// Weighs all 2^n sequences exactly: y = sum over run-containing sequences of
/// p^successes q^failures, z = 1 - y. Throws CapExceededError for n > 24.
MethodResult z_bruteforce(const RunQuery& query, unsigned workers = 1);

struct McEstimate {
    double y_hat = 0.0;
    std::uint64_t trials = 0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
};

/// Simulates `trials` sequences of n Bernoulli(p) draws (success iff the top
/// 53 bits of a xoshiro256** output fall below round(p * 2^53)) and reports
/// the fraction containing a run. Bit-identical for a given seed regardless
/// of `workers`.
McEstimate mc_estimate(const RunQuery& query, std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

} // namespace runprob::oracle
