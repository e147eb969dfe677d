#include "runprob/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "runprob/errors.hpp"
#include "runprob/parallel.hpp"
#include "runprob/random.hpp"

namespace runprob::oracle {

bool contains_run(std::uint32_t bits, std::int64_t n, std::int64_t r) {
    if (r > n) return false;
    std::uint32_t window = n >= 32 ? bits : bits & ((std::uint32_t{1} << n) - 1U);
    // After folding r-1 shifts, a surviving bit marks the start of r ones.
    for (std::int64_t i = 1; i < r && window != 0; ++i) window &= window >> 1U;
    return window != 0;
}

bool contains_run(std::span<const bool> outcomes, std::int64_t r) {
    std::int64_t current = 0;
    for (bool success : outcomes) {
        current = success ? current + 1 : 0;
        if (current >= r) return true;
    }
    return false;
}

MethodResult z_bruteforce(const RunQuery& query, unsigned workers) {
    validate_query(query);
    const auto& [p, r, n] = query;
    if (n > kBruteForceCap) {
        throw CapExceededError("exhaustive enumeration is capped at n = " + std::to_string(kBruteForceCap) +
                               ", got n = " + std::to_string(n));
    }

    // Count run-containing sequences by number of successes; shards add
    // integer counts, so the reduction is order independent.
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t shard_size = std::uint64_t{1} << 16;
    const std::uint64_t shards = (total + shard_size - 1) / shard_size;
    std::vector<std::vector<std::uint64_t>> partial(shards, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    parallel_for(shards, workers, [&](std::size_t shard) {
        auto& counts = partial[shard];
        const std::uint64_t begin = shard * shard_size;
        const std::uint64_t end = std::min(total, begin + shard_size);
        for (std::uint64_t bits = begin; bits < end; ++bits) {
            const auto word = static_cast<std::uint32_t>(bits);
            if (contains_run(word, n, r)) ++counts[static_cast<std::size_t>(std::popcount(word))];
        }
    });

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& shard : partial) {
        for (std::size_t s = 0; s < counts.size(); ++s) counts[s] += shard[s];
    }

    const BigRational q = complement(p);
    BigRational y(0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
        if (counts[s] == 0) continue;
        BigInt count;
        mpz_set_ui(count.get_mpz_t(), static_cast<unsigned long>(counts[s]));
        y += BigRational(count) * p.pow(s) * q.pow(static_cast<unsigned long>(n) - s);
    }
    return MethodResult::exact(BigRational(1) - y, Method::BruteForce);
}

McEstimate mc_estimate(const RunQuery& query, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    validate_query(query);
    if (trials == 0) throw DomainError("Monte Carlo needs at least one trial");
    const auto& [p, r, n] = query;

    const double threshold_real = std::round(std::ldexp(p.to_double(), 53));
    const auto threshold = static_cast<std::uint64_t>(threshold_real);

    const std::uint64_t blocks = (trials + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<std::uint64_t> block_seeds(blocks);
    SplitMix64 master(seed);
    for (auto& s : block_seeds) s = master.next();

    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_for(blocks, workers, [&](std::size_t b) {
        Xoshiro256StarStar rng(block_seeds[b]);
        const std::uint64_t begin = b * kMonteCarloBlock;
        const std::uint64_t count = std::min(kMonteCarloBlock, trials - begin);
        std::uint64_t found = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::int64_t current = 0;
            for (std::int64_t i = 0; i < n; ++i) {
                const bool success = (rng.next() >> 11U) < threshold;
                current = success ? current + 1 : 0;
                if (current >= r) {
                    ++found;
                    break;
                }
            }
        }
        hits[b] = found;
    });

    std::uint64_t total_hits = 0;
    for (auto h : hits) total_hits += h;
    McEstimate out;
    out.trials = trials;
    out.seed = seed;
    out.y_hat = static_cast<double>(total_hits) / static_cast<double>(trials);
    out.std_err = std::sqrt(out.y_hat * (1.0 - out.y_hat) / static_cast<double>(trials));
    return out;
}

} // namespace runprob::oracle
