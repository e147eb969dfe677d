#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "runprob/big_rational.hpp"

namespace runprob::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitRefused = 3;

/// Parses and dispatches a full command line (without the program name).
/// Returns the process exit code; nothing is written to `out` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::int64_t n_max = 50;
    std::int64_t r_max = 6;
    std::vector<BigRational> p_list;
    std::int64_t brute_max = 16;
};

struct PairSummary {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t refused = 0;
    std::uint64_t violations = 0;
    double max_abs = 0.0;
    double max_rel = 0.0;
};

struct Violation {
    BigRational p;
    std::int64_t r = 1;
    std::int64_t n = 0;
    std::string pair;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::uint64_t cells = 0;
    std::vector<PairSummary> pairs;
    /// Sorted by (p, r, n, pair).
    std::vector<Violation> violations;
};

/// Runs every evaluator on the grid p x (1..r_max) x (0..n_max) against the
/// exact closed form. Throws DomainError for out-of-range options.
VerifyReport verify_grid(const VerifyOptions& options, unsigned workers);

} // namespace runprob::cli
