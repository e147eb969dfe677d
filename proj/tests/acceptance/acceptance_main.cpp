// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "runprob/runprob.hpp"
#include "runprob_cli/commands.hpp"
#include "runprob_cli/record.hpp"
#include "support/oracles.hpp"

namespace {

using namespace runprob;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;
};

void fail(Verdict& v, const std::string& what) {
    if (v.pass) v.detail = what;
    v.pass = false;
}

std::string where(const BigRational& p, std::int64_t r, std::int64_t n) {
    return "p=" + p.to_string() + " r=" + std::to_string(r) + " n=" + std::to_string(n);
}

double relative_error(double value, const BigRational& exact) {
    const BigRational diff = (BigRational::parse(cli::format_double(value)) - exact).abs();
    return exact.is_zero() ? (diff.is_zero() ? 0.0 : INFINITY) : (diff / exact.abs()).to_double();
}

Verdict criterion_1() {
    Verdict v;
    std::size_t checked = 0;
    for (const auto& p : testing::p_grid()) {
        for (std::int64_t n = 1; n <= 16; ++n) {
            for (std::int64_t r = 1; r <= n; ++r) {
                const RunQuery q{p, r, n};
                if (exact::z_closed_form(q).z_exact() != oracle::z_bruteforce(q).z_exact()) fail(v, where(p, r, n));
                ++checked;
            }
        }
    }
    if (v.pass) v.detail = std::to_string(checked) + " points bit-exact";
    return v;
}

Verdict criterion_2() {
    Verdict v;
    std::size_t checked = 0;
    for (const auto& p : testing::p_grid()) {
        for (std::int64_t r = 1; r <= 8; ++r) {
            const auto series = exact::series_coefficients(p, r, 300);
            for (std::int64_t n = 0; n <= 300; ++n) {
                const RunQuery q{p, r, n};
                const auto closed = exact::z_closed_form(q).z_exact();
                if (closed != exact::z_recurrence(q).z_exact() || closed != series.at(n).z_exact()) {
                    fail(v, where(p, r, n));
                }
                ++checked;
            }
        }
    }
    if (v.pass) v.detail = std::to_string(checked) + " points, three methods bit-exact";
    return v;
}

// Closed-form values z_0..z_max for criteria 3 and 4.
std::vector<BigRational> closed_form_prefix(const BigRational& p, std::int64_t r, std::int64_t max) {
    std::vector<BigRational> z;
    for (std::int64_t n = 0; n <= max; ++n) z.push_back(exact::z_closed_form({p, r, n}).z_exact());
    return z;
}

Verdict criterion_3_and_4(bool generating) {
    Verdict v;
    for (const auto& p : testing::p_grid()) {
        for (std::int64_t r = 1; r <= 8; ++r) {
            const auto z = closed_form_prefix(p, r, 300);
            if (!generating) {
                const BigRational c = complement(p) * p.pow(static_cast<unsigned long>(r));
                for (std::int64_t m = r; m < 300; ++m) {
                    const auto i = static_cast<std::size_t>(m);
                    if (!(z[i + 1] - z[i] + c * z[i - static_cast<std::size_t>(r)]).is_zero()) fail(v, where(p, r, m));
                }
            } else {
                const auto product = exact::truncated_product(exact::kernel_denominator(p, r), z, 300);
                const auto u = exact::kernel_numerator(p, r);
                for (std::size_t m = 0; m <= 300; ++m) {
                    const BigRational expected = m < u.size() ? u[m] : BigRational(0);
                    if (product[m] != expected) fail(v, where(p, r, static_cast<std::int64_t>(m)));
                }
            }
        }
    }
    if (v.pass) v.detail = "5 p x 8 r, orders through 300, all exactly zero";
    return v;
}

Verdict criterion_5() {
    Verdict v;
    std::size_t checked = 0;
    std::string skipped;
    double worst = 0.0;
    for (const auto& p : testing::p_grid()) {
        for (std::int64_t r = 2; r <= 8; ++r) {
            const auto s = numeric::solve_kernel_roots(numeric::make_kernel(p, r));
            if (s.condition_flag != numeric::ConditionFlag::WellSeparated) {
                skipped += " (" + p.to_string() + "," + std::to_string(r) + ")";
                continue;
            }
            const auto series = exact::series_coefficients(p, r, 500);
            for (std::int64_t n = 0; n <= 500; ++n) {
                const RunQuery q{p, r, n};
                const auto exact_z = exact::z_closed_form(q).z_exact();
                const double rel = relative_error(numeric::z_spectral(q, s).z_float(), exact_z);
                worst = std::max(worst, rel);
                if (!(rel <= 1e-8)) fail(v, where(p, r, n) + " rel=" + cli::format_double(rel));
                ++checked;
            }
        }
    }
    bool refused = false;
    try {
        const auto s = numeric::solve_kernel_roots(numeric::make_kernel(BigRational::parse("1/2"), 1));
        numeric::z_spectral({BigRational::parse("1/2"), 1, 10}, s);
    } catch (const IllConditionedError&) {
        refused = true;
    }
    if (!refused) fail(v, "p=1/2 r=1 not refused with IllConditionedError");
    if (v.pass) {
        v.detail = std::to_string(checked) + " points, max rel " + cli::format_double(worst) +
                   "; p=1/2 r=1 refused; NearMultiple skipped:" + skipped;
    }
    return v;
}

Verdict criterion_6() {
    Verdict v;
    const auto p = BigRational::parse("1/2");
    const auto s = numeric::solve_kernel_roots(numeric::make_kernel(p, 2));
    const auto series = exact::series_coefficients(p, 2, 1000);
    double worst = 0.0;
    for (std::int64_t n = 60; n <= 1000; ++n) {
        const double rel = relative_error(numeric::z_asymptotic({p, 2, n}, s).z_float(), series.coefficients[static_cast<std::size_t>(n)]);
        worst = std::max(worst, rel);
        if (!(rel <= 1e-12)) fail(v, "n=" + std::to_string(n) + " rel=" + cli::format_double(rel));
    }
    if (v.pass) v.detail = "n = 60..1000, max rel " + cli::format_double(worst);
    return v;
}

Verdict criterion_7() {
    Verdict v;
    const auto p = BigRational::parse("1/2");
    for (unsigned n = 0; n <= 60; ++n) {
        const auto z = exact::z_closed_form({p, 2, n}).z_exact();
        if (z * BigRational(testing::power_of_two(n)) != BigRational(testing::fibonacci(n + 2))) fail(v, "n=" + std::to_string(n));
    }
    if (v.pass) v.detail = "n = 0..60";
    return v;
}

Verdict criterion_8() {
    Verdict v;
    const auto p = BigRational::parse("1/2");
    const auto e = oracle::mc_estimate({p, 2, 3}, 1000000, 42, default_worker_count());
    const double deviation = std::abs(e.y_hat - 0.375);
    if (!(deviation <= 4.0 * e.std_err)) fail(v, "|y_hat - 3/8| = " + cli::format_double(deviation));
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto run = oracle::mc_estimate({p, 2, 3}, 1000000, seed, default_worker_count());
        if (std::abs(run.y_hat - 0.375) <= 4.0 * run.std_err) ++covered;
    }
    if (covered < 19) fail(v, "only " + std::to_string(covered) + "/20 seeds consistent");
    if (v.pass) {
        v.detail = "y_hat=" + cli::format_double(e.y_hat) + " (" + cli::format_double(deviation / e.std_err) +
                   " std_err); " + std::to_string(covered) + "/20 seeds within 4 std_err";
    }
    return v;
}

Verdict criterion_9() {
    Verdict v;
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 0; n <= 40; ++n) ns.push_back(n);
    for (std::int64_t n : {50, 75, 100, 150, 200, 300, 400, 500, 700, 1000, 1250, 1500, 1750, 2000}) ns.push_back(n);
    std::size_t checked = 0;
    std::size_t underflow = 0;
    double worst = 0.0;
    for (const auto& p : testing::p_grid()) {
        for (std::int64_t r = 1; r <= 10; ++r) {
            for (const auto n : ns) {
                const RunQuery q{p, r, n};
                const auto exact_z = exact::z_closed_form(q).z_exact();
                const bool representable = exact_z >= BigRational::parse("2.2250738585072014e-308");
                try {
                    const double rel = relative_error(numeric::z_closed_form_float(q).z_float(), exact_z);
                    worst = std::max(worst, rel);
                    if (!representable || !(rel <= 1e-10)) fail(v, where(p, r, n) + " rel=" + cli::format_double(rel));
                    ++checked;
                } catch (const UnderflowError&) {
                    if (representable) fail(v, where(p, r, n) + " spurious UnderflowError");
                    ++underflow;
                } catch (const Error& e) {
                    fail(v, where(p, r, n) + " " + e.what());
                }
            }
        }
    }
    if (v.pass) {
        v.detail = std::to_string(checked) + " points, max rel " + cli::format_double(worst) + "; " +
                   std::to_string(underflow) + " points below DBL_MIN raise UnderflowError";
    }
    return v;
}

Verdict criterion_10() {
    Verdict v;
    std::ostringstream out;
    std::ostringstream err;
    const auto start = Clock::now();
    const int code = cli::run({"verify", "--n-max", "50", "--r-max", "6", "--p-list", "1/3,1/2,2/3"}, out, err);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (code != 0) fail(v, "exit " + std::to_string(code) + ": " + err.str());
    if (!(seconds < 30.0)) fail(v, "took " + cli::format_double(seconds) + " s");
    if (v.pass) v.detail = "exit 0";
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"1 oracle equivalence (closed form = brute force, n <= 16)", criterion_1},
        {"2 three-way exact agreement (n <= 300, r <= 8)", criterion_2},
        {"3 recurrence residual exactly zero", [] { return criterion_3_and_4(false); }},
        {"4 generating-function identity through order 300", [] { return criterion_3_and_4(true); }},
        {"5 spectral accuracy <= 1e-8 relative (n <= 500)", criterion_5},
        {"6 asymptotic dominance <= 1e-12 relative (p=1/2, r=2, n >= 60)", criterion_6},
        {"7 Fibonacci specialization (n <= 60)", criterion_7},
        {"8 Monte Carlo calibration", criterion_8},
        {"9 float closed form <= 1e-10 relative (n <= 2000, r <= 10)", criterion_9},
        {"10 verify --n-max 50 --r-max 6 --p-list 1/3,1/2,2/3 under 30 s", criterion_10},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = Clock::now();
        Verdict verdict;
        try {
            verdict = check();
        } catch (const std::exception& e) {
            verdict = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("%s criterion %s [%.2f s] %s\n", verdict.pass ? "PASS" : "FAIL", name, seconds,
                    verdict.detail.c_str());
        std::fflush(stdout);
        if (!verdict.pass) ++failures;
    }
    return failures;
}
