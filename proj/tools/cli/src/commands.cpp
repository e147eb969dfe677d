#include "runprob_cli/commands.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "runprob/closed_form_float.hpp"
#include "runprob/errors.hpp"
#include "runprob/exact.hpp"
#include "runprob/matrix_power.hpp"
#include "runprob/oracle.hpp"
#include "runprob/parallel.hpp"
#include "runprob/roots.hpp"
#include "runprob/spectral.hpp"
#include "runprob_cli/record.hpp"

namespace runprob::cli {
namespace {

constexpr std::int64_t kVerifyMaxN = 300;
constexpr std::int64_t kVerifyMaxR = 10;

/// A method refused the query; carries the method the user should try instead.
struct Refusal {
    std::string message;
    std::string fallback;
};

std::string fallback_for(const std::string& method, const Error& error) {
    if (dynamic_cast<const CapExceededError*>(&error)) return "exact";
    if (dynamic_cast<const IllConditionedError*>(&error)) return "recurrence or matrix";
    if (dynamic_cast<const DominanceError*>(&error)) return "spectral or matrix";
    if (dynamic_cast<const UnderflowError*>(&error)) return "exact";
    if (dynamic_cast<const OverflowError*>(&error)) return "exact";
    if (method == "spectral" || method == "asymptotic") return "matrix";
    return "exact";
}

MethodResult evaluate(const std::string& method, const RunQuery& query, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers) {
    if (method == "exact") return exact::z_closed_form(query);
    if (method == "recurrence") return exact::z_recurrence(query);
    if (method == "series") return exact::series_coefficients(query.p, query.r, query.n).at(query.n);
    if (method == "float") return numeric::z_closed_form_float(query);
    if (method == "matrix") return numeric::z_matrix_power(query);
    if (method == "brute") return oracle::z_bruteforce(query, workers);
    if (method == "spectral" || method == "asymptotic") {
        const auto decomposition = numeric::solve_kernel_roots(numeric::make_kernel(query.p, query.r));
        return method == "spectral" ? numeric::z_spectral(query, decomposition)
                                    : numeric::z_asymptotic(query, decomposition);
    }
    if (method == "mc") {
        const auto estimate = oracle::mc_estimate(query, trials, seed, workers);
        return MethodResult::floating(1.0 - estimate.y_hat, Method::MonteCarlo, estimate.std_err);
    }
    throw DomainError("unknown method: " + method);
}

std::vector<BigRational> parse_p_list(const std::string& text) {
    std::vector<BigRational> list;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto p = BigRational::parse(item);
        validate_parameters(p, 1);
        list.push_back(p);
    }
    if (list.empty()) throw DomainError("empty --p-list");
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    return list;
}

int cmd_compute(const std::string& p_text, std::int64_t r, std::int64_t n, const std::string& method,
                std::uint64_t trials, std::uint64_t seed, Format format, std::ostream& out, std::ostream& err) {
    const RunQuery query = validate_query({BigRational::parse(p_text), r, n});
    try {
        const auto result = evaluate(method, query, trials, seed, default_worker_count());
        write_records(out, {make_record(query, result, method)}, format, true);
        return kExitOk;
    } catch (const DomainError&) {
        throw;
    } catch (const DegenerateKernelError&) {
        throw;
    } catch (const Error& e) {
        err << "refused: " << e.what() << "\nsuggested fallback: --method " << fallback_for(method, e) << '\n';
        return kExitRefused;
    }
}

int cmd_table(const std::string& p_text, std::int64_t r, std::int64_t n_max, Format format, std::ostream& out) {
    const auto p = BigRational::parse(p_text);
    validate_query({p, r, n_max});
    const auto series = exact::series_coefficients(p, r, n_max);
    std::vector<OutputRecord> records;
    records.reserve(static_cast<std::size_t>(n_max + 1));
    for (std::int64_t n = 0; n <= n_max; ++n) records.push_back(make_record({p, r, n}, series.at(n), "series"));
    write_records(out, records, format);
    return kExitOk;
}

int cmd_roots(const std::string& p_text, std::int64_t r, Format format, std::ostream& out, std::ostream& err) {
    const auto p = BigRational::parse(p_text);
    validate_parameters(p, r);
    if (format == Format::Csv) throw DomainError("roots supports --format text or json");
    numeric::SpectralDecomposition s;
    try {
        s = numeric::solve_kernel_roots(numeric::make_kernel(p, r));
    } catch (const ConvergenceError& e) {
        err << "refused: " << e.what() << "\nsuggested fallback: compute --method matrix\n";
        return kExitRefused;
    }
    if (format == Format::Json) {
        auto roots = nlohmann::json::array();
        for (std::size_t k = 0; k < s.roots.size(); ++k) {
            roots.push_back({{"x", {{"re", s.roots[k].real()}, {"im", s.roots[k].imag()}}},
                             {"rho", {{"re", s.residues[k].real()}, {"im", s.residues[k].imag()}}},
                             {"removable", k == s.removable_index}});
        }
        nlohmann::json report = {{"p", p.to_string()},
                                 {"r", r},
                                 {"roots", roots},
                                 {"min_root_separation", s.min_root_separation},
                                 {"max_backward_error", s.max_backward_error},
                                 {"condition_flag", std::string(numeric::to_string(s.condition_flag))}};
        out << report.dump() << '\n';
        return kExitOk;
    }
    const auto complex_text = [](std::complex<double> z) {
        return format_double(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + format_double(std::abs(z.imag())) +
               "i";
    };
    out << "p=" << p.to_string() << " r=" << r << '\n';
    for (std::size_t k = 0; k < s.roots.size(); ++k) {
        out << "x[" << k << "] = " << complex_text(s.roots[k]) << "   rho[" << k << "] = " << complex_text(s.residues[k]);
        if (k == s.removable_index) out << "   (removable, x = 1/p)";
        out << '\n';
    }
    out << "min_root_separation=" << format_double(s.min_root_separation) << '\n';
    out << "max_backward_error=" << format_double(s.max_backward_error) << '\n';
    out << "condition_flag=" << numeric::to_string(s.condition_flag) << '\n';
    return kExitOk;
}

int cmd_verify(const VerifyOptions& options, Format format, std::ostream& out, std::ostream& err) {
    const auto report = verify_grid(options, default_worker_count());
    for (const auto& v : report.violations) {
        err << "violation p=" << v.p.to_string() << " r=" << v.r << " n=" << v.n << " pair=" << v.pair
            << " abs=" << format_double(v.abs_diff) << " rel=" << format_double(v.rel_diff);
        if (!v.detail.empty()) err << " (" << v.detail << ')';
        err << '\n';
    }
    if (format == Format::Json) {
        auto pairs = nlohmann::json::array();
        for (const auto& s : report.pairs) {
            pairs.push_back({{"pair", s.name},
                             {"checked", s.checked},
                             {"refused", s.refused},
                             {"violations", s.violations},
                             {"max_abs", s.max_abs},
                             {"max_rel", s.max_rel}});
        }
        out << nlohmann::json{{"cells", report.cells}, {"pairs", pairs}, {"violations", report.violations.size()}}.dump()
            << '\n';
    } else if (format == Format::Csv) {
        out << "pair,checked,refused,violations,max_abs,max_rel\n";
        for (const auto& s : report.pairs) {
            out << s.name << ',' << s.checked << ',' << s.refused << ',' << s.violations << ','
                << format_double(s.max_abs) << ',' << format_double(s.max_rel) << '\n';
        }
    } else {
        char line[200];
        std::snprintf(line, sizeof line, "%-28s %8s %8s %10s %24s %24s\n", "pair", "checked", "refused", "violations",
                      "max_abs", "max_rel");
        out << line;
        for (const auto& s : report.pairs) {
            std::snprintf(line, sizeof line, "%-28s %8llu %8llu %10llu %24s %24s\n", s.name.c_str(),
                          static_cast<unsigned long long>(s.checked), static_cast<unsigned long long>(s.refused),
                          static_cast<unsigned long long>(s.violations), format_double(s.max_abs).c_str(),
                          format_double(s.max_rel).c_str());
            out << line;
        }
        out << "cells=" << report.cells << " violations=" << report.violations.size() << '\n';
    }
    return report.violations.empty() ? kExitOk : kExitViolation;
}

// ---- verification grid ----

enum class Check { Exact, Relative, Bounded };

struct PairRule {
    const char* name;
    Check check;
    double tolerance;
};

// Everything is compared against the exact closed form.
constexpr PairRule kPairs[] = {
    {"closed_form~recurrence", Check::Exact, 0.0},
    {"closed_form~series", Check::Exact, 0.0},
    {"closed_form~brute", Check::Exact, 0.0},
    {"closed_form~float", Check::Relative, 1e-10},
    {"closed_form~spectral", Check::Relative, 1e-8},
    {"closed_form~asymptotic", Check::Bounded, 1e-12},
    {"closed_form~matrix", Check::Bounded, 1e-12},
    {"closed_form~recurrence_float", Check::Bounded, 1e-12},
};
constexpr std::size_t kPairCount = std::size(kPairs);

enum class Outcome { Skipped, Refused, Pass, Fail };

struct CellResult {
    Outcome outcome = Outcome::Skipped;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    std::string detail;
};

using CellRow = std::array<CellResult, kPairCount>;

bool is_refusal(const Error& e) {
    return dynamic_cast<const IllConditionedError*>(&e) || dynamic_cast<const DominanceError*>(&e) ||
           dynamic_cast<const DegenerateKernelError*>(&e) || dynamic_cast<const UnderflowError*>(&e) ||
           dynamic_cast<const CapExceededError*>(&e);
}

CellResult compare_exact(const BigRational& reference, const BigRational& value) {
    CellResult cell;
    const BigRational diff = (value - reference).abs();
    cell.abs_diff = diff.to_double();
    cell.rel_diff = reference.is_zero() ? (diff.is_zero() ? 0.0 : std::numeric_limits<double>::infinity())
                                        : (diff / reference.abs()).to_double();
    cell.outcome = diff.is_zero() ? Outcome::Pass : Outcome::Fail;
    return cell;
}

CellResult compare_float(const BigRational& reference, const MethodResult& result, const PairRule& rule) {
    CellResult cell;
    const double value = result.z_float();
    // |value - reference| evaluated exactly before rounding
    const BigRational diff = (BigRational::parse(format_double(value)) - reference).abs();
    cell.abs_diff = diff.to_double();
    cell.rel_diff = reference.is_zero() ? (diff.is_zero() ? 0.0 : std::numeric_limits<double>::infinity())
                                        : (diff / reference.abs()).to_double();
    bool ok = false;
    if (rule.check == Check::Relative) {
        ok = cell.rel_diff <= rule.tolerance;
    } else {
        ok = cell.abs_diff <= result.error_bound().value_or(0.0) + rule.tolerance * reference.to_double();
    }
    if (!std::isfinite(value)) ok = false;
    cell.outcome = ok ? Outcome::Pass : Outcome::Fail;
    return cell;
}

template <typename Fn>
CellResult guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        CellResult cell;
        cell.outcome = is_refusal(e) ? Outcome::Refused : Outcome::Fail;
        cell.detail = e.what();
        if (cell.outcome == Outcome::Fail) cell.abs_diff = cell.rel_diff = std::numeric_limits<double>::infinity();
        return cell;
    }
}

std::vector<CellRow> verify_group(const BigRational& p, std::int64_t r, const VerifyOptions& options) {
    std::vector<CellRow> rows(static_cast<std::size_t>(options.n_max + 1));
    const auto series = exact::series_coefficients(p, r, options.n_max);
    std::optional<numeric::SpectralDecomposition> decomposition;
    std::string decomposition_error;
    bool decomposition_refused = false;
    try {
        decomposition = numeric::solve_kernel_roots(numeric::make_kernel(p, r));
    } catch (const Error& e) {
        decomposition_error = e.what();
        decomposition_refused = is_refusal(e);
    }
    const auto spectral_cell = [&](const RunQuery& query, const BigRational& reference, const PairRule& rule,
                                   bool asymptotic) {
        if (!decomposition) {
            CellResult cell;
            cell.outcome = decomposition_refused ? Outcome::Refused : Outcome::Fail;
            cell.detail = decomposition_error;
            return cell;
        }
        return guarded([&] {
            const auto result = asymptotic ? numeric::z_asymptotic(query, *decomposition)
                                           : numeric::z_spectral(query, *decomposition);
            return compare_float(reference, result, rule);
        });
    };

    for (std::int64_t n = 0; n <= options.n_max; ++n) {
        const RunQuery query{p, r, n};
        auto& row = rows[static_cast<std::size_t>(n)];
        const BigRational reference = exact::z_closed_form(query).z_exact();
        row[0] = guarded([&] { return compare_exact(reference, exact::z_recurrence(query).z_exact()); });
        row[1] = guarded([&] { return compare_exact(reference, series.coefficients[static_cast<std::size_t>(n)]); });
        if (n <= options.brute_max) {
            row[2] = guarded([&] { return compare_exact(reference, oracle::z_bruteforce(query).z_exact()); });
        }
        row[3] = guarded([&] { return compare_float(reference, numeric::z_closed_form_float(query), kPairs[3]); });
        row[4] = spectral_cell(query, reference, kPairs[4], false);
        row[5] = spectral_cell(query, reference, kPairs[5], true);
        row[6] = guarded([&] { return compare_float(reference, numeric::z_matrix_power(query), kPairs[6]); });
        row[7] = guarded([&] { return compare_float(reference, numeric::z_recurrence_float(query), kPairs[7]); });
    }
    return rows;
}

} // namespace

VerifyReport verify_grid(const VerifyOptions& options, unsigned workers) {
    if (options.n_max < 0 || options.n_max > kVerifyMaxN) throw DomainError("--n-max must lie in 0..300");
    if (options.r_max < 1 || options.r_max > kVerifyMaxR) throw DomainError("--r-max must lie in 1..10");
    if (options.brute_max < 0 || options.brute_max > oracle::kBruteForceCap) {
        throw DomainError("--brute-max must lie in 0..24");
    }
    if (options.p_list.empty()) throw DomainError("--p-list is empty");
    for (const auto& p : options.p_list) validate_parameters(p, 1);

    std::vector<BigRational> ps = options.p_list;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    struct Group {
        BigRational p;
        std::int64_t r;
        std::vector<CellRow> rows;
    };
    std::vector<Group> groups;
    for (const auto& p : ps) {
        for (std::int64_t r = 1; r <= options.r_max; ++r) groups.push_back({p, r, {}});
    }
    parallel_for(groups.size(), workers,
                 [&](std::size_t i) { groups[i].rows = verify_group(groups[i].p, groups[i].r, options); });

    VerifyReport report;
    for (const auto& rule : kPairs) report.pairs.push_back({rule.name});
    for (const auto& group : groups) {
        for (std::size_t n = 0; n < group.rows.size(); ++n) {
            ++report.cells;
            for (std::size_t k = 0; k < kPairCount; ++k) {
                const auto& cell = group.rows[n][k];
                auto& summary = report.pairs[k];
                if (cell.outcome == Outcome::Skipped) continue;
                if (cell.outcome == Outcome::Refused) {
                    ++summary.refused;
                    continue;
                }
                ++summary.checked;
                summary.max_abs = std::max(summary.max_abs, cell.abs_diff);
                summary.max_rel = std::max(summary.max_rel, cell.rel_diff);
                if (cell.outcome == Outcome::Fail) {
                    ++summary.violations;
                    report.violations.push_back({group.p, group.r, static_cast<std::int64_t>(n), kPairs[k].name,
                                                 cell.abs_diff, cell.rel_diff, cell.detail});
                }
            }
        }
    }
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability of a run of r successes in n Bernoulli trials", "runprob"};
    app.require_subcommand(1);

    std::string p_text;
    std::int64_t r = 1;
    std::int64_t n = 0;
    std::int64_t n_max = 0;
    std::string method = "exact";
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 42;
    std::string format_text = "text";
    std::string p_list_text;
    VerifyOptions verify_options;

    auto* compute = app.add_subcommand("compute", "Evaluate z_n and y_n for one (p, r, n)");
    compute->add_option("--p", p_text, "success probability, rational or decimal")->required();
    compute->add_option("--r", r, "run length")->required();
    compute->add_option("--n", n, "number of trials")->required();
    compute->add_option("--method", method, "evaluator")
        ->check(CLI::IsMember({"exact", "recurrence", "series", "float", "spectral", "asymptotic", "matrix", "brute",
                               "mc"}));
    compute->add_option("--trials", trials, "Monte Carlo trials");
    compute->add_option("--seed", seed, "Monte Carlo seed");
    compute->add_option("--format", format_text)->check(CLI::IsMember({"text", "csv", "json"}));

    auto* table = app.add_subcommand("table", "z_0 .. z_{n-max} from the generating function");
    table->add_option("--p", p_text)->required();
    table->add_option("--r", r)->required();
    table->add_option("--n-max", n_max)->required();
    table->add_option("--format", format_text)->check(CLI::IsMember({"text", "csv", "json"}));

    auto* roots = app.add_subcommand("roots", "Roots and residues of the generating-function denominator");
    roots->add_option("--p", p_text)->required();
    roots->add_option("--r", r)->required();
    roots->add_option("--format", format_text)->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "Cross-check every evaluator on a grid");
    verify->add_option("--n-max", verify_options.n_max, "largest n (<= 300)");
    verify->add_option("--r-max", verify_options.r_max, "largest r (<= 10)");
    verify->add_option("--p-list", p_list_text, "comma-separated probabilities")->required();
    verify->add_option("--brute-max", verify_options.brute_max, "largest n for enumeration (<= 24)");
    verify->add_option("--format", format_text)->check(CLI::IsMember({"text", "csv", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitDomain;
    }

    // Buffer output so a failing command leaves stdout empty.
    std::ostringstream buffer;
    try {
        const Format format = parse_format(format_text);
        int code = kExitOk;
        if (*compute) {
            code = cmd_compute(p_text, r, n, method, trials, seed, format, buffer, err);
        } else if (*table) {
            code = cmd_table(p_text, r, n_max, format, buffer);
        } else if (*roots) {
            code = cmd_roots(p_text, r, format, buffer, err);
        } else {
            verify_options.p_list = parse_p_list(p_list_text);
            code = cmd_verify(verify_options, format, buffer, err);
        }
        if (code == kExitOk || code == kExitViolation) out << buffer.str();
        return code;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DegenerateKernelError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRefused;
    }
}

} // namespace runprob::cli
