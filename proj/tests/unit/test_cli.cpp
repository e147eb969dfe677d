#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "runprob/errors.hpp"
#include "runprob_cli/commands.hpp"
#include "runprob_cli/record.hpp"
#include "support/oracles.hpp"

namespace runprob::cli {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream stream(text);
    for (std::string line; std::getline(stream, line);) result.push_back(line);
    return result;
}

OutputRecord random_record(std::mt19937_64& gen) {
    std::uniform_int_distribution<std::int64_t> small(0, 100000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    OutputRecord record;
    record.n = small(gen);
    record.r = 1 + small(gen) % 50;
    const BigRational p(BigInt(static_cast<long>(small(gen))), BigInt(static_cast<long>(small(gen) + 100000)));
    record.p = p.to_string();
    const double z = unit(gen) * std::pow(10.0, -static_cast<double>(gen() % 300));
    if (gen() % 2) record.z_exact = BigRational(BigInt(static_cast<long>(gen() >> 2)), BigInt(static_cast<long>(gen() >> 2) + 1)).to_string();
    record.z_float = format_double(z);
    record.y_float = format_double(1.0 - z);
    record.method = (gen() % 2) ? "exact" : "spectral";
    if (gen() % 2) record.error_bound = format_double(unit(gen) * 1e-12);
    return record;
}

TEST(Record, CsvAndJsonRoundTrip) {
    std::mt19937_64 gen(99);
    for (int i = 0; i < 500; ++i) {
        const auto record = random_record(gen);
        EXPECT_EQ(from_csv(to_csv(record)), record);
        EXPECT_EQ(from_json(nlohmann::json::parse(to_json(record).dump())), record);
    }
}

TEST(Record, FieldsRoundTripToTheirValues) {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 500; ++i) {
        const auto record = random_record(gen);
        const auto back = from_csv(to_csv(record));
        EXPECT_EQ(BigRational::parse(back.p), BigRational::parse(record.p));
        EXPECT_EQ(std::stod(back.z_float), std::stod(record.z_float));
        if (!record.z_exact.empty()) EXPECT_EQ(BigRational::parse(back.z_exact), BigRational::parse(record.z_exact));
    }
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Record, MalformedInputIsADomainError) {
    EXPECT_THROW(from_csv("1,2,3"), DomainError);
    EXPECT_THROW(from_csv("x,2,1/2,,0.5,0.5,exact,"), DomainError);
    EXPECT_THROW(from_json(nlohmann::json{{"n", 1}}), DomainError);
}

TEST(Compute, ExactExample) {
    const auto result = invoke({"compute", "--p", "1/2", "--r", "2", "--n", "3", "--method", "exact", "--format", "csv"});
    ASSERT_EQ(result.code, kExitOk);
    const auto rows = lines(result.out);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0], kCsvHeader);
    const auto record = from_csv(rows[1]);
    EXPECT_EQ(record.z_exact, "5/8");
    EXPECT_EQ(record.y_float, "0.375");
    EXPECT_EQ(record.method, "exact");
}

TEST(Compute, DefaultMethodIsTheClosedForm) {
    const auto result = invoke({"compute", "--p", "0.5", "--r", "2", "--n", "4", "--format", "json"});
    ASSERT_EQ(result.code, kExitOk);
    const auto record = from_json(nlohmann::json::parse(result.out));
    EXPECT_EQ(record.method, "exact");
    EXPECT_EQ(record.z_exact, "1/2");
    EXPECT_EQ(record.p, "1/2");
}

TEST(Compute, RefusalNamesAFallback) {
    const auto result = invoke({"compute", "--p", "1/2", "--r", "1", "--n", "10", "--method", "spectral"});
    EXPECT_EQ(result.code, kExitRefused);
    EXPECT_TRUE(result.out.empty());
    EXPECT_NE(result.err.find("NearMultiple"), std::string::npos);
    EXPECT_NE(result.err.find("--method"), std::string::npos);
    EXPECT_EQ(invoke({"compute", "--p", "1/2", "--r", "2", "--n", "30", "--method", "brute"}).code, kExitRefused);
}

TEST(Compute, TrivialAndDomainCases) {
    const auto result = invoke({"compute", "--p", "1", "--r", "3", "--n", "2", "--method", "exact", "--format", "json"});
    ASSERT_EQ(result.code, kExitOk);
    EXPECT_EQ(from_json(nlohmann::json::parse(result.out)).z_exact, "1");
    EXPECT_EQ(invoke({"compute", "--p", "3/2", "--r", "3", "--n", "2"}).code, kExitDomain);
    EXPECT_EQ(invoke({"compute", "--p", "1/2", "--r", "0", "--n", "2"}).code, kExitDomain);
    EXPECT_EQ(invoke({"compute", "--p", "1/2", "--r", "2", "--n", "-1"}).code, kExitDomain);
    EXPECT_EQ(invoke({"compute", "--p", "abc", "--r", "2", "--n", "1"}).code, kExitDomain);
    EXPECT_EQ(invoke({"compute", "--p", "1/2", "--r", "2", "--n", "1", "--method", "nope"}).code, kExitDomain);
    EXPECT_EQ(invoke({}).code, kExitDomain);
}

TEST(Compute, EveryMethodAgreesOnASmallCase) {
    for (const char* method : {"exact", "recurrence", "series", "float", "spectral", "asymptotic", "matrix", "brute"}) {
        const auto result = invoke({"compute", "--p", "1/3", "--r", "3", "--n", "20", "--method", method, "--format", "json"});
        ASSERT_EQ(result.code, kExitOk) << method << ' ' << result.err;
        const auto record = from_json(nlohmann::json::parse(result.out));
        EXPECT_EQ(record.method, method);
        EXPECT_NEAR(std::stod(record.z_float), 0.607823593392289, 1e-9) << method;
    }
    const auto mc = invoke({"compute", "--p", "1/2", "--r", "2", "--n", "3", "--method", "mc", "--trials", "100000",
                            "--seed", "42", "--format", "json"});
    ASSERT_EQ(mc.code, kExitOk);
    const auto record = from_json(nlohmann::json::parse(mc.out));
    EXPECT_TRUE(record.z_exact.empty());
    EXPECT_NEAR(std::stod(record.y_float), 0.375, 4.0 * std::stod(record.error_bound));
}

TEST(Table, SeriesRowsAndFibonacci) {
    const auto result = invoke({"table", "--p", "1/2", "--r", "2", "--n-max", "10", "--format", "csv"});
    ASSERT_EQ(result.code, kExitOk);
    const auto rows = lines(result.out);
    ASSERT_EQ(rows.size(), 12U);
    EXPECT_EQ(rows[0], "n,r,p,z_exact,z_float,y_float,method,error_bound");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto record = from_csv(rows[i]);
        EXPECT_EQ(record.n, static_cast<std::int64_t>(i - 1));
        const BigRational scaled = BigRational::parse(record.z_exact) * BigRational(testing::power_of_two(static_cast<unsigned>(record.n)));
        EXPECT_EQ(scaled, BigRational(testing::fibonacci(static_cast<unsigned>(record.n + 2))));
    }
    EXPECT_EQ(from_csv(rows[5]).z_exact, "1/2");
}

TEST(Table, JsonArrayAndTrivialP) {
    const auto result = invoke({"table", "--p", "0", "--r", "1", "--n-max", "3", "--format", "json"});
    ASSERT_EQ(result.code, kExitOk);
    const auto array = nlohmann::json::parse(result.out);
    ASSERT_EQ(array.size(), 4U);
    for (const auto& object : array) EXPECT_EQ(from_json(object).z_exact, "1");
    EXPECT_EQ(invoke({"table", "--p", "2", "--r", "1", "--n-max", "3"}).code, kExitDomain);
}

TEST(Roots, ReportsAndFlags) {
    const auto result = invoke({"roots", "--p", "1/2", "--r", "2", "--format", "json"});
    ASSERT_EQ(result.code, kExitOk);
    const auto report = nlohmann::json::parse(result.out);
    ASSERT_EQ(report.at("roots").size(), 3U);
    for (const auto& root : report.at("roots")) EXPECT_EQ(root.at("x").at("im").get<double>(), 0.0);
    EXPECT_EQ(report.at("condition_flag"), "WellSeparated");

    const auto confluent = invoke({"roots", "--p", "1/2", "--r", "1", "--format", "json"});
    ASSERT_EQ(confluent.code, kExitOk);
    EXPECT_EQ(nlohmann::json::parse(confluent.out).at("condition_flag"), "NearMultiple");

    const auto text = invoke({"roots", "--p", "1/2", "--r", "1"});
    EXPECT_NE(text.out.find("condition_flag=NearMultiple"), std::string::npos);
    EXPECT_EQ(invoke({"roots", "--p", "1", "--r", "4"}).code, kExitDomain);
    EXPECT_EQ(invoke({"roots", "--p", "0", "--r", "4"}).code, kExitDomain);
}

TEST(Verify, AcceptanceSweepPasses) {
    const auto result = invoke({"verify", "--n-max", "50", "--r-max", "6", "--p-list", "1/3,1/2,2/3"});
    EXPECT_EQ(result.code, kExitOk) << result.err;
    EXPECT_NE(result.out.find("cells=918 violations=0"), std::string::npos);
}

TEST(Verify, EmptySequenceAndDomainErrors) {
    const auto result = invoke({"verify", "--n-max", "0", "--r-max", "1", "--p-list", "1/2", "--format", "json"});
    ASSERT_EQ(result.code, kExitOk);
    const auto report = nlohmann::json::parse(result.out);
    EXPECT_EQ(report.at("cells"), 1);
    EXPECT_EQ(report.at("violations"), 0);
    EXPECT_EQ(invoke({"verify", "--p-list", "3/2"}).code, kExitDomain);
    EXPECT_EQ(invoke({"verify", "--p-list", "1/2", "--n-max", "301"}).code, kExitDomain);
    EXPECT_EQ(invoke({"verify", "--p-list", "1/2", "--r-max", "11"}).code, kExitDomain);
    EXPECT_EQ(invoke({"verify", "--p-list", "1/2", "--brute-max", "25"}).code, kExitDomain);
}

TEST(Verify, ReportIsDeterministicAcrossWorkerCounts) {
    VerifyOptions options;
    options.n_max = 40;
    options.r_max = 4;
    options.p_list = {BigRational::parse("9/10"), BigRational::parse("1/10"), BigRational::parse("0"),
                      BigRational::parse("1")};
    const auto one = verify_grid(options, 1);
    const auto many = verify_grid(options, 4);
    ASSERT_EQ(one.pairs.size(), many.pairs.size());
    for (std::size_t k = 0; k < one.pairs.size(); ++k) {
        EXPECT_EQ(one.pairs[k].checked, many.pairs[k].checked);
        EXPECT_EQ(one.pairs[k].refused, many.pairs[k].refused);
        EXPECT_EQ(one.pairs[k].max_abs, many.pairs[k].max_abs);
        EXPECT_EQ(one.pairs[k].max_rel, many.pairs[k].max_rel);
    }
    EXPECT_TRUE(one.violations.empty());
    EXPECT_EQ(one.cells, 4U * 4U * 41U);
}

} // namespace
} // namespace runprob::cli
