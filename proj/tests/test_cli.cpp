#include <doctest.h>

#include "test_util.hpp"

#include <splitroots/cli.hpp>
#include <splitroots/errors.hpp>
#include <splitroots/polyparse.hpp>

#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace splitroots;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "splitroots");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("parse_poly examples") {
    const auto f = parse_poly("x^4+3x+1");
    CHECK(f.degree() == 4);
    CHECK(std::vector<i64>(f.coeffs().begin(), f.coeffs().end()) == std::vector<i64>{1, 3, 0, 0});

    const auto g = parse_poly("x^2 - 2*x + x + 1 + 2x");
    CHECK(std::vector<i64>(g.coeffs().begin(), g.coeffs().end()) == std::vector<i64>{1, 1});

    CHECK(parse_poly("  1 + 3 * x + x ^ 3 ") == parse_poly("x^3+3x+1"));
    CHECK(parse_poly("-5 + x^2") == MonicIntPolynomial({-5, 0}));
    CHECK(parse_poly("x^3 - x^3 + x^2 - 7") == MonicIntPolynomial({-7, 0}));
}

TEST_CASE("parse_poly errors") {
    CHECK_THROWS_AS(parse_poly("2x^2+1"), NotMonic);
    CHECK_THROWS_AS(parse_poly("-x^2+1"), NotMonic);
    CHECK_THROWS_AS(parse_poly("x+1"), DegreeTooSmall);
    CHECK_THROWS_AS(parse_poly("x - x"), DegreeTooSmall);
    CHECK_THROWS_AS(parse_poly("x^2 + 99999999999999999999"), CoefficientOverflow);
    CHECK_THROWS_AS(parse_poly("x^2 + 2305843009213693952*x + 2305843009213693952*x"), CoefficientOverflow);
    CHECK_THROWS_AS(parse_poly("x^2+2x+1"), InputError);  // repeated factor

    try {
        parse_poly("x^2 + 3y");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 7);
    }
    CHECK_THROWS_AS(parse_poly(""), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x^2 +"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x^2 3"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x^"), SyntaxError);
    CHECK_THROWS_AS(parse_poly("3*"), SyntaxError);
}

TEST_CASE("parse and print round trip") {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<int> deg(2, 8);
    std::uniform_int_distribution<long long> coef(-1'000'000'000'000LL, 1'000'000'000'000LL);
    std::bernoulli_distribution sparse(0.4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<i64> c(static_cast<std::size_t>(deg(gen)));
        for (auto& v : c) v = sparse(gen) ? 0 : coef(gen);
        if (c[0] == 0) c[0] = 1;
        std::optional<MonicIntPolynomial> f;
        try {
            f.emplace(c);
        } catch (const InputError&) {
            continue;
        }
        CHECK(parse_poly(f->to_string()) == *f);
    }
}

TEST_CASE("helpers") {
    CHECK(cli::format_real(0.875) == "0.875000000000");
    CHECK(cli::format_real(0.0) == "0.00000000000");
    CHECK(cli::leading_digit_notation(0.00123) == "1(3)");
    CHECK(cli::leading_digit_notation(0.00045) == "4(4)");
    CHECK(cli::leading_digit_notation(0.0) == "0");
    CHECK(cli::parse_int_list("2..4") == std::vector<int>{2, 3, 4});
    CHECK(cli::parse_int_list("7") == std::vector<int>{7});
    CHECK(cli::parse_int_list("2,3,5") == std::vector<int>{2, 3, 5});
    CHECK_THROWS_AS(cli::parse_int_list("4..2"), InputError);
    CHECK_THROWS_AS(cli::parse_int_list("a"), InputError);
}

TEST_CASE("theory command") {
    const Result r = run({"theory", "--n", "3", "--a", "1/2", "--what", "lower"});
    CHECK(r.code == 0);
    CHECK(r.out == "7/8\n0.875000000000\n");

    const Result csv = run({"theory", "--n", "2", "--a", "1/4", "--a", "1/2", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out == "n,a,V_upper,V_lower\n2,1/4,0.500000000000,0.500000000000\n2,1/2,0.00000000000,1.00000000000\n");

    const Result js = run({"theory", "--n", "4", "--a", "1/3", "--what", "lower", "--format", "json"});
    CHECK(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)[0]["exact"] == "131/162");

    const Result ih = run({"theory", "--n", "2", "--what", "irwin-hall", "--x", "1"});
    CHECK(ih.out == "U_2(1) = 1/2 ~ 0.500000000000\n");

    CHECK(run({"theory", "--n", "3", "--a", "0.5"}).code == 1);
    CHECK(run({"theory", "--n", "3", "--a", "3/2"}).code == 1);
    CHECK(run({"theory", "--n", "3", "--bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("piecewise command") {
    const Result r = run({"piecewise", "--n", "4", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["pieces"].size() == 6);
    CHECK(j["pieces"][1]["left"] == "1/4");
    CHECK(j["pieces"][1]["right"] == "1/3");
    CHECK(j["pieces"][1]["coeffs"] == nlohmann::json::array({"1/6", "2", "2", "-20/3"}));
    CHECK(j["pieces"][1]["expression"] == "-20/3*a^3 + 2*a^2 + 2*a + 1/6");

    const Result pretty = run({"piecewise", "--n", "3"});
    CHECK(pretty.out.find("[1/3, 1/2]: 3/2*a^2 + 1/2") != std::string::npos);
    CHECK(pretty.out.find("[0, 1/3]: -3*a^2 + 3*a") != std::string::npos);
}

TEST_CASE("volume command is reproducible") {
    const std::vector<std::string> args{"volume", "--n", "4", "--constraint", "x2<=1/2", "--samples", "100000", "--seed", "42",
                                        "--format", "csv"};
    const Result a = run(args);
    const Result b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("n,constraints,samples,seed,mean,stderr\n4,x2<=1/2,100000,42,", 0) == 0);
    CHECK(run({"volume", "--n", "4", "--constraint", "x5<=1/2"}).code == 1);
}

TEST_CASE("scan and stats commands reuse the cache") {
    const auto dir = scratch_dir("cli").string();
    const Result s = run({"scan", "--poly", "x^2+3x+1", "--upto", "100", "--cache-dir", dir, "--sn-budget", "100"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("split primes 11") != std::string::npos);
    CHECK(s.out.find("conclusive") != std::string::npos);

    const std::vector<std::string> stats_args{"stats", "--poly", "x^2+3x+1", "--m", "3", "--cache-dir", dir, "--format", "csv"};
    const Result first = run(stats_args);
    const Result second = run(stats_args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.rfind("n,m,X_m,split_count,max_deviation\n2,3,1009,", 0) == 0);

    const std::string cdf = dir + "/cdf.csv";
    const Result pr = run({"stats", "--poly", "x^2+3x+1", "--upto", "100", "--constraint", "x1>=1/4", "--cache-dir", dir,
                           "--emit-cdf", cdf});
    REQUIRE(pr.code == 0);
    std::ifstream is(cdf);
    std::string header;
    std::getline(is, header);
    CHECK(header == "a,empirical,theoretical");

    CHECK(run({"stats", "--poly", "2x^2+1", "--upto", "100", "--cache-dir", dir}).code == 1);
}

TEST_CASE("table command marks skipped cells") {
    const auto dir = scratch_dir("cli-table").string();
    const Result r = run({"table", "--n", "2..3", "--m", "2", "--max-scan", "50", "--cache-dir", dir, "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "n,m,X_m,split_count,max_deviation\n2,2,,,skipped\n3,2,,,skipped\n");
}
