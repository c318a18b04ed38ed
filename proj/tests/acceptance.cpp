// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//   acceptance [--cache-dir DIR] [--only N]...

#include "oracles.hpp"

#include <splitroots/cli.hpp>
#include <splitroots/errors.hpp>
#include <splitroots/geometry.hpp>
#include <splitroots/modpoly.hpp>
#include <splitroots/polyparse.hpp>
#include <splitroots/sieve.hpp>
#include <splitroots/splitscan.hpp>
#include <splitroots/stats.hpp>
#include <splitroots/theory.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace splitroots;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

BigRational q(long num, long den = 1) {
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    int failures = 0;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail.str("");
        pass = false;
        if (++failures > 5) return;
        if (failures > 1) detail << "; ";
        detail << (failures == 5 ? "..." : why);
    }
};

// Displayed V_a tables, ascending coefficients per piece.
struct Piece {
    BigRational left, right;
    std::vector<BigRational> coeffs;
};

std::vector<Piece> displayed_table(int n) {
    switch (n) {
    case 2: return {{q(0), q(1, 2), {q(0), q(2)}}, {q(1, 2), q(1), {q(1)}}};
    case 3:
        return {{q(0), q(1, 3), {q(0), q(3), q(-3)}},
                {q(1, 3), q(1, 2), {q(1, 2), q(0), q(3, 2)}},
                {q(1, 2), q(2, 3), {q(-1), q(6), q(-9, 2)}},
                {q(2, 3), q(1), {q(1)}}};
    case 4:
        return {{q(0), q(1, 4), {q(0), q(4), q(-6), q(4)}},
                {q(1, 4), q(1, 3), {q(1, 6), q(2), q(2), q(-20, 3)}},
                {q(1, 3), q(1, 2), {q(-1, 2), q(8), q(-16), q(34, 3)}},
                {q(1, 2), q(2, 3), {q(11, 6), q(-6), q(12), q(-22, 3)}},
                {q(2, 3), q(3, 4), {q(-7, 2), q(18), q(-24), q(32, 3)}},
                {q(3, 4), q(1), {q(1)}}};
    default: return {};
    }
}

Outcome piecewise_tables() {
    Outcome out;
    const auto t0 = Clock::now();
    for (int n = 2; n <= 4; ++n) {
        const auto pw = theory::piecewise_v_lower(n);
        const auto want = displayed_table(n);
        if (pw.pieces.size() != want.size()) {
            out.fail("n=" + std::to_string(n) + " piece count");
            continue;
        }
        for (std::size_t i = 0; i < want.size(); ++i) {
            const auto& got = pw.pieces[i];
            if (got.left != want[i].left || got.right != want[i].right || got.coeffs != want[i].coeffs)
                out.fail("n=" + std::to_string(n) + " piece " + std::to_string(i));
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 1.0) out.fail("took " + std::to_string(dt) + " s");
    if (out.pass) out.detail << "n=2,3,4 exact, " << dt << " s";
    return out;
}

Outcome mirror_identity() {
    Outcome out;
    const auto t0 = Clock::now();
    int checked = 0;
    for (int n = 2; n <= 8; ++n)
        for (int k = 1; k < 120; ++k) {
            const BigRational a = q(k, 120);
            if (theory::e_density(n, a) != theory::v_upper(n, 1 - a))
                out.fail("n=" + std::to_string(n) + " a=" + to_string(a));
            ++checked;
        }
    const double dt = seconds_since(t0);
    if (dt >= 10.0) out.fail("took " + std::to_string(dt) + " s");
    if (out.pass) out.detail << checked << " exact equalities, " << dt << " s";
    return out;
}

Outcome slope_at_zero() {
    Outcome out;
    for (int n = 2; n <= 10; ++n) {
        const BigRational d = theory::derivative_at_zero(n);
        if (d != -n) out.fail("n=" + std::to_string(n) + " slope " + to_string(d));
    }
    if (out.pass) out.detail << "n=2..10";
    return out;
}

// |mean - exact| within k standard errors. With zero or full hits the sample
// standard error degenerates to 0, so the binomial error at the exact value is used.
bool within(const geometry::McEstimate& e, const BigRational& exact, double k, double* z_out = nullptr) {
    const double p = exact.get_d();
    double se = e.standard_error;
    if (e.hits == 0 || e.hits == e.samples) se = std::sqrt(p * (1 - p) / static_cast<double>(e.samples));
    const double diff = std::abs(e.mean - p);
    if (z_out) *z_out = se > 0 ? diff / se : (diff == 0 ? 0 : INFINITY);
    return diff <= k * se;
}

Outcome mc_agreement() {
    Outcome out;
    constexpr std::uint64_t samples = 1'000'000;
    double worst = 0;
    for (int n = 2; n <= 6; ++n) {
        std::vector<DomainSpec> domains;
        std::vector<BigRational> exact;
        for (int k = 1; k <= 9; ++k) {
            const BigRational a = q(k, 10);
            domains.push_back(DomainSpec::smallest_at_least(a));
            exact.push_back(theory::v_upper(n, a));
            domains.push_back(DomainSpec::coordinate_at_most(n, a));
            exact.push_back(theory::e_density(n, a));
        }
        const auto est = geometry::mc_volume_ratios(n, domains, samples, 1000 + n);
        for (std::size_t i = 0; i < est.size(); ++i) {
            double z = 0;
            if (!within(est[i], exact[i], 4.0, &z))
                out.fail("n=" + std::to_string(n) + " " + to_string(domains[i]) + " z=" + std::to_string(z));
            worst = std::max(worst, z);
        }
    }
    if (out.pass) out.detail << "90 points, worst " << worst << " stderr";
    return out;
}

struct Cell {
    int n, m;
    int digit, exponent;
};

bool parse_notation(const std::string& s, int& digit, int& exponent) {
    return std::sscanf(s.c_str(), "%d(%d)", &digit, &exponent) == 2;
}

Outcome table_reproduction(const fs::path& cache_dir) {
    Outcome out;
    const std::vector<Cell> cells = {{2, 7, 1, 3}, {3, 7, 1, 3}, {4, 7, 2, 3}, {2, 8, 4, 4}};
    std::ostringstream got;
    for (const Cell& c : cells) {
        const int ns[] = {c.n};
        const int ms[] = {c.m};
        const auto t0 = Clock::now();
        const auto row = stats::deviation_table(ns, ms, cache_dir);
        const stats::DeviationCell& cell = row.front();
        const std::string note = cli::leading_digit_notation(cell.max_deviation);
        int digit = 0, exponent = 0;
        got << " n=" << c.n << ",m=" << c.m << ":" << note << " (" << cli::format_real(cell.max_deviation)
            << ", X_m=" << cell.x_m << ", " << seconds_since(t0) << " s)";
        if (cell.skipped || !parse_notation(note, digit, exponent)) {
            out.fail("n=" + std::to_string(c.n) + " m=" + std::to_string(c.m) + " not computed");
            continue;
        }
        if (exponent != c.exponent || std::abs(digit - c.digit) > 1)
            out.fail("n=" + std::to_string(c.n) + " m=" + std::to_string(c.m) + " got " + note + " want " +
                     std::to_string(c.digit) + "(" + std::to_string(c.exponent) + ")");
    }
    // Out-of-scale parameters must be accepted and reported as skipped.
    stats::TableOptions small;
    small.max_scan = 1000;
    const int big_ns[] = {6, 10};
    const int big_ms[] = {9};
    const auto skipped = stats::deviation_table(big_ns, big_ms, cache_dir, small);
    for (const auto& cell : skipped)
        if (!cell.skipped) out.fail("m=9 cell not skipped under a small scan limit");
    if (out.pass) out.detail << got.str().substr(1);
    else out.detail << " |" << got.str();
    return out;
}

std::vector<MonicIntPolynomial> root_corpus() {
    std::vector<MonicIntPolynomial> corpus;
    for (int n = 2; n <= 6; ++n) corpus.push_back(stats::table_polynomial(n));
    for (const char* src : {"x^2 + 1", "x^2 - 2", "x^2 + x + 1", "x^2 - x - 1", "x^3 - 2", "x^3 - 3*x + 1",
                            "x^3 + x + 1", "x^3 - 7*x + 6", "x^4 + 1", "x^4 - 10*x^2 + 1", "x^4 - 5*x^2 + 4",
                            "x^4 + x + 1", "x^5 - x - 1", "x^5 - 5*x + 12", "x^6 + x^3 + 1"})
        corpus.push_back(parse_poly(src));
    return corpus;
}

Outcome root_extraction() {
    Outcome out;
    const auto corpus = root_corpus();
    std::size_t split_cases = 0, ramified_split = 0;
    for (const auto& f : corpus) {
        const std::vector<i64> lower(f.coeffs().begin(), f.coeffs().end());
        for (u64 p = 2; p < 4096; ++p) {
            if (!oracle::is_prime(p)) continue;
            const auto want = oracle::roots(lower, p);
            const bool split = want.size() == lower.size();
            const auto got = split_roots(f, p, RootOptions{3, p * 7919});
            if (split != got.has_value() || (split && *got != want)) {
                out.fail(f.to_string() + " p=" + std::to_string(p));
                continue;
            }
            if (split) {
                ++split_cases;
                if (std::set<u64>(want.begin(), want.end()).size() != want.size()) ++ramified_split;
            }
        }
    }
    if (out.pass)
        out.detail << corpus.size() << " polynomials, " << split_cases << " split cases (" << ramified_split
                   << " with repeated roots)";
    return out;
}

Outcome scan_fixture() {
    Outcome out;
    const auto f = parse_poly("x^2 + 3*x + 1");
    const ScanCursor cur = scan(f, 100);
    const std::vector<u64> want = {5, 11, 19, 29, 31, 41, 59, 61, 71, 79, 89};
    const std::vector<u64> primes(cur.primes().begin(), cur.primes().end());
    if (primes != want) out.fail("split primes differ");
    const std::vector<i64> lower = {1, 3};
    for (std::size_t i = 0; i < cur.size(); ++i) {
        const auto rec = cur.record(i);
        if (!std::is_sorted(rec.roots.begin(), rec.roots.end())) out.fail("unsorted roots at p=" + std::to_string(rec.p));
        if (oracle::expand(rec.roots, rec.p) != oracle::reduce(lower, rec.p))
            out.fail("product mismatch at p=" + std::to_string(rec.p));
    }
    if (out.pass) out.detail << cur.size() << " records re-expanded";
    return out;
}

Outcome chebotarev(const fs::path& cache_dir) {
    Outcome out;
    constexpr u64 bound = 1'000'000;
    const double pi = static_cast<double>(primes_up_to(bound).size());
    for (int n = 2; n <= 5; ++n) {
        const ScanCursor cur = stats::ensure_scanned(stats::table_polynomial(n), bound, cache_dir);
        const double ratio = static_cast<double>(cur.count_upto(bound)) / pi;
        const double expected = 1.0 / std::tgamma(n + 1);
        const double rel = ratio / expected;
        out.detail << (n == 2 ? "" : ", ") << "n=" << n << ":" << rel;
        if (std::abs(rel - 1) > 0.25) out.fail("n=" + std::to_string(n) + " ratio/expected " + std::to_string(rel));
    }
    return out;
}

Outcome nesting_probe() {
    Outcome out;
    constexpr int n = 4;
    for (const BigRational& a : {q(1, 4), q(1, 2), q(3, 4)}) {
        std::vector<DomainSpec> domains;
        for (int m = 1; m <= n; ++m) domains.push_back(DomainSpec::coordinate_at_most(m, a));
        const auto est = geometry::mc_volume_ratios(n, domains, 1'000'000, 77);
        for (int m = 1; m < n; ++m)
            if (est[m - 1].hits < est[m].hits)
                out.fail("a=" + to_string(a) + " P(x" + std::to_string(m) + "<=a) < P(x" + std::to_string(m + 1) +
                         "<=a)");
        double z = 0;
        if (!within(est[n - 1], theory::e_density(n, a), 4.0, &z))
            out.fail("a=" + to_string(a) + " P(x4<=a) off by " + std::to_string(z) + " stderr");
        out.detail << (out.detail.tellp() > 0 ? ", " : "") << "a=" << to_string(a) << ":";
        for (const auto& e : est) out.detail << " " << e.mean;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    fs::path cache_dir = ".splitroots";
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cache-dir" && i + 1 < argc) cache_dir = argv[++i];
        else if (arg == "--only" && i + 1 < argc) only.insert(std::stoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--cache-dir DIR] [--only N]...\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"piecewise tables n=2,3,4", piecewise_tables},
        {"mirror identity E_a = V^(1-a)", mirror_identity},
        {"slope at zero is -n", slope_at_zero},
        {"Monte Carlo vs closed form", mc_agreement},
        {"deviation table reproduction", [&] { return table_reproduction(cache_dir); }},
        {"Cantor-Zassenhaus vs brute force", root_extraction},
        {"split primes below 100 fixture", scan_fixture},
        {"split prime proportion ~ 1/n!", [&] { return chebotarev(cache_dir); }},
        {"order statistic nesting, n=4", nesting_probe},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << " (" << o.detail.str()
                  << "; " << seconds_since(t0) << " s)" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
