#include <doctest.h>

#include <splitroots/errors.hpp>
#include <splitroots/geometry.hpp>
#include <splitroots/theory.hpp>

#include <cmath>

using namespace splitroots;
using namespace splitroots::geometry;

namespace {

BigRational q(long num, long den = 1) {
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("dhat construction examples") {
    const DhatPoint two = dhat_from_free({0.3});
    REQUIRE(two.coords.size() == 2);
    CHECK(two.coords[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(two.coords[1] == doctest::Approx(0.7).epsilon(1e-15));

    const DhatPoint three = dhat_from_free({0.9, 0.8});
    REQUIRE(three.coords.size() == 3);
    CHECK(three.coords[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(three.coords[1] == 0.8);
    CHECK(three.coords[2] == 0.9);
}

TEST_CASE("sampled points are sorted, in [0,1), with integer sum") {
    Rng rng(2024);
    for (int n = 2; n <= 12; ++n) {
        for (int i = 0; i < 2000; ++i) {
            const DhatPoint pt = sample_dhat(n, rng);
            REQUIRE(pt.coords.size() == static_cast<std::size_t>(n));
            CHECK(std::is_sorted(pt.coords.begin(), pt.coords.end()));
            CHECK(pt.coords.front() >= 0);
            CHECK(pt.coords.back() < 1);
            double sum = 0;
            for (double x : pt.coords) sum += x;
            CHECK(std::abs(sum - std::round(sum)) <= kSumTolerance);
            CHECK(std::round(sum) >= 1);
            CHECK(std::round(sum) <= n - 1);
        }
    }
    CHECK_THROWS_AS(sample_dhat(1, rng), InputError);
}

TEST_CASE("exact comparison of doubles with rationals") {
    CHECK(compare(0.25, q(1, 4)) == 0);
    CHECK(compare(0.1, q(1, 10)) == 1);  // the double 0.1 lies above 1/10
    CHECK(compare(0.3, q(3, 10)) == -1);
    CHECK(compare(1.0 / 3.0, q(1, 3)) == -1);
    CHECK(compare(std::nextafter(1.0 / 3.0, 1.0), q(1, 3)) == 1);
    CHECK(compare(0.0, q(0)) == 0);
    CHECK(compare(0.5, q(-1, 2)) == 1);
}

TEST_CASE("membership") {
    const DhatPoint two = dhat_from_free({0.3});
    CHECK(member(two, DomainSpec::smallest_at_least(q(1, 4))));
    CHECK_FALSE(member(two, DomainSpec::smallest_at_most(q(1, 4))));
    const DhatPoint three = dhat_from_free({0.9, 0.8});
    CHECK_FALSE(member(three, DomainSpec::coordinate_at_most(2, q(1, 2))));
    CHECK(member(three, DomainSpec{}));
    // Ties satisfy both directions.
    const DhatPoint tie{{0.25, 0.75}};
    CHECK(member(tie, DomainSpec::smallest_at_most(q(1, 4))));
    CHECK(member(tie, DomainSpec::smallest_at_least(q(1, 4))));
    CHECK_THROWS_AS(member(two, DomainSpec::coordinate_at_most(3, q(1, 2))), InputError);
}

TEST_CASE("domain parsing") {
    const DomainSpec d = parse_domain("x1>=1/4, x2<=1/2");
    REQUIRE(d.constraints.size() == 2);
    CHECK(d.constraints[0].index == 1);
    CHECK(d.constraints[0].direction == Direction::AtLeast);
    CHECK(d.constraints[0].bound == q(1, 4));
    CHECK(d.constraints[1].direction == Direction::AtMost);
    CHECK(to_string(d) == "x1>=1/4,x2<=1/2");
    CHECK(parse_domain("").constraints.empty());
    CHECK(parse_domain("x12<=1").constraints[0].index == 12);
    CHECK_THROWS_AS(parse_domain("x0<=1/2"), InputError);
    CHECK_THROWS_AS(parse_domain("x1<1/2"), InputError);
    CHECK_THROWS_AS(parse_domain("x1<=0.5"), InputError);
    CHECK_THROWS_AS(parse_domain("x1<=3/2"), InputError);
    CHECK_THROWS_AS(parse_domain("y1<=1/2"), InputError);
    CHECK_THROWS_AS(parse_domain("x1<=1/2,"), InputError);
}

TEST_CASE("Monte Carlo estimates") {
    const McEstimate half = mc_volume_ratio(2, DomainSpec::smallest_at_least(q(1, 4)), 1'000'000, 1);
    CHECK(std::abs(half.mean - 0.5) <= 4 * half.standard_error);
    CHECK(half.standard_error == doctest::Approx(std::sqrt(half.mean * (1 - half.mean) / 1e6)));

    const McEstimate all = mc_volume_ratio(5, DomainSpec{}, 10'000, 3);
    CHECK(all.mean == 1.0);
    CHECK(all.standard_error == 0.0);

    // Reproducible, and independent of the worker count.
    const DomainSpec d = parse_domain("x2<=1/2");
    const McEstimate a = mc_volume_ratio(4, d, 300'000, 42, 1);
    const McEstimate b = mc_volume_ratio(4, d, 300'000, 42, 4);
    CHECK(a.hits == b.hits);
    CHECK(a.mean == b.mean);
    CHECK(mc_volume_ratio(4, d, 300'000, 43, 1).hits != a.hits);

    CHECK_THROWS_AS(mc_volume_ratio(3, d, 0, 1), InputError);
    CHECK_THROWS_AS(mc_volume_ratio(3, parse_domain("x4<=1/2"), 10, 1), InputError);
}

// Within 4 standard errors; with no hits (or all hits) fall back to the binomial error at p.
bool close_to(const McEstimate& e, double p) {
    double se = e.standard_error;
    if (e.hits == 0 || e.hits == e.samples) se = std::sqrt(p * (1 - p) / static_cast<double>(e.samples));
    return std::abs(e.mean - p) <= 4 * se;
}

TEST_CASE("Monte Carlo marginals agree with the closed forms") {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= 9; ++k) {
            const BigRational a = q(k, 10);
            const auto est = mc_volume_ratios(n, {DomainSpec::smallest_at_least(a), DomainSpec::coordinate_at_most(n, a)},
                                              200'000, 1000 + static_cast<std::uint64_t>(n * 10 + k));
            CHECK(close_to(est[0], theory::v_upper(n, a).get_d()));
            CHECK(close_to(est[1], theory::e_density(n, a).get_d()));
        }
    }
}

TEST_CASE("nesting and complement on shared samples") {
    for (const BigRational& a : {q(1, 4), q(1, 2), q(3, 4)}) {
        std::vector<DomainSpec> domains;
        for (int m = 1; m <= 5; ++m) domains.push_back(DomainSpec::coordinate_at_most(m, a));
        for (int m = 1; m <= 5; ++m) domains.push_back(DomainSpec::coordinate_at_least(m, a));
        const auto est = mc_volume_ratios(5, domains, 100'000, 9);
        for (int m = 0; m < 4; ++m) CHECK(est[static_cast<std::size_t>(m)].hits >= est[static_cast<std::size_t>(m) + 1].hits);
        for (int m = 0; m < 5; ++m) {
            const auto total = est[static_cast<std::size_t>(m)].hits + est[static_cast<std::size_t>(m) + 5].hits;
            CHECK(total >= 100'000);
            CHECK(total <= 100'001);
        }
    }
}
