#ifndef SPLITROOTS_GEOMETRY_HPP
#define SPLITROOTS_GEOMETRY_HPP

#include <splitroots/rational.hpp>
#include <splitroots/rng.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace splitroots {

enum class Direction { AtMost, AtLeast };

struct Constraint {
    int index = 1;  // 1-based coordinate of the sorted point
    Direction direction = Direction::AtMost;
    BigRational bound;
};

/// Conjunction of closed half-space constraints on sorted coordinates.
/// Ties at a bound satisfy both directions.
struct DomainSpec {
    std::vector<Constraint> constraints;

    int max_index() const;

    /// x_1 >= a
    static DomainSpec smallest_at_least(const BigRational& a);
    /// x_1 <= a
    static DomainSpec smallest_at_most(const BigRational& a);
    /// x_m <= a
    static DomainSpec coordinate_at_most(int m, const BigRational& a);
    static DomainSpec coordinate_at_least(int m, const BigRational& a);
};

/// Parse the comma-separated form "x1>=1/4,x2<=1/2".
DomainSpec parse_domain(std::string_view text);
std::string to_string(const DomainSpec& d);

/// A sorted point of [0,1)^n whose coordinate sum is an integer.
struct DhatPoint {
    std::vector<double> coords;
};

namespace geometry {

inline constexpr double kSumTolerance = 1e-12;

/// Draw u_1..u_{n-1} uniform, close with u_n = ceil(sum) - sum, sort.
DhatPoint sample_dhat(int n, Rng& rng);

/// Same construction from explicit u_1..u_{n-1}; used by tests.
DhatPoint dhat_from_free(std::vector<double> free_coords);

/// Exact comparison of each double coordinate against its rational bound.
bool member(const DhatPoint& pt, const DomainSpec& d);

/// Exact three-way comparison of a double with a rational.
int compare(double x, const BigRational& q);

struct McEstimate {
    double mean = 0;
    double standard_error = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
};

/// Samples are drawn in fixed blocks, block b using stream (seed, b), so the
/// result does not depend on `threads` (0 = hardware concurrency).
McEstimate mc_volume_ratio(int n, const DomainSpec& d, std::uint64_t samples, std::uint64_t seed,
                           unsigned threads = 0);

/// Several domains evaluated on one shared sample stream.
std::vector<McEstimate> mc_volume_ratios(int n, const std::vector<DomainSpec>& domains, std::uint64_t samples,
                                         std::uint64_t seed, unsigned threads = 0);

inline constexpr std::uint64_t kSamplesPerBlock = std::uint64_t{1} << 16;

} // namespace geometry
} // namespace splitroots

#endif
