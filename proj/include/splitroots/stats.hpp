#ifndef SPLITROOTS_STATS_HPP
#define SPLITROOTS_STATS_HPP

#include <splitroots/geometry.hpp>
#include <splitroots/splitscan.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splitroots::stats {

/// Exact test of r/p against each rational bound.
bool member(const RecordView& rec, const DomainSpec& d);

/// Number of the first `limit` records inside d (all records by default).
std::size_t count_in(const ScanCursor& cursor, const DomainSpec& d, std::optional<std::size_t> limit = std::nullopt);

/// Pr_D(f, X) over the records of `cursor`. Throws EmptySample if there are none.
double empirical_pr(const ScanCursor& cursor, const DomainSpec& d);

/// Grid a = k/(10n), k = 1 .. 10n-1.
std::vector<BigRational> deviation_grid(int n);

struct DeviationCell {
    int n = 0;
    int m = 0;
    u64 x_m = 0;  // least split prime above 10^m, included in the sample
    std::uint64_t split_count = 0;
    double max_deviation = 0;
    bool skipped = false;
};

/// max_k |Pr_{x_1 >= a_k}(f, X_m) - v_upper(n, a_k)| over the grid.
/// X_m is read off the cursor when it reaches past 10^m; otherwise this
/// throws NeedsScan with the bound the cursor has to cover.
DeviationCell deviation_row(const ScanCursor& cursor, int m);

struct CdfRow {
    BigRational a;
    double empirical = 0;    // Pr(x_1 <= a)
    BigRational theoretical;  // v_lower(n, a)
};

/// Empirical and theoretical distribution of the smallest normalized root
/// over the deviation grid, for the records with p <= upto.
std::vector<CdfRow> smallest_root_cdf(const ScanCursor& cursor, u64 upto);

struct TableOptions {
    u64 max_scan = 1'000'000'000;  // cells needing a larger scan are skipped
    ScanOptions scan{};
};

/// The deviation table for f_n = x^n + 3x + 1 over the given n and m,
/// reading and extending per-polynomial caches in cache_dir.
std::vector<DeviationCell> deviation_table(std::span<const int> ns, std::span<const int> ms,
                                           const std::filesystem::path& cache_dir, const TableOptions& opts = {});

/// x^n + 3x + 1
MonicIntPolynomial table_polynomial(int n);

/// Load the cache for f from cache_dir (if any) and make sure it reaches
/// `upto`, scanning and rewriting the cache when it does not.
ScanCursor ensure_scanned(const MonicIntPolynomial& f, u64 upto, const std::filesystem::path& cache_dir,
                          const ScanOptions& opts = {}, bool force = false);

} // namespace splitroots::stats

#endif
