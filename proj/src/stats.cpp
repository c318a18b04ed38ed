#include <splitroots/stats.hpp>

#include <splitroots/errors.hpp>
#include <splitroots/theory.hpp>

#include <algorithm>
#include <cmath>

namespace splitroots::stats {

namespace {

struct RootBound {
    std::size_t slot;
    Direction direction;
    BigRational bound;
    bool small;  // numerator and denominator fit in 64 bits
    u64 num;
    u64 den;
};

std::vector<RootBound> compile(int n, const DomainSpec& d) {
    std::vector<RootBound> out;
    for (const Constraint& c : d.constraints) {
        if (c.index < 1 || c.index > n)
            throw InputError("constraint index x" + std::to_string(c.index) + " out of range for degree " + std::to_string(n));
        if (c.bound < 0) throw InputError("negative constraint bound");
        RootBound rb{static_cast<std::size_t>(c.index - 1), c.direction, c.bound, false, 0, 0};
        if (mpz_fits_ulong_p(c.bound.get_num().get_mpz_t()) && mpz_fits_ulong_p(c.bound.get_den().get_mpz_t())) {
            rb.small = true;
            rb.num = c.bound.get_num().get_ui();
            rb.den = c.bound.get_den().get_ui();
        }
        out.push_back(std::move(rb));
    }
    return out;
}

// sign of r/p - bound
int compare_ratio(u64 r, u64 p, const RootBound& b) {
    if (b.small) {
        const u128 lhs = static_cast<u128>(r) * b.den;
        const u128 rhs = static_cast<u128>(b.num) * p;
        return (lhs > rhs) - (lhs < rhs);
    }
    const int c = cmp(BigRational(mpz_class(std::to_string(r)), mpz_class(std::to_string(p))), b.bound);
    return (c > 0) - (c < 0);
}

bool inside(const RecordView& rec, const std::vector<RootBound>& bounds) {
    for (const RootBound& b : bounds) {
        const int c = compare_ratio(rec.roots[b.slot], rec.p, b);
        if (b.direction == Direction::AtMost ? c > 0 : c < 0) return false;
    }
    return true;
}

u64 pow10(int m) {
    if (m < 0 || m > 18) throw InputError("m must lie in [0, 18]");
    u64 r = 1;
    for (int i = 0; i < m; ++i) r *= 10;
    return r;
}

} // namespace

bool member(const RecordView& rec, const DomainSpec& d) {
    return inside(rec, compile(static_cast<int>(rec.roots.size()), d));
}

std::size_t count_in(const ScanCursor& cursor, const DomainSpec& d, std::optional<std::size_t> limit) {
    const std::vector<RootBound> bounds = compile(cursor.poly().degree(), d);
    const std::size_t end = std::min(cursor.size(), limit.value_or(cursor.size()));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < end; ++i) hits += inside(cursor[i], bounds);
    return hits;
}

double empirical_pr(const ScanCursor& cursor, const DomainSpec& d) {
    if (cursor.empty()) throw EmptySample("no fully split primes in the sample");
    return static_cast<double>(count_in(cursor, d)) / static_cast<double>(cursor.size());
}

std::vector<BigRational> deviation_grid(int n) {
    std::vector<BigRational> grid;
    for (int k = 1; k < 10 * n; ++k) {
        BigRational a(k, 10 * n);
        a.canonicalize();
        grid.push_back(std::move(a));
    }
    return grid;
}

DeviationCell deviation_row(const ScanCursor& cursor, int m) {
    const MonicIntPolynomial& f = cursor.poly();
    const int n = f.degree();
    const u64 bound = pow10(m);

    const std::size_t below = cursor.count_upto(bound);
    if (below >= cursor.size()) {
        // The cursor has no split prime above 10^m yet.
        const u64 x_m = least_split_prime_above(f, bound);
        throw NeedsScan(x_m, "cache for " + f.to_string() + " reaches " + std::to_string(cursor.scanned_up_to()) +
                                 ", deviation row m=" + std::to_string(m) + " needs " + std::to_string(x_m));
    }
    const u64 x_m = cursor[below].p;
    const std::size_t count = below + 1;

    DeviationCell cell{n, m, x_m, count, 0.0, false};
    BigRational worst = 0;
    for (const BigRational& a : deviation_grid(n)) {
        const std::size_t hits = count_in(cursor, DomainSpec::smallest_at_least(a), count);
        BigRational dev = BigRational(static_cast<unsigned long>(hits), static_cast<unsigned long>(count)) - theory::v_upper(n, a);
        dev = abs(dev);
        if (dev > worst) worst = dev;
    }
    cell.max_deviation = worst.get_d();
    return cell;
}

std::vector<CdfRow> smallest_root_cdf(const ScanCursor& cursor, u64 upto) {
    const std::size_t count = cursor.count_upto(upto);
    if (count == 0) throw EmptySample("no fully split primes up to " + std::to_string(upto));
    const int n = cursor.poly().degree();
    std::vector<CdfRow> rows;
    for (const BigRational& a : deviation_grid(n)) {
        const std::size_t hits = count_in(cursor, DomainSpec::smallest_at_most(a), count);
        rows.push_back({a, static_cast<double>(hits) / static_cast<double>(count), theory::v_lower(n, a)});
    }
    return rows;
}

MonicIntPolynomial table_polynomial(int n) {
    if (n < 2) throw InputError("degree must be at least 2");
    std::vector<i64> c(static_cast<std::size_t>(n), 0);
    c[0] = 1;
    c[1] = 3;
    return MonicIntPolynomial(std::move(c));
}

ScanCursor ensure_scanned(const MonicIntPolynomial& f, u64 upto, const std::filesystem::path& cache_dir,
                          const ScanOptions& opts, bool force) {
    const std::filesystem::path path = cache_dir / cache_file_name(f);
    std::optional<ScanCursor> cached;
    if (!force && std::filesystem::exists(path)) {
        cached = cache_read(path, f);
        if (cached->scanned_up_to() >= upto) return std::move(*cached);
    }
    ScanCursor cursor = scan(f, upto, cached, opts);
    std::filesystem::create_directories(cache_dir);
    cache_write(cursor, path);
    return cursor;
}

std::vector<DeviationCell> deviation_table(std::span<const int> ns, std::span<const int> ms,
                                           const std::filesystem::path& cache_dir, const TableOptions& opts) {
    std::vector<int> sorted_ms(ms.begin(), ms.end());
    std::sort(sorted_ms.begin(), sorted_ms.end());
    std::vector<DeviationCell> cells;
    for (int n : ns) {
        const MonicIntPolynomial f = table_polynomial(n);
        for (int m : sorted_ms) {
            const u64 bound = pow10(m);
            DeviationCell skipped{n, m, 0, 0, 0.0, true};
            if (bound >= opts.max_scan) {
                cells.push_back(skipped);
                continue;
            }
            const u64 x_m = least_split_prime_above(f, bound);
            if (x_m > opts.max_scan) {
                skipped.x_m = x_m;
                cells.push_back(skipped);
                continue;
            }
            const ScanCursor cursor = ensure_scanned(f, x_m, cache_dir, opts.scan);
            cells.push_back(deviation_row(cursor, m));
        }
    }
    return cells;
}

} // namespace splitroots::stats
