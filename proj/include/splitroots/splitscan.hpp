#ifndef SPLITROOTS_SPLITSCAN_HPP
#define SPLITROOTS_SPLITSCAN_HPP

#include <splitroots/modpoly.hpp>

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splitroots {

struct RecordView {
    u64 p;
    std::span<const u64> roots;
};

/// Spl_X(f) together with the sorted roots of every member.
///
/// Records are stored flat (degree roots per prime) because a scan to 10^8
/// holds millions of them. Invariants: primes strictly increasing, every
/// prime <= scanned_up_to(), and every fully split prime up to that bound is
/// present.
class ScanCursor {
public:
    explicit ScanCursor(MonicIntPolynomial poly) : poly_(std::move(poly)) {}

    const MonicIntPolynomial& poly() const { return poly_; }
    u64 scanned_up_to() const { return scanned_up_to_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    std::span<const u64> primes() const { return primes_; }

    RecordView operator[](std::size_t i) const {
        const auto n = static_cast<std::size_t>(poly_.degree());
        return {primes_[i], std::span<const u64>(roots_).subspan(i * n, n)};
    }
    SplitRecord record(std::size_t i) const;

    /// Number of records with p <= bound.
    std::size_t count_upto(u64 bound) const;

    /// Copy holding only the records with p <= bound, marked as scanned to bound.
    ScanCursor truncated(u64 bound) const;

    // Builders; both validate the ordering invariants and throw InputError.
    void append(u64 p, std::span<const u64> roots);
    void mark_scanned(u64 upto);

    friend bool operator==(const ScanCursor&, const ScanCursor&) = default;

private:
    MonicIntPolynomial poly_;
    u64 scanned_up_to_ = 1;
    std::vector<u64> primes_;
    std::vector<u64> roots_;
};

struct ScanOptions {
    u64 segment_size = u64{1} << 20;
    unsigned threads = 0;  // 0 = hardware concurrency
    RootOptions roots{};
};

/// Extend (or start) a scan so that it covers every prime <= upto.
ScanCursor scan(const MonicIntPolynomial& f, u64 upto, const std::optional<ScanCursor>& resume = std::nullopt,
                const ScanOptions& opts = {});

/// Smallest fully split prime p > bound, searching no further than `limit`
/// (0 means 100 * bound). Throws NotFound when the limit is reached.
u64 least_split_prime_above(const MonicIntPolynomial& f, u64 bound, u64 limit = 0);

enum class WitnessKind { NCycle, Transposition, LargePrimeCycle };

std::string to_string(WitnessKind kind);

/// Frobenius cycle-type witnesses for the Jordan criterion Gal(f) = S_n:
/// an n-cycle (irreducibility), a transposition, and a q-cycle for a prime
/// q > n/2.
struct SnEvidence {
    std::map<WitnessKind, u64> witnesses;
    bool conclusive = false;
};

SnEvidence sn_evidence(const MonicIntPolynomial& f, u64 prime_budget);

/// Text cache: header, poly line, upto line, one line per record, `end <count>`.
void cache_write(const ScanCursor& cursor, const std::filesystem::path& path);
ScanCursor cache_read(const std::filesystem::path& path);
/// As above, and also throws CorruptCache if the file holds another polynomial.
ScanCursor cache_read(const std::filesystem::path& path, const MonicIntPolynomial& expected);

/// File name used for f inside a cache directory: degree plus a hex hash of
/// the coefficients, e.g. "d4-1f0c3a5e9b7d2c41.cache".
std::string cache_file_name(const MonicIntPolynomial& f);

} // namespace splitroots

#endif
