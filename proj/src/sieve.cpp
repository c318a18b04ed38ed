#include <splitroots/sieve.hpp>

#include <cmath>
#include <cstdint>

namespace splitroots {

u64 isqrt(u64 n) {
    auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
    }
    return primes;
}

std::vector<u64> primes_in_segment(u64 lo, u64 hi, std::span<const u64> base) {
    std::vector<u64> primes;
    if (lo < 2) lo = 2;
    if (hi < lo) return primes;
    std::vector<std::uint8_t> composite(hi - lo + 1, 0);
    for (u64 q : base) {
        if (static_cast<u128>(q) * q > hi) break;
        u64 start = (lo + q - 1) / q * q;
        if (start < q * q) start = q * q;
        for (u64 j = start; j <= hi; j += q) composite[j - lo] = 1;
    }
    for (u64 i = 0; i < composite.size(); ++i)
        if (!composite[i]) primes.push_back(lo + i);
    return primes;
}

} // namespace splitroots
