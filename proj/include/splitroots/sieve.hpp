#ifndef SPLITROOTS_SIEVE_HPP
#define SPLITROOTS_SIEVE_HPP

#include <splitroots/modarith.hpp>

#include <span>
#include <vector>

namespace splitroots {

// All primes <= n, plain Eratosthenes.
std::vector<u64> primes_up_to(u64 n);

// Primes in [lo, hi] by crossing off multiples of `base`, which must hold
// every prime <= sqrt(hi).
std::vector<u64> primes_in_segment(u64 lo, u64 hi, std::span<const u64> base);

// Integer square root (floor).
u64 isqrt(u64 n);

} // namespace splitroots

#endif
