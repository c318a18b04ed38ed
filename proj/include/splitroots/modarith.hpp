#ifndef SPLITROOTS_MODARITH_HPP
#define SPLITROOTS_MODARITH_HPP

#include <cstdint>

namespace splitroots {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Moduli are kept below 2^62 so every product fits in 128 bits with room
// for the Montgomery accumulation step.
inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 powmod(u64 base, u64 e, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

// Reduce a signed value into [0, p).
inline u64 reduce_signed(i64 a, u64 p) {
    if (a >= 0) return static_cast<u64>(a) % p;
    const u64 mag = static_cast<u64>(-(a + 1)) + 1;  // |a| without overflow
    const u64 r = mag % p;
    return r == 0 ? 0 : p - r;
}

// Deterministic Miller-Rabin; the base set is exact for all 64-bit n.
bool is_prime(u64 n);

// Residues stored as-is; works for any modulus including 2.
class PlainField {
public:
    explicit PlainField(u64 p) : p_(p) {}

    u64 modulus() const { return p_; }
    u64 zero() const { return 0; }
    u64 one() const { return 1 % p_; }
    u64 to(u64 a) const { return a % p_; }
    u64 from(u64 a) const { return a; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, p_); }

private:
    u64 p_;
};

// Montgomery form with R = 2^64. Requires an odd modulus below 2^62.
class MontgomeryField {
public:
    explicit MontgomeryField(u64 p) : p_(p) {
        u64 inv = p;  // correct to 3 bits for odd p
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        neg_inv_ = ~inv + 1;
        const u64 r1 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
        r2_ = mulmod(r1, r1, p);
        one_ = r1;
    }

    u64 modulus() const { return p_; }
    u64 zero() const { return 0; }
    u64 one() const { return one_; }
    u64 to(u64 a) const { return redc(static_cast<u128>(a % p_) * r2_); }
    u64 from(u64 a) const { return redc(a); }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }

private:
    u64 redc(u128 t) const {
        const u64 m = static_cast<u64>(t) * neg_inv_;
        const u64 u = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
        return u >= p_ ? u - p_ : u;
    }

    u64 p_;
    u64 neg_inv_ = 0;
    u64 r2_ = 0;
    u64 one_ = 0;
};

template <class Field>
u64 field_pow(const Field& f, u64 base, u64 e) {
    u64 r = f.one();
    while (e) {
        if (e & 1) r = f.mul(r, base);
        base = f.mul(base, base);
        e >>= 1;
    }
    return r;
}

template <class Field>
u64 field_inv(const Field& f, u64 a) {
    return field_pow(f, a, f.modulus() - 2);
}

// Run `fn` with the fastest field implementation valid for p.
template <class Fn>
decltype(auto) with_field(u64 p, Fn&& fn) {
    if (p % 2 == 1) return fn(MontgomeryField(p));
    return fn(PlainField(p));
}

} // namespace splitroots

#endif
