#ifndef SPLITROOTS_POLYOPS_HPP
#define SPLITROOTS_POLYOPS_HPP

// Dense polynomial kernels over a field policy (PlainField or
// MontgomeryField). Coefficients are in the field's internal representation,
// constant term first, no trailing zeros; the zero polynomial is empty.

#include <splitroots/modarith.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace splitroots::polyops {

using Coeffs = std::vector<u64>;

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

template <class F>
Coeffs mul(const F& f, const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

template <class F>
Coeffs sub(const F& f, Coeffs a, const Coeffs& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(a);
    return a;
}

// a mod g for monic g (leading coefficient equal to f.one()).
template <class F>
void rem_monic_inplace(const F& f, Coeffs& a, const Coeffs& g) {
    const std::size_t dg = g.size() - 1;
    while (a.size() > dg) {
        const u64 q = a.back();
        const std::size_t shift = a.size() - 1 - dg;
        if (q != 0) {
            for (std::size_t j = 0; j < dg; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(q, g[j]));
        }
        a.pop_back();
    }
    trim(a);
}

template <class F>
Coeffs make_monic(const F& f, Coeffs a) {
    if (a.empty() || a.back() == f.one()) return a;
    const u64 inv = field_inv(f, a.back());
    for (u64& c : a) c = f.mul(c, inv);
    return a;
}

// Quotient and remainder for arbitrary nonzero divisor.
template <class F>
std::pair<Coeffs, Coeffs> divmod(const F& f, Coeffs a, const Coeffs& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() <= db) return {Coeffs{}, std::move(a)};
    const u64 inv = field_inv(f, b.back());
    Coeffs q(a.size() - db, 0);
    while (a.size() > db) {
        const u64 c = f.mul(a.back(), inv);
        const std::size_t shift = a.size() - 1 - db;
        q[shift] = c;
        if (c != 0) {
            for (std::size_t j = 0; j < db; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
        }
        a.pop_back();
    }
    trim(a);
    trim(q);
    return {std::move(q), std::move(a)};
}

// Monic gcd; gcd(0, 0) is the zero polynomial.
template <class F>
Coeffs gcd(const F& f, Coeffs a, Coeffs b) {
    while (!b.empty()) {
        b = make_monic(f, std::move(b));
        rem_monic_inplace(f, a, b);
        std::swap(a, b);
    }
    return make_monic(f, std::move(a));
}

template <class F>
Coeffs mulmod(const F& f, const Coeffs& a, const Coeffs& b, const Coeffs& g) {
    Coeffs r = mul(f, a, b);
    rem_monic_inplace(f, r, g);
    return r;
}

// base^e mod g, g monic of degree >= 1.
template <class F>
Coeffs powmod(const F& f, Coeffs base, u64 e, const Coeffs& g) {
    rem_monic_inplace(f, base, g);
    Coeffs r{f.one()};
    rem_monic_inplace(f, r, g);
    while (e) {
        if (e & 1) r = mulmod(f, r, base, g);
        e >>= 1;
        if (e) base = mulmod(f, base, base, g);
    }
    return r;
}

// x^e mod g by left-to-right squaring; multiplying by x is a shift plus one
// reduction step.
template <class F>
Coeffs powmod_x(const F& f, u64 e, const Coeffs& g) {
    Coeffs r{f.one()};
    rem_monic_inplace(f, r, g);
    if (e == 0) return r;
    int bit = 63 - __builtin_clzll(e);
    for (; bit >= 0; --bit) {
        r = mulmod(f, r, r, g);
        if ((e >> bit) & 1) {
            r.insert(r.begin(), 0);
            trim(r);
            rem_monic_inplace(f, r, g);
        }
    }
    return r;
}

template <class F>
u64 eval(const F& f, const Coeffs& a, u64 x) {
    u64 acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
    return acc;
}

// Divide by (x - r) assuming r is a root; returns the quotient.
template <class F>
Coeffs deflate(const F& f, const Coeffs& a, u64 r) {
    Coeffs q(a.size() - 1, 0);
    u64 carry = 0;
    for (std::size_t i = a.size(); i-- > 1;) {
        carry = f.add(f.mul(carry, r), a[i]);
        q[i - 1] = carry;
    }
    return q;
}

template <class F>
Coeffs to_field(const F& f, const std::vector<u64>& residues) {
    Coeffs r(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) r[i] = f.to(residues[i]);
    return r;
}

template <class F>
std::vector<u64> from_field(const F& f, const Coeffs& a) {
    std::vector<u64> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.from(a[i]);
    return r;
}

} // namespace splitroots::polyops

#endif
