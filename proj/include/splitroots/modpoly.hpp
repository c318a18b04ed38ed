#ifndef SPLITROOTS_MODPOLY_HPP
#define SPLITROOTS_MODPOLY_HPP

#include <splitroots/modarith.hpp>

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace splitroots {

/// Monic integer polynomial x^n + a_{n-1} x^{n-1} + ... + a_0 with n >= 2.
///
/// Only the lower coefficients are stored, constant term first. Construction
/// rejects polynomials with a repeated factor over Q (zero discriminant) and
/// coefficients with |a_i| >= 2^62. The discriminant is computed once and
/// kept, since every prime test needs it.
class MonicIntPolynomial {
public:
    explicit MonicIntPolynomial(std::vector<i64> lower_coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()); }
    std::span<const i64> coeffs() const { return coeffs_; }
    const mpz_class& discriminant() const { return disc_; }

    // True when p divides the discriminant.
    bool is_ramified(u64 p) const;

    /// Canonical text form, highest degree first, e.g. "x^4 + 3*x + 1".
    std::string to_string() const;

    friend bool operator==(const MonicIntPolynomial& a, const MonicIntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<i64> coeffs_;
    mpz_class disc_;
};

/// Dense polynomial over F_p with residues in [0, p), constant term first.
class ModPoly {
public:
    static constexpr int kZeroDegree = -1;

    ModPoly(u64 p, std::vector<u64> coeffs);

    static ModPoly x(u64 p) { return ModPoly(p, {0, 1}); }

    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    u64 operator()(u64 x) const;

    friend bool operator==(const ModPoly&, const ModPoly&) = default;

private:
    u64 p_;
    std::vector<u64> coeffs_;
};

/// A fully split prime with its local roots, ascending, with multiplicity.
struct SplitRecord {
    u64 p = 0;
    std::vector<u64> roots;

    friend bool operator==(const SplitRecord&, const SplitRecord&) = default;
};

/// Knobs for root extraction. Below `brute_force_below` every residue is
/// tried; above it Cantor-Zassenhaus runs with a stream derived from
/// (seed, p). p = 2 is always brute-forced.
struct RootOptions {
    u64 brute_force_below = 4096;
    u64 seed = 0;
};

ModPoly reduce_mod(const MonicIntPolynomial& f, u64 p);

/// x^p mod g for monic g of degree >= 2.
ModPoly frobenius_power(const ModPoly& g);

bool splits_completely(const MonicIntPolynomial& f, u64 p);

/// Sorted roots with multiplicity; throws NotFullySplit when f does not split.
std::vector<u64> roots_mod_p(const MonicIntPolynomial& f, u64 p, const RootOptions& opts = {});

/// Combined split test and root extraction: the roots when f splits mod p,
/// nothing otherwise. p must be prime (unchecked; this is the scan hot path).
std::optional<std::vector<u64>> split_roots(const MonicIntPolynomial& f, u64 p,
                                            const RootOptions& opts = {});

/// Roots by evaluating every residue; multiplicities from repeated deflation.
std::vector<u64> brute_force_roots(const MonicIntPolynomial& f, u64 p);

mpz_class discriminant(const MonicIntPolynomial& f);

/// Degrees of the irreducible factors of f mod p, ascending.
/// Throws RamifiedPrime when p divides disc(f).
std::vector<int> cycle_type(const MonicIntPolynomial& f, u64 p);

/// Expand prod (x - r_i) mod p.
ModPoly product_of_linears(std::span<const u64> roots, u64 p);

} // namespace splitroots

#endif
