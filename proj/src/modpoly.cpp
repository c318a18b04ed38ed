#include <splitroots/modpoly.hpp>

#include <splitroots/errors.hpp>
#include <splitroots/polyops.hpp>
#include <splitroots/rng.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace splitroots {

namespace {

using polyops::Coeffs;

// Determinant by fraction-free (Bareiss) elimination.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

mpz_class discriminant_of(const std::vector<i64>& lower) {
    const std::size_t n = lower.size();
    // Highest degree first.
    std::vector<mpz_class> f(n + 1);
    f[0] = 1;
    for (std::size_t i = 0; i < n; ++i) f[i + 1] = mpz_class(static_cast<long>(lower[n - 1 - i]));
    std::vector<mpz_class> df(n);
    for (std::size_t i = 0; i < n; ++i) df[i] = f[i] * static_cast<long>(n - i);

    const std::size_t size = 2 * n - 1;
    std::vector<std::vector<mpz_class>> sylvester(size, std::vector<mpz_class>(size, 0));
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t j = 0; j <= n; ++j) sylvester[r][r + j] = f[j];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) sylvester[n - 1 + r][r + j] = df[j];

    mpz_class res = bareiss_determinant(std::move(sylvester));
    if ((n * (n - 1) / 2) % 2 == 1) res = -res;
    return res;
}

void require_prime(u64 p) {
    if (p >= kMaxModulus) throw InputError("modulus must be below 2^62");
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
}

template <class F>
Coeffs x_poly(const F& f) {
    return Coeffs{0, f.one()};
}

template <class F>
void cantor_zassenhaus(const F& f, const Coeffs& s, Rng& rng, std::vector<u64>& out) {
    const int deg = polyops::degree(s);
    if (deg <= 0) return;
    if (deg == 1) {
        out.push_back(f.from(f.neg(s[0])));
        return;
    }
    const u64 p = f.modulus();
    const Coeffs one{f.one()};
    for (;;) {
        const Coeffs shifted{f.to(rng.below(p)), f.one()};
        Coeffs h = polyops::powmod(f, shifted, (p - 1) / 2, s);
        h = polyops::sub(f, std::move(h), one);
        Coeffs d = polyops::gcd(f, std::move(h), s);
        const int dd = polyops::degree(d);
        if (dd >= 1 && dd < deg) {
            Coeffs rest = polyops::divmod(f, s, d).first;
            cantor_zassenhaus(f, d, rng, out);
            cantor_zassenhaus(f, rest, rng, out);
            return;
        }
    }
}

template <class F>
int multiplicity(const F& f, Coeffs g, u64 root) {
    int m = 0;
    while (g.size() > 1 && polyops::eval(f, g, root) == 0) {
        g = polyops::deflate(f, g, root);
        ++m;
    }
    return m;
}

template <class F>
Coeffs field_poly(const F& f, const MonicIntPolynomial& poly) {
    const u64 p = f.modulus();
    Coeffs g(poly.degree() + 1);
    const auto c = poly.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) g[i] = f.to(reduce_signed(c[i], p));
    g.back() = f.one();
    return g;
}

} // namespace

MonicIntPolynomial::MonicIntPolynomial(std::vector<i64> lower_coeffs) : coeffs_(std::move(lower_coeffs)) {
    if (coeffs_.size() < 2) throw InputError("polynomial degree must be at least 2");
    for (i64 c : coeffs_) {
        if (c >= static_cast<i64>(kMaxModulus) || c <= -static_cast<i64>(kMaxModulus))
            throw InputError("coefficient magnitude must be below 2^62");
    }
    disc_ = discriminant_of(coeffs_);
    if (disc_ == 0) throw InputError("polynomial " + to_string() + " has a repeated factor (zero discriminant)");
}

bool MonicIntPolynomial::is_ramified(u64 p) const {
    return mpz_divisible_ui_p(disc_.get_mpz_t(), p) != 0;
}

std::string MonicIntPolynomial::to_string() const {
    std::ostringstream os;
    const int n = degree();
    os << "x^" << n;
    for (int i = n - 1; i >= 0; --i) {
        const i64 c = coeffs_[i];
        if (c == 0) continue;
        os << (c < 0 ? " - " : " + ");
        const u64 mag = c < 0 ? static_cast<u64>(-(c + 1)) + 1 : static_cast<u64>(c);
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag << '*';
        os << 'x';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

ModPoly::ModPoly(u64 p, std::vector<u64> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    if (p < 2 || p >= kMaxModulus) throw InputError("modulus must lie in [2, 2^62)");
    for (u64& c : coeffs_) c %= p;
    polyops::trim(coeffs_);
}

u64 ModPoly::operator()(u64 x) const {
    return polyops::eval(PlainField(p_), coeffs_, x % p_);
}

ModPoly reduce_mod(const MonicIntPolynomial& f, u64 p) {
    return ModPoly(p, polyops::from_field(PlainField(p), field_poly(PlainField(p), f)));
}

ModPoly frobenius_power(const ModPoly& g) {
    if (g.degree() < 2 || g.coeffs().back() != 1) throw InputError("frobenius_power needs a monic modulus of degree >= 2");
    const u64 p = g.modulus();
    return with_field(p, [&](const auto& f) {
        const Coeffs gg = polyops::to_field(f, g.coeffs());
        return ModPoly(p, polyops::from_field(f, polyops::powmod_x(f, p, gg)));
    });
}

std::vector<u64> brute_force_roots(const MonicIntPolynomial& f, u64 p) {
    const PlainField field(p);
    Coeffs g = field_poly(field, f);
    std::vector<u64> roots;
    for (u64 r = 0; r < p && g.size() > 1; ++r) {
        while (g.size() > 1 && polyops::eval(field, g, r) == 0) {
            g = polyops::deflate(field, g, r);
            roots.push_back(r);
        }
    }
    return roots;
}

std::optional<std::vector<u64>> split_roots(const MonicIntPolynomial& f, u64 p, const RootOptions& opts) {
    const auto n = static_cast<std::size_t>(f.degree());
    if (p == 2 || p < opts.brute_force_below) {
        std::vector<u64> roots = brute_force_roots(f, p);
        if (roots.size() != n) return std::nullopt;
        return roots;
    }
    return with_field(p, [&](const auto& field) -> std::optional<std::vector<u64>> {
        const Coeffs g = field_poly(field, f);
        Coeffs h = polyops::powmod_x(field, p, g);
        const Coeffs x = x_poly(field);
        Rng rng(opts.seed, p);
        std::vector<u64> roots;
        roots.reserve(n);
        if (h == x) {
            // g divides x^p - x, so it is a product of distinct linear factors.
            cantor_zassenhaus(field, g, rng, roots);
            std::sort(roots.begin(), roots.end());
            return roots;
        }
        if (!f.is_ramified(p)) return std::nullopt;

        const Coeffs distinct = polyops::gcd(field, polyops::sub(field, std::move(h), x), g);
        std::vector<u64> distinct_roots;
        cantor_zassenhaus(field, distinct, rng, distinct_roots);
        for (u64 r : distinct_roots) {
            const int m = multiplicity(field, g, field.to(r));
            roots.insert(roots.end(), static_cast<std::size_t>(m), r);
        }
        if (roots.size() != n) return std::nullopt;
        std::sort(roots.begin(), roots.end());
        return roots;
    });
}

bool splits_completely(const MonicIntPolynomial& f, u64 p) {
    require_prime(p);
    if (!f.is_ramified(p)) return frobenius_power(reduce_mod(f, p)) == ModPoly::x(p);
    return split_roots(f, p).has_value();
}

std::vector<u64> roots_mod_p(const MonicIntPolynomial& f, u64 p, const RootOptions& opts) {
    require_prime(p);
    auto roots = split_roots(f, p, opts);
    if (!roots) throw NotFullySplit(f.to_string() + " does not split completely mod " + std::to_string(p));
    return std::move(*roots);
}

mpz_class discriminant(const MonicIntPolynomial& f) { return f.discriminant(); }

std::vector<int> cycle_type(const MonicIntPolynomial& f, u64 p) {
    require_prime(p);
    if (f.is_ramified(p)) throw RamifiedPrime(std::to_string(p) + " divides the discriminant of " + f.to_string());
    return with_field(p, [&](const auto& field) {
        Coeffs g = field_poly(field, f);
        const Coeffs x = x_poly(field);
        Coeffs h = x;
        std::vector<int> parts;
        for (int d = 1; 2 * d <= polyops::degree(g); ++d) {
            h = polyops::powmod(field, std::move(h), p, g);
            Coeffs t = polyops::gcd(field, polyops::sub(field, h, x), g);
            const int dt = polyops::degree(t);
            if (dt > 0) {
                parts.insert(parts.end(), static_cast<std::size_t>(dt / d), d);
                g = polyops::divmod(field, g, t).first;
                polyops::rem_monic_inplace(field, h, g);
            }
        }
        if (polyops::degree(g) > 0) parts.push_back(polyops::degree(g));
        std::sort(parts.begin(), parts.end());
        return parts;
    });
}

ModPoly product_of_linears(std::span<const u64> roots, u64 p) {
    const PlainField field(p);
    Coeffs acc{1};
    for (u64 r : roots) acc = polyops::mul(field, acc, Coeffs{field.neg(r % p), 1});
    return ModPoly(p, std::move(acc));
}

} // namespace splitroots
