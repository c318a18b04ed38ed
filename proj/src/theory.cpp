#include <splitroots/theory.hpp>

#include <splitroots/errors.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace splitroots::theory {

namespace {

mpz_class ceil_of(const BigRational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

BigRational pow(BigRational base, int e) {
    BigRational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_density_args(int n, const BigRational& a) {
    if (n < 2) throw InputError("degree n must be at least 2");
    if (a < 0 || a >= 1) throw InputError("a must lie in [0, 1), got " + to_string(a));
}

void trim(std::vector<BigRational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

// Monomial coefficients of the interpolant through (xs[i], ys[i]) via
// Newton divided differences.
std::vector<BigRational> interpolate(const std::vector<BigRational>& xs, std::vector<BigRational> ys) {
    const std::size_t m = xs.size();
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = m - 1; i >= level; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - level]);

    // Horner on the Newton form: c = ys[m-1]; c = c * (x - xs[i]) + ys[i].
    std::vector<BigRational> c{ys[m - 1]};
    for (std::size_t i = m - 1; i-- > 0;) {
        std::vector<BigRational> next(c.size() + 1, 0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= c[j] * xs[i];
        }
        next[0] += ys[i];
        c = std::move(next);
    }
    trim(c);
    return c;
}

} // namespace

BigRational irwin_hall_cdf(int n, const BigRational& x) {
    if (n < 1) throw InputError("Irwin-Hall order must be at least 1");
    BigRational sum = 0;
    for (int i = 0; i <= n; ++i) {
        const BigRational shifted = x - i;
        if (shifted <= 0) break;
        const BigRational term = binomial(n, i) * pow(shifted, n);
        sum += (i % 2 == 0) ? term : BigRational(-term);
    }
    return sum / factorial(n);
}

BigRational v_upper(int n, const BigRational& a) {
    check_density_args(n, a);
    BigRational sum = 0;
    for (int i = 2; i <= n; ++i) {
        const BigRational ia = a * i;
        mpz_class k = std::max(ceil_of(ia), mpz_class(i - n + 1));
        const BigRational coef = binomial(n, i);
        const bool negative = (n + i) % 2 == 1;
        for (; k <= i - 1; ++k) {
            const BigRational term = coef * pow(BigRational(k) - ia, n - 1);
            if (negative)
                sum -= term;
            else
                sum += term;
        }
    }
    return sum / factorial(n - 1);
}

BigRational v_lower(int n, const BigRational& a) { return 1 - v_upper(n, a); }

BigRational e_density(int n, const BigRational& a) {
    check_density_args(n, a);
    BigRational sum = 0;
    for (int i = 0; i <= n; ++i) {
        const BigRational ia = a * i;
        mpz_class k = std::max(ceil_of(ia), mpz_class(1));
        const BigRational coef = binomial(n, i);
        for (; k <= n - 1; ++k) {
            const BigRational term = coef * pow(BigRational(k) - ia, n - 1);
            if (i % 2 == 1)
                sum -= term;
            else
                sum += term;
        }
    }
    return sum / factorial(n - 1);
}

BigRational eval_poly(std::span<const BigRational> coeffs, const BigRational& x) {
    BigRational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

bool alternating_identity_check(std::span<const BigRational> coeffs, int n) {
    if (n < 0) throw InputError("n must be non-negative");
    std::size_t len = coeffs.size();
    while (len > 0 && coeffs[len - 1] == 0) --len;
    if (len > static_cast<std::size_t>(n) + 1) throw InputError("polynomial degree exceeds n");

    BigRational lhs = 0;
    for (int i = 0; i <= n; ++i) {
        const BigRational term = binomial(n, i) * eval_poly(coeffs, BigRational(i));
        if (i % 2 == 1)
            lhs -= term;
        else
            lhs += term;
    }
    const BigRational c_n = len == static_cast<std::size_t>(n) + 1 ? coeffs[static_cast<std::size_t>(n)] : BigRational(0);
    BigRational rhs = c_n * factorial(n);
    if (n % 2 == 1) rhs = -rhs;
    return lhs == rhs;
}

const PolyPiece& PiecewisePolynomial::piece_at(const BigRational& x) const {
    for (const PolyPiece& p : pieces)
        if (x <= p.right) return p;
    if (pieces.empty()) throw InputError("empty piecewise polynomial");
    return pieces.back();
}

std::vector<BigRational> breakpoints(int n) {
    std::vector<BigRational> pts{0, 1};
    for (int i = 2; i <= n; ++i)
        for (int k = 1; k < i; ++k) pts.emplace_back(k, i);
    for (auto& q : pts) q.canonicalize();
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

PiecewisePolynomial piecewise_v_lower(int n) {
    if (n < 2 || n > 12) throw InputError("piecewise tables are supported for 2 <= n <= 12");
    const std::vector<BigRational> bp = breakpoints(n);
    PiecewisePolynomial out;
    const int m = n;  // a degree n-1 polynomial needs n samples
    for (std::size_t b = 0; b + 1 < bp.size(); ++b) {
        const BigRational& left = bp[b];
        const BigRational& right = bp[b + 1];
        const BigRational width = right - left;

        std::vector<BigRational> xs, ys;
        for (int j = 1; j <= m; ++j) {
            xs.push_back(left + width * BigRational(j, m + 1));
            ys.push_back(v_lower(n, xs.back()));
        }
        PolyPiece piece{left, right, interpolate(xs, ys)};

        std::vector<BigRational> checks{left};
        if (right < 1) checks.push_back(right);
        for (int j = 0; j < m; ++j) checks.push_back(left + width * BigRational(2 * j + 1, 2 * (m + 1)));
        for (auto& x : checks) {
            x.canonicalize();
            if (piece(x) != v_lower(n, x))
                throw std::logic_error("interpolated piece on [" + to_string(left) + ", " + to_string(right) +
                                       "] disagrees with v_lower at " + to_string(x));
        }

        if (!out.pieces.empty() && out.pieces.back().coeffs == piece.coeffs)
            out.pieces.back().right = right;
        else
            out.pieces.push_back(std::move(piece));
    }
    return out;
}

BigRational derivative_at_zero(int n) {
    const PiecewisePolynomial pw = piecewise_v_lower(n);
    const auto& c = pw.pieces.front().coeffs;
    // v_upper = 1 - v_lower, so its slope is the negated linear coefficient.
    return c.size() > 1 ? BigRational(-c[1]) : BigRational(0);
}

} // namespace splitroots::theory
