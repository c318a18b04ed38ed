#include <splitroots/rational.hpp>

#include <splitroots/errors.hpp>

#include <cctype>

namespace splitroots {

namespace {

bool valid_integer(std::string_view s) {
    if (!s.empty() && s[0] == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

} // namespace

BigRational parse_rational(std::string_view text) {
    const std::size_t slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-')
        throw InputError("expected a rational p/q, got '" + std::string(text) + "'");
    BigRational q{mpz_class(std::string(num)), mpz_class(std::string(den))};
    if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

std::string to_decimal(const BigRational& q, int significant) {
    if (significant < 1) significant = 1;
    const auto sig = static_cast<unsigned long>(significant);
    if (q == 0) return "0." + std::string(sig - 1, '0');

    const BigRational mag = abs(q);
    // Decimal exponent e with 10^e <= mag < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(mag.get_num().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(mag.get_den().get_mpz_t(), 10));
    auto scaled_pow = [](long k) {
        return k >= 0 ? BigRational(pow10(static_cast<unsigned long>(k))) : BigRational(1, pow10(static_cast<unsigned long>(-k)));
    };
    while (mag < scaled_pow(e)) --e;
    while (mag >= scaled_pow(e + 1)) ++e;

    // Round mag * 10^(sig-1-e) half to even.
    const BigRational scaled = mag * scaled_pow(static_cast<long>(sig) - 1 - e);
    mpz_class digits, rem;
    mpz_fdiv_qr(digits.get_mpz_t(), rem.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    const int cmp = mpz_cmp(mpz_class(2 * rem).get_mpz_t(), scaled.get_den().get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(digits.get_mpz_t()))) ++digits;
    if (digits == pow10(sig)) {
        digits /= 10;
        ++e;
    }

    const std::string d = digits.get_str();
    std::string out = q < 0 ? "-" : "";
    if (e < 0) {
        out += "0.";
        out += std::string(static_cast<std::size_t>(-e - 1), '0');
        out += d;
    } else if (static_cast<unsigned long>(e) + 1 >= sig) {
        out += d;
        out += std::string(static_cast<std::size_t>(e + 1) - sig, '0');
    } else {
        out += d.substr(0, static_cast<std::size_t>(e) + 1);
        out += '.';
        out += d.substr(static_cast<std::size_t>(e) + 1);
    }
    return out;
}

BigRational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return BigRational(r);
}

BigRational factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return BigRational(r);
}

} // namespace splitroots
