#include <splitroots/polyparse.hpp>

#include <splitroots/errors.hpp>

#include <cctype>
#include <map>

namespace splitroots {

namespace {

constexpr int kMaxExponent = 4096;

class PolyParser {
public:
    explicit PolyParser(std::string_view src) : src_(src) {}

    std::map<int, __int128> parse() {
        std::map<int, __int128> terms;
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "empty polynomial");
        bool first = true;
        while (!at_end()) {
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
                skip_ws();
            } else if (!first) {
                throw SyntaxError(pos_, "expected '+' or '-'");
            }
            first = false;
            auto [exp, coef] = term();
            __int128& slot = terms[exp];
            slot += negative ? -coef : coef;
            if (slot >= kLimit || slot <= -kLimit) throw CoefficientOverflow("coefficient of x^" + std::to_string(exp) + " overflows");
            skip_ws();
        }
        return terms;
    }

private:
    static constexpr __int128 kLimit = static_cast<__int128>(1) << 62;

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    __int128 integer() {
        const std::size_t start = pos_;
        __int128 v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v >= kLimit) throw CoefficientOverflow("integer starting at offset " + std::to_string(start) + " is too large");
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError(pos_, "expected a digit");
        return v;
    }

    std::pair<int, __int128> term() {
        __int128 coef = 1;
        bool have_coef = false;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = integer();
            have_coef = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
                if (at_end() || peek() != 'x') throw SyntaxError(pos_, "expected 'x' after '*'");
            }
        }
        if (at_end() || peek() != 'x') {
            if (!have_coef) throw SyntaxError(pos_, at_end() ? "unexpected end of input" : "unexpected character");
            return {0, coef};
        }
        ++pos_;  // 'x'
        skip_ws();
        int exp = 1;
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            const __int128 e = integer();
            if (e > kMaxExponent) throw SyntaxError(at, "exponent too large");
            exp = static_cast<int>(e);
        }
        return {exp, coef};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace

MonicIntPolynomial parse_poly(std::string_view src) {
    std::map<int, __int128> terms = PolyParser(src).parse();
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    if (terms.empty()) throw DegreeTooSmall("polynomial is zero");
    const auto [degree, lead] = *terms.rbegin();
    if (lead != 1) throw NotMonic("leading coefficient must be 1");
    if (degree < 2) throw DegreeTooSmall("degree must be at least 2, got " + std::to_string(degree));
    std::vector<i64> coeffs(static_cast<std::size_t>(degree), 0);
    for (const auto& [e, c] : terms)
        if (e < degree) coeffs[static_cast<std::size_t>(e)] = static_cast<i64>(c);
    return MonicIntPolynomial(std::move(coeffs));
}

} // namespace splitroots
