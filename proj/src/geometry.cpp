#include <splitroots/geometry.hpp>

#include <splitroots/errors.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <thread>

namespace splitroots {

int DomainSpec::max_index() const {
    int m = 0;
    for (const Constraint& c : constraints) m = std::max(m, c.index);
    return m;
}

DomainSpec DomainSpec::smallest_at_least(const BigRational& a) { return coordinate_at_least(1, a); }
DomainSpec DomainSpec::smallest_at_most(const BigRational& a) { return coordinate_at_most(1, a); }
DomainSpec DomainSpec::coordinate_at_most(int m, const BigRational& a) { return {{{m, Direction::AtMost, a}}}; }
DomainSpec DomainSpec::coordinate_at_least(int m, const BigRational& a) { return {{{m, Direction::AtLeast, a}}}; }

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Constraint parse_constraint(std::string_view text) {
    const std::string_view s = strip(text);
    auto bad = [&] { return InputError("bad constraint '" + std::string(text) + "', expected x<m><=p/q or x<m>>=p/q"); };
    if (s.size() < 4 || s[0] != 'x') throw bad();
    std::size_t pos = 1;
    int index = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        index = index * 10 + (s[pos] - '0');
        if (index > 1'000'000) throw bad();
        ++pos;
    }
    if (pos == 1 || index < 1 || pos + 2 > s.size()) throw bad();
    Direction dir;
    if (s.substr(pos, 2) == "<=")
        dir = Direction::AtMost;
    else if (s.substr(pos, 2) == ">=")
        dir = Direction::AtLeast;
    else
        throw bad();
    BigRational bound = parse_rational(strip(s.substr(pos + 2)));
    if (bound < 0 || bound > 1) throw InputError("constraint bound must lie in [0, 1]: " + std::string(text));
    return {index, dir, std::move(bound)};
}

} // namespace

DomainSpec parse_domain(std::string_view text) {
    DomainSpec d;
    if (strip(text).empty()) return d;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        d.constraints.push_back(parse_constraint(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return d;
}

std::string to_string(const DomainSpec& d) {
    std::string out;
    for (const Constraint& c : d.constraints) {
        if (!out.empty()) out += ',';
        out += 'x' + std::to_string(c.index) + (c.direction == Direction::AtMost ? "<=" : ">=") + to_string(c.bound);
    }
    return out;
}

namespace geometry {

DhatPoint dhat_from_free(std::vector<double> coords) {
    double sum = 0;
    for (double u : coords) sum += u;
    coords.push_back(std::ceil(sum) - sum);
    std::sort(coords.begin(), coords.end());
    return DhatPoint{std::move(coords)};
}

DhatPoint sample_dhat(int n, Rng& rng) {
    if (n < 2) throw InputError("sample_dhat needs n >= 2");
    std::vector<double> free(static_cast<std::size_t>(n - 1));
    for (double& u : free) u = rng.unit();
    return dhat_from_free(std::move(free));
}

int compare(double x, const BigRational& q) {
    const double d = q.get_d();  // truncates toward zero
    if (q >= 0 && x != d) return x < d ? -1 : 1;
    const int c = cmp(BigRational(x), q);
    return (c > 0) - (c < 0);
}

namespace {

struct CompiledConstraint {
    std::size_t slot;
    Direction direction;
    double truncated;
    BigRational bound;
};

// Same decision as compare(), with the bound's double precomputed.
bool satisfies(double x, const CompiledConstraint& c) {
    int order;
    if (x != c.truncated)
        order = x < c.truncated ? -1 : 1;
    else
        order = cmp(BigRational(x), c.bound);
    return c.direction == Direction::AtMost ? order <= 0 : order >= 0;
}

std::vector<CompiledConstraint> compile(int n, const DomainSpec& d) {
    std::vector<CompiledConstraint> out;
    for (const Constraint& c : d.constraints) {
        if (c.index < 1 || c.index > n) throw InputError("constraint index x" + std::to_string(c.index) + " out of range for n = " + std::to_string(n));
        if (c.bound < 0 || c.bound > 1) throw InputError("constraint bound outside [0, 1]");
        out.push_back({static_cast<std::size_t>(c.index - 1), c.direction, c.bound.get_d(), c.bound});
    }
    return out;
}

} // namespace

bool member(const DhatPoint& pt, const DomainSpec& d) {
    for (const CompiledConstraint& c : compile(static_cast<int>(pt.coords.size()), d))
        if (!satisfies(pt.coords[c.slot], c)) return false;
    return true;
}

std::vector<McEstimate> mc_volume_ratios(int n, const std::vector<DomainSpec>& domains, std::uint64_t samples,
                                         std::uint64_t seed, unsigned threads) {
    if (n < 2) throw InputError("n must be at least 2");
    if (samples < 1) throw InputError("samples must be at least 1");
    std::vector<std::vector<CompiledConstraint>> compiled;
    for (const DomainSpec& d : domains) compiled.push_back(compile(n, d));

    const std::uint64_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
    std::vector<std::vector<std::uint64_t>> block_hits(blocks, std::vector<std::uint64_t>(domains.size(), 0));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        std::vector<double> free(static_cast<std::size_t>(n - 1));
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            Rng rng(seed, b);
            const std::uint64_t count = std::min(kSamplesPerBlock, samples - b * kSamplesPerBlock);
            auto& hits = block_hits[b];
            for (std::uint64_t s = 0; s < count; ++s) {
                for (double& u : free) u = rng.unit();
                const DhatPoint pt = dhat_from_free(free);
                for (std::size_t k = 0; k < compiled.size(); ++k) {
                    bool in = true;
                    for (const CompiledConstraint& c : compiled[k]) {
                        if (!satisfies(pt.coords[c.slot], c)) {
                            in = false;
                            break;
                        }
                    }
                    hits[k] += in;
                }
            }
        }
    };
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<std::uint64_t>(t, blocks));
    if (t <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    }

    std::vector<McEstimate> out(domains.size());
    for (std::size_t k = 0; k < domains.size(); ++k) {
        std::uint64_t hits = 0;
        for (const auto& bh : block_hits) hits += bh[k];
        const double mean = static_cast<double>(hits) / static_cast<double>(samples);
        out[k] = McEstimate{mean, std::sqrt(mean * (1 - mean) / static_cast<double>(samples)), samples, seed, hits};
    }
    return out;
}

McEstimate mc_volume_ratio(int n, const DomainSpec& d, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    return mc_volume_ratios(n, {d}, samples, seed, threads).front();
}

} // namespace geometry
} // namespace splitroots
