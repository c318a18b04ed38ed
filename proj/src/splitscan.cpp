#include <splitroots/splitscan.hpp>

#include <splitroots/errors.hpp>
#include <splitroots/sieve.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace splitroots {

SplitRecord ScanCursor::record(std::size_t i) const {
    const RecordView v = (*this)[i];
    return SplitRecord{v.p, std::vector<u64>(v.roots.begin(), v.roots.end())};
}

std::size_t ScanCursor::count_upto(u64 bound) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), bound) - primes_.begin());
}

ScanCursor ScanCursor::truncated(u64 bound) const {
    ScanCursor out(poly_);
    const std::size_t k = count_upto(bound);
    const auto n = static_cast<std::size_t>(poly_.degree());
    out.primes_.assign(primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(k));
    out.roots_.assign(roots_.begin(), roots_.begin() + static_cast<std::ptrdiff_t>(k * n));
    out.scanned_up_to_ = std::min(bound, scanned_up_to_);
    return out;
}

void ScanCursor::append(u64 p, std::span<const u64> roots) {
    if (roots.size() != static_cast<std::size_t>(poly_.degree())) throw InputError("record has the wrong number of roots");
    if (!primes_.empty() && p <= primes_.back()) throw InputError("records must have strictly increasing primes");
    if (!std::is_sorted(roots.begin(), roots.end())) throw InputError("roots must be ascending");
    primes_.push_back(p);
    roots_.insert(roots_.end(), roots.begin(), roots.end());
    if (p > scanned_up_to_) scanned_up_to_ = p;
}

void ScanCursor::mark_scanned(u64 upto) {
    if (!primes_.empty() && upto < primes_.back()) throw InputError("scanned bound below the last record");
    scanned_up_to_ = upto;
}

namespace {

struct SegmentResult {
    std::vector<u64> primes;
    std::vector<u64> roots;
};

SegmentResult scan_segment(const MonicIntPolynomial& f, u64 lo, u64 hi, std::span<const u64> base,
                           const RootOptions& ropts) {
    SegmentResult out;
    for (u64 p : primes_in_segment(lo, hi, base)) {
        if (auto roots = split_roots(f, p, ropts)) {
            out.primes.push_back(p);
            out.roots.insert(out.roots.end(), roots->begin(), roots->end());
        }
    }
    return out;
}

} // namespace

ScanCursor scan(const MonicIntPolynomial& f, u64 upto, const std::optional<ScanCursor>& resume, const ScanOptions& opts) {
    if (upto < 2) throw InputError("scan bound must be at least 2");
    if (upto >= kMaxModulus) throw InputError("scan bound must be below 2^62");
    if (opts.segment_size == 0) throw InputError("segment size must be positive");
    if (resume && !(resume->poly() == f)) throw InputError("resume cursor belongs to a different polynomial");

    if (resume && resume->scanned_up_to() >= upto) return resume->truncated(upto);
    ScanCursor cursor = resume ? *resume : ScanCursor(f);
    const u64 lo = resume ? resume->scanned_up_to() + 1 : 2;

    const std::vector<u64> base = primes_up_to(isqrt(upto));
    const u64 span_len = upto - lo + 1;
    const u64 segments = (span_len + opts.segment_size - 1) / opts.segment_size;

    std::vector<SegmentResult> results(segments);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<u64>(threads, segments));

    std::atomic<u64> next{0};
    auto worker = [&] {
        for (u64 s = next++; s < segments; s = next++) {
            const u64 seg_lo = lo + s * opts.segment_size;
            const u64 seg_hi = std::min(upto, seg_lo + opts.segment_size - 1);
            results[s] = scan_segment(f, seg_lo, seg_hi, base, opts.roots);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    const auto n = static_cast<std::size_t>(f.degree());
    for (const SegmentResult& r : results) {
        for (std::size_t i = 0; i < r.primes.size(); ++i)
            cursor.append(r.primes[i], std::span<const u64>(r.roots).subspan(i * n, n));
    }
    cursor.mark_scanned(upto);
    return cursor;
}

u64 least_split_prime_above(const MonicIntPolynomial& f, u64 bound, u64 limit) {
    if (bound < 1) throw InputError("bound must be at least 1");
    if (limit == 0) limit = bound > (kMaxModulus - 1) / 100 ? kMaxModulus - 1 : 100 * bound;
    limit = std::min(limit, kMaxModulus - 1);

    const std::vector<u64> base = primes_up_to(isqrt(limit));
    constexpr u64 kWindow = u64{1} << 16;
    for (u64 lo = bound + 1; lo <= limit; lo += kWindow) {
        const u64 hi = std::min(limit, lo + kWindow - 1);
        for (u64 p : primes_in_segment(lo, hi, base)) {
            if (split_roots(f, p).has_value()) return p;
        }
        if (hi == limit) break;
    }
    throw NotFound("no fully split prime for " + f.to_string() + " in (" + std::to_string(bound) + ", " +
                   std::to_string(limit) + "]");
}

std::string to_string(WitnessKind kind) {
    switch (kind) {
    case WitnessKind::NCycle: return "n-cycle";
    case WitnessKind::Transposition: return "transposition";
    case WitnessKind::LargePrimeCycle: return "large-prime-cycle";
    }
    return "unknown";
}

SnEvidence sn_evidence(const MonicIntPolynomial& f, u64 prime_budget) {
    SnEvidence ev;
    const int n = f.degree();
    for (u64 p : primes_up_to(prime_budget)) {
        if (f.is_ramified(p)) continue;
        const std::vector<int> ct = cycle_type(f, p);
        // ct is ascending; every part but the last equal to 1 means a single
        // nontrivial cycle of length ct.back().
        const int big = ct.back();
        const bool single_cycle = std::all_of(ct.begin(), ct.end() - 1, [](int d) { return d == 1; });
        if (ct.size() == 1) ev.witnesses.try_emplace(WitnessKind::NCycle, p);
        if (single_cycle && big == 2) ev.witnesses.try_emplace(WitnessKind::Transposition, p);
        if (single_cycle && 2 * big > n && is_prime(static_cast<u64>(big)))
            ev.witnesses.try_emplace(WitnessKind::LargePrimeCycle, p);
        if (ev.witnesses.size() == 3) break;
    }
    ev.conclusive = ev.witnesses.size() == 3;
    return ev;
}

// ---------------------------------------------------------------------------
// Cache I/O

namespace {

constexpr std::string_view kCacheHeader = "splitroots-cache v1";

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& why) {
    throw CorruptCache("corrupt cache " + path.string() + ": " + why);
}

void append_number(std::string& out, u64 v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

// Splits a line into space-separated tokens; empty tokens are an error.
bool tokenize(std::string_view line, std::vector<std::string_view>& tokens) {
    tokens.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t sp = line.find(' ', pos);
        const std::size_t end = sp == std::string_view::npos ? line.size() : sp;
        if (end == pos) return false;
        tokens.push_back(line.substr(pos, end - pos));
        if (sp == std::string_view::npos) break;
        pos = sp + 1;
    }
    return true;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty() || s[0] == '+') return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

} // namespace

void cache_write(const ScanCursor& cursor, const std::filesystem::path& path) {
    std::string out;
    out.reserve(64 + cursor.size() * static_cast<std::size_t>(cursor.poly().degree() + 1) * 11);
    out += kCacheHeader;
    out += "\npoly ";
    out += std::to_string(cursor.poly().degree());
    for (i64 c : cursor.poly().coeffs()) {
        out += ' ';
        out += std::to_string(c);
    }
    out += "\nupto ";
    append_number(out, cursor.scanned_up_to());
    out += '\n';
    for (std::size_t i = 0; i < cursor.size(); ++i) {
        const RecordView r = cursor[i];
        append_number(out, r.p);
        for (u64 root : r.roots) {
            out += ' ';
            append_number(out, root);
        }
        out += '\n';
    }
    out += "end ";
    append_number(out, cursor.size());
    out += '\n';

    // Write to a sibling and rename so readers never see a partial file.
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

ScanCursor cache_read(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CorruptCache("cannot open cache " + path.string());
    std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= data.size()) return false;
        const std::size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) corrupt(path, "missing final newline");
        line = std::string_view(data).substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    std::vector<std::string_view> tok;
    if (!next_line(line) || line != kCacheHeader) corrupt(path, "bad header");

    if (!next_line(line) || !tokenize(line, tok) || tok.size() < 3 || tok[0] != "poly") corrupt(path, "bad poly line");
    int n = 0;
    if (!parse_number(tok[1], n) || n < 2 || tok.size() != static_cast<std::size_t>(n) + 2)
        corrupt(path, "degree does not match coefficient count");
    std::vector<i64> coeffs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (!parse_number(tok[static_cast<std::size_t>(i) + 2], coeffs[static_cast<std::size_t>(i)]))
            corrupt(path, "bad coefficient");

    std::optional<ScanCursor> cursor;
    try {
        cursor.emplace(MonicIntPolynomial(std::move(coeffs)));
    } catch (const InputError& e) {
        corrupt(path, e.what());
    }

    u64 upto = 0;
    if (!next_line(line) || !tokenize(line, tok) || tok.size() != 2 || tok[0] != "upto" || !parse_number(tok[1], upto))
        corrupt(path, "bad upto line");

    std::vector<u64> roots(static_cast<std::size_t>(n));
    for (;;) {
        if (!next_line(line)) corrupt(path, "truncated (no end line)");
        if (!tokenize(line, tok)) corrupt(path, "bad record at line " + std::to_string(line_no));
        if (tok[0] == "end") {
            std::size_t count = 0;
            if (tok.size() != 2 || !parse_number(tok[1], count)) corrupt(path, "bad end line");
            if (count != cursor->size()) corrupt(path, "record count mismatch");
            if (pos != data.size()) corrupt(path, "data after end line");
            break;
        }
        if (tok.size() != static_cast<std::size_t>(n) + 1) corrupt(path, "wrong root count at line " + std::to_string(line_no));
        u64 p = 0;
        if (!parse_number(tok[0], p) || p > upto) corrupt(path, "bad prime at line " + std::to_string(line_no));
        for (int i = 0; i < n; ++i) {
            u64& r = roots[static_cast<std::size_t>(i)];
            if (!parse_number(tok[static_cast<std::size_t>(i) + 1], r) || r >= p)
                corrupt(path, "bad root at line " + std::to_string(line_no));
        }
        try {
            cursor->append(p, roots);
        } catch (const InputError& e) {
            corrupt(path, std::string(e.what()) + " at line " + std::to_string(line_no));
        }
    }
    cursor->mark_scanned(upto);
    return std::move(*cursor);
}

ScanCursor cache_read(const std::filesystem::path& path, const MonicIntPolynomial& expected) {
    ScanCursor c = cache_read(path);
    if (!(c.poly() == expected))
        throw CorruptCache("corrupt cache " + path.string() + ": poly mismatch (holds " + c.poly().to_string() +
                           ", expected " + expected.to_string() + ")");
    return c;
}

std::string cache_file_name(const MonicIntPolynomial& f) {
    // FNV-1a over the decimal coefficient list.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::string key;
    for (i64 c : f.coeffs()) key += std::to_string(c) + ',';
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << 'd' << f.degree() << '-' << std::hex << std::setw(16) << std::setfill('0') << h << ".cache";
    return os.str();
}

} // namespace splitroots
