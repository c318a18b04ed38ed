#include <splitroots/cli.hpp>

#include <splitroots/errors.hpp>
#include <splitroots/geometry.hpp>
#include <splitroots/polyparse.hpp>
#include <splitroots/splitscan.hpp>
#include <splitroots/stats.hpp>
#include <splitroots/theory.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace splitroots::cli {

using json = nlohmann::ordered_json;

std::string format_real(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    return to_decimal(BigRational(v), 12);
}

std::string leading_digit_notation(double v) {
    if (!(v > 0)) return "0";
    int e = static_cast<int>(std::floor(std::log10(v)));
    double d = std::floor(v / std::pow(10.0, e) + 1e-12);
    if (d >= 10) {
        d = 1;
        ++e;
    }
    return std::to_string(static_cast<int>(d)) + "(" + std::to_string(-e) + ")";
}

std::vector<int> parse_int_list(std::string_view text) {
    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw InputError("bad integer list '" + std::string(text) + "'");
        return v;
    };
    std::vector<int> out;
    if (const std::size_t dots = text.find(".."); dots != std::string_view::npos) {
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(text.substr(dots + 2));
        if (hi < lo) throw InputError("empty range '" + std::string(text) + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(to_int(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

namespace {

enum class Format { Pretty, Csv, Json };

struct Common {
    std::string format = "pretty";
    std::string cache_dir = ".splitroots";
    unsigned threads = 0;

    Format fmt() const {
        if (format == "csv") return Format::Csv;
        if (format == "json") return Format::Json;
        return Format::Pretty;
    }
    ScanOptions scan_options() const {
        ScanOptions o;
        o.threads = threads;
        return o;
    }
};

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Highest degree first, e.g. "-20/3*a^3 + 2*a^2 + 2*a + 1/6".
std::string render_poly(const std::vector<BigRational>& c, char var) {
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        const bool neg = c[i] < 0;
        const BigRational mag = abs(c[i]);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0 || mag != 1) {
            out += to_string(mag);
            if (i > 0) out += '*';
        }
        if (i > 0) out += var;
        if (i > 1) out += '^' + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

struct TheoryArgs {
    int n = 0;
    std::vector<std::string> a;
    std::string x;
    std::string what = "all";
};

void run_theory(const TheoryArgs& args, const Common& common, std::ostream& out) {
    const Format fmt = common.fmt();
    if (args.what == "irwin-hall") {
        if (args.x.empty()) throw InputError("--what irwin-hall needs --x");
        const BigRational x = parse_rational(args.x);
        const BigRational u = theory::irwin_hall_cdf(args.n, x);
        if (fmt == Format::Csv)
            out << "n,x,U\n" << args.n << ',' << to_string(x) << ',' << to_decimal(u) << '\n';
        else if (fmt == Format::Json)
            out << json{{"n", args.n}, {"x", to_string(x)}, {"quantity", "irwin_hall_cdf"}, {"exact", to_string(u)},
                        {"decimal", to_decimal(u)}}.dump(2)
                << '\n';
        else
            out << "U_" << args.n << "(" << to_string(x) << ") = " << to_string(u) << " ~ " << to_decimal(u) << '\n';
        return;
    }
    if (args.a.empty()) throw InputError("theory needs at least one --a p/q");

    struct Quantity {
        const char* name;
        BigRational (*fn)(int, const BigRational&);
    };
    std::vector<Quantity> quantities;
    if (args.what == "upper" || args.what == "all") quantities.push_back({"V_upper", theory::v_upper});
    if (args.what == "lower" || args.what == "all") quantities.push_back({"V_lower", theory::v_lower});
    if (args.what == "e" || args.what == "all") quantities.push_back({"E", theory::e_density});

    if (fmt == Format::Csv) {
        const bool e_only = args.what == "e";
        out << (e_only ? "n,a,E\n" : "n,a,V_upper,V_lower\n");
        for (const std::string& text : args.a) {
            const BigRational a = parse_rational(text);
            out << args.n << ',' << to_string(a);
            if (e_only)
                out << ',' << to_decimal(theory::e_density(args.n, a));
            else
                out << ',' << to_decimal(theory::v_upper(args.n, a)) << ',' << to_decimal(theory::v_lower(args.n, a));
            out << '\n';
        }
        return;
    }

    json rows = json::array();
    for (const std::string& text : args.a) {
        const BigRational a = parse_rational(text);
        for (const Quantity& q : quantities) {
            const BigRational v = q.fn(args.n, a);
            if (fmt == Format::Json) {
                rows.push_back({{"n", args.n}, {"a", to_string(a)}, {"quantity", q.name}, {"exact", to_string(v)},
                                {"decimal", to_decimal(v)}});
            } else if (args.a.size() == 1 && quantities.size() == 1) {
                out << to_string(v) << '\n' << to_decimal(v) << '\n';
            } else {
                out << q.name << "(n=" << args.n << ", a=" << to_string(a) << ") = " << to_string(v) << " ~ "
                    << to_decimal(v) << '\n';
            }
        }
    }
    if (fmt == Format::Json) out << rows.dump(2) << '\n';
}

void run_piecewise(int n, const Common& common, std::ostream& out) {
    const theory::PiecewisePolynomial pw = theory::piecewise_v_lower(n);
    switch (common.fmt()) {
    case Format::Json: {
        json pieces = json::array();
        for (const auto& p : pw.pieces) {
            json coeffs = json::array();
            for (const auto& c : p.coeffs) coeffs.push_back(to_string(c));
            pieces.push_back({{"left", to_string(p.left)}, {"right", to_string(p.right)}, {"coeffs", coeffs},
                              {"expression", render_poly(p.coeffs, 'a')}});
        }
        out << json{{"n", n}, {"function", "V_lower"}, {"pieces", pieces}}.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        out << "n,left,right,coeffs\n";
        for (const auto& p : pw.pieces) {
            std::string coeffs;
            for (const auto& c : p.coeffs) coeffs += (coeffs.empty() ? "" : " ") + to_string(c);
            out << n << ',' << to_string(p.left) << ',' << to_string(p.right) << ',' << coeffs << '\n';
        }
        break;
    case Format::Pretty:
        out << "V_lower for n = " << n << ":\n";
        for (const auto& p : pw.pieces)
            out << "  [" << to_string(p.left) << ", " << to_string(p.right) << "]: " << render_poly(p.coeffs, 'a') << '\n';
        break;
    }
}

struct ScanArgs {
    std::string poly;
    std::uint64_t upto = 0;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::uint64_t sn_budget = 0;
    bool force = false;
};

void run_scan(const ScanArgs& args, const Common& common, std::ostream& out) {
    const MonicIntPolynomial f = parse_poly(args.poly);
    ScanOptions opts = common.scan_options();
    opts.segment_size = args.segment_size;
    const ScanCursor cursor = stats::ensure_scanned(f, args.upto, common.cache_dir, opts, args.force);
    const std::size_t count = cursor.count_upto(args.upto);
    const std::string path = (std::filesystem::path(common.cache_dir) / cache_file_name(f)).string();

    std::optional<SnEvidence> ev;
    if (args.sn_budget > 0) ev = sn_evidence(f, args.sn_budget);

    switch (common.fmt()) {
    case Format::Json: {
        json j{{"poly", f.to_string()}, {"degree", f.degree()}, {"discriminant", f.discriminant().get_str()},
               {"upto", args.upto}, {"split_count", count}, {"cache", path}};
        if (ev) {
            json w = json::object();
            for (const auto& [kind, p] : ev->witnesses) w[to_string(kind)] = p;
            j["sn_evidence"] = {{"witnesses", w}, {"conclusive", ev->conclusive}};
        }
        out << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        out << "poly,upto,split_count\n" << csv_quote(f.to_string()) << ',' << args.upto << ',' << count << '\n';
        break;
    case Format::Pretty:
        out << "poly         " << f.to_string() << "\n"
            << "discriminant " << f.discriminant().get_str() << "\n"
            << "upto         " << args.upto << "\n"
            << "split primes " << count << "\n"
            << "cache        " << path << '\n';
        if (ev) {
            out << "S_n evidence " << (ev->conclusive ? "conclusive" : "inconclusive") << '\n';
            for (const auto& [kind, p] : ev->witnesses) out << "  " << to_string(kind) << " at p = " << p << '\n';
        }
        break;
    }
}

void write_cdf(const std::string& path, const std::vector<stats::CdfRow>& rows) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot write " + path);
    os << "a,empirical,theoretical\n";
    for (const auto& r : rows) os << to_string(r.a) << ',' << format_real(r.empirical) << ',' << to_decimal(r.theoretical) << '\n';
}

void emit_cells(const std::vector<stats::DeviationCell>& cells, Format fmt, std::ostream& out) {
    switch (fmt) {
    case Format::Json: {
        json arr = json::array();
        for (const auto& c : cells) {
            json j{{"n", c.n}, {"m", c.m}};
            if (c.skipped) {
                j["skipped"] = true;
            } else {
                j["X_m"] = c.x_m;
                j["split_count"] = c.split_count;
                j["max_deviation"] = format_real(c.max_deviation);
                j["notation"] = leading_digit_notation(c.max_deviation);
            }
            arr.push_back(j);
        }
        out << arr.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        out << "n,m,X_m,split_count,max_deviation\n";
        for (const auto& c : cells) {
            if (c.skipped)
                out << c.n << ',' << c.m << ",,,skipped\n";
            else
                out << c.n << ',' << c.m << ',' << c.x_m << ',' << c.split_count << ',' << format_real(c.max_deviation) << '\n';
        }
        break;
    case Format::Pretty:
        out << std::left << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(14) << "X_m" << std::setw(12)
            << "#Spl" << std::setw(18) << "max deviation" << "cell\n";
        for (const auto& c : cells) {
            out << std::setw(4) << c.n << std::setw(4) << c.m;
            if (c.skipped)
                out << "skipped (scan budget)\n";
            else
                out << std::setw(14) << c.x_m << std::setw(12) << c.split_count << std::setw(18)
                    << format_real(c.max_deviation) << leading_digit_notation(c.max_deviation) << '\n';
        }
        out << std::right;
        break;
    }
}

struct StatsArgs {
    std::string poly;
    int m = -1;
    std::uint64_t upto = 0;
    std::string constraint;
    std::string emit_cdf;
    bool force = false;
};

void run_stats(const StatsArgs& args, const Common& common, std::ostream& out) {
    const MonicIntPolynomial f = parse_poly(args.poly);
    const Format fmt = common.fmt();
    if (args.m >= 0) {
        if (args.m > 18) throw InputError("--m must be at most 18");
        std::uint64_t bound = 1;
        for (int i = 0; i < args.m; ++i) bound *= 10;
        const u64 x_m = least_split_prime_above(f, bound);
        const ScanCursor cursor = stats::ensure_scanned(f, x_m, common.cache_dir, common.scan_options(), args.force);
        const stats::DeviationCell cell = stats::deviation_row(cursor, args.m);
        if (!args.emit_cdf.empty()) write_cdf(args.emit_cdf, stats::smallest_root_cdf(cursor, x_m));
        emit_cells({cell}, fmt, out);
        return;
    }
    if (args.upto < 2) throw InputError("stats needs --m or --upto");
    const ScanCursor cursor = stats::ensure_scanned(f, args.upto, common.cache_dir, common.scan_options(), args.force)
                                  .truncated(args.upto);
    if (!args.emit_cdf.empty()) write_cdf(args.emit_cdf, stats::smallest_root_cdf(cursor, args.upto));
    const DomainSpec d = parse_domain(args.constraint);
    const std::size_t hits = stats::count_in(cursor, d);
    const double pr = stats::empirical_pr(cursor, d);
    switch (fmt) {
    case Format::Json:
        out << json{{"poly", f.to_string()},   {"upto", args.upto}, {"constraints", to_string(d)},
                    {"count", hits},           {"total", cursor.size()}, {"pr", format_real(pr)}}
                   .dump(2)
            << '\n';
        break;
    case Format::Csv:
        out << "poly,upto,constraints,count,total,pr\n"
            << csv_quote(f.to_string()) << ',' << args.upto << ',' << csv_quote(to_string(d)) << ',' << hits << ','
            << cursor.size() << ',' << format_real(pr) << '\n';
        break;
    case Format::Pretty:
        out << "Pr[" << (d.constraints.empty() ? "all" : to_string(d)) << "] over Spl_" << args.upto << "("
            << f.to_string() << ") = " << hits << "/" << cursor.size() << " = " << format_real(pr) << '\n';
        break;
    }
}

struct TableArgs {
    std::string ns = "2..5";
    std::string ms = "7";
    std::uint64_t max_scan = 1'000'000'000;
};

void run_table(const TableArgs& args, const Common& common, std::ostream& out) {
    const std::vector<int> ns = parse_int_list(args.ns);
    const std::vector<int> ms = parse_int_list(args.ms);
    stats::TableOptions opts;
    opts.max_scan = args.max_scan;
    opts.scan = common.scan_options();
    emit_cells(stats::deviation_table(ns, ms, common.cache_dir, opts), common.fmt(), out);
}

struct VolumeArgs {
    int n = 0;
    std::string constraint;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

void run_volume(const VolumeArgs& args, const Common& common, std::ostream& out) {
    const DomainSpec d = parse_domain(args.constraint);
    const auto est = geometry::mc_volume_ratio(args.n, d, args.samples, args.seed, common.threads);
    switch (common.fmt()) {
    case Format::Json:
        out << json{{"n", args.n},          {"constraints", to_string(d)},       {"samples", est.samples},
                    {"seed", est.seed},     {"mean", format_real(est.mean)},     {"stderr", format_real(est.standard_error)}}
                   .dump(2)
            << '\n';
        break;
    case Format::Csv:
        out << "n,constraints,samples,seed,mean,stderr\n"
            << args.n << ',' << csv_quote(to_string(d)) << ',' << est.samples << ',' << est.seed << ','
            << format_real(est.mean) << ',' << format_real(est.standard_error) << '\n';
        break;
    case Format::Pretty:
        out << "n        " << args.n << "\n"
            << "domain   " << (d.constraints.empty() ? "(whole region)" : to_string(d)) << "\n"
            << "samples  " << est.samples << "\n"
            << "seed     " << est.seed << "\n"
            << "mean     " << format_real(est.mean) << "\n"
            << "stderr   " << format_real(est.standard_error) << '\n';
        break;
    }
}

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"pretty", "csv", "json"}));
    sub->add_option("--cache-dir", common.cache_dir, "Directory holding scan caches");
    sub->add_option("--threads", common.threads, "Worker threads (0 = hardware count)");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sorted roots of polynomials modulo fully split primes"};
    app.require_subcommand(1);
    Common common;

    TheoryArgs theory_args;
    auto* theory_cmd = app.add_subcommand("theory", "Exact densities V^a, V_a, E_a and the Irwin-Hall CDF");
    theory_cmd->add_option("--n", theory_args.n, "Degree")->required()->check(CLI::Range(1, 64));
    theory_cmd->add_option("--a", theory_args.a, "Threshold p/q (repeatable)");
    theory_cmd->add_option("--x", theory_args.x, "Irwin-Hall argument p/q");
    theory_cmd->add_option("--what", theory_args.what, "Quantity")
        ->check(CLI::IsMember({"upper", "lower", "e", "irwin-hall", "all"}));
    add_common(theory_cmd, common);

    int piecewise_n = 0;
    auto* piecewise_cmd = app.add_subcommand("piecewise", "Piecewise-polynomial form of V_a");
    piecewise_cmd->add_option("--n", piecewise_n, "Degree")->required()->check(CLI::Range(2, 12));
    add_common(piecewise_cmd, common);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "Build or extend the split-prime cache of a polynomial");
    scan_cmd->add_option("--poly", scan_args.poly, "Polynomial, e.g. x^3+3x+1")->required();
    scan_cmd->add_option("--upto", scan_args.upto, "Scan bound X")->required();
    scan_cmd->add_option("--segment-size", scan_args.segment_size, "Sieve segment length");
    scan_cmd->add_option("--sn-budget", scan_args.sn_budget, "Also collect S_n cycle-type evidence up to this prime");
    scan_cmd->add_flag("--force", scan_args.force, "Ignore an existing cache");
    add_common(scan_cmd, common);

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "Empirical proportions and deviation rows");
    stats_cmd->add_option("--poly", stats_args.poly, "Polynomial")->required();
    stats_cmd->add_option("--m", stats_args.m, "Deviation row for X_m = least split prime above 10^m");
    stats_cmd->add_option("--upto", stats_args.upto, "Sample bound X for Pr_D(f, X)");
    stats_cmd->add_option("--constraint", stats_args.constraint, "Domain, e.g. \"x1>=1/4,x2<=1/2\"");
    stats_cmd->add_option("--emit-cdf", stats_args.emit_cdf, "Write a,empirical,theoretical rows to this file");
    stats_cmd->add_flag("--force", stats_args.force, "Ignore an existing cache");
    add_common(stats_cmd, common);

    TableArgs table_args;
    auto* table_cmd = app.add_subcommand("table", "Deviation table for x^n + 3x + 1");
    table_cmd->add_option("--n", table_args.ns, "Degrees, e.g. 2..5");
    table_cmd->add_option("--m", table_args.ms, "Exponents, e.g. 7..8");
    table_cmd->add_option("--max-scan", table_args.max_scan, "Skip cells needing a scan beyond this bound");
    add_common(table_cmd, common);

    VolumeArgs volume_args;
    auto* volume_cmd = app.add_subcommand("volume", "Monte Carlo volume ratio for a domain");
    volume_cmd->add_option("--n", volume_args.n, "Degree")->required()->check(CLI::Range(2, 64));
    volume_cmd->add_option("--constraint", volume_args.constraint, "Domain, e.g. \"x2<=1/2\"");
    volume_cmd->add_option("--samples", volume_args.samples, "Sample count");
    volume_cmd->add_option("--seed", volume_args.seed, "RNG seed");
    add_common(volume_cmd, common);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*theory_cmd) run_theory(theory_args, common, out);
        else if (*piecewise_cmd) run_piecewise(piecewise_n, common, out);
        else if (*scan_cmd) run_scan(scan_args, common, out);
        else if (*stats_cmd) run_stats(stats_args, common, out);
        else if (*table_cmd) run_table(table_args, common, out);
        else if (*volume_cmd) run_volume(volume_args, common, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitOk;
}

} // namespace splitroots::cli
