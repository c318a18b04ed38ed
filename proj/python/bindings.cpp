#include <splitroots/errors.hpp>
#include <splitroots/geometry.hpp>
#include <splitroots/modpoly.hpp>
#include <splitroots/polyparse.hpp>
#include <splitroots/splitscan.hpp>
#include <splitroots/stats.hpp>
#include <splitroots/theory.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace splitroots;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python package wraps
// them in fractions.Fraction.
std::string rational_fn(BigRational (*fn)(int, const BigRational&), int n, const std::string& a) {
    return to_string(fn(n, parse_rational(a)));
}

py::object big_int(const mpz_class& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

py::dict estimate_dict(const geometry::McEstimate& e) {
    py::dict d;
    d["mean"] = e.mean;
    d["stderr"] = e.standard_error;
    d["samples"] = e.samples;
    d["seed"] = e.seed;
    d["hits"] = e.hits;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Roots of polynomials modulo fully split primes: scanning, exact densities, Monte Carlo volumes.";

    py::register_exception<NotFullySplit>(m, "NotFullySplit", PyExc_ValueError);
    py::register_exception<CorruptCache>(m, "CorruptCache", PyExc_RuntimeError);
    py::register_exception<NotFound>(m, "NotFound", PyExc_RuntimeError);
    py::register_exception<EmptySample>(m, "EmptySample", PyExc_ValueError);

    py::class_<MonicIntPolynomial>(m, "MonicIntPolynomial")
        .def(py::init<std::vector<i64>>(), py::arg("lower_coeffs"))
        .def_property_readonly("degree", &MonicIntPolynomial::degree)
        .def_property_readonly("coeffs",
                               [](const MonicIntPolynomial& f) { return std::vector<i64>(f.coeffs().begin(), f.coeffs().end()); })
        .def_property_readonly("discriminant", [](const MonicIntPolynomial& f) { return big_int(f.discriminant()); })
        .def("__eq__", [](const MonicIntPolynomial& a, const MonicIntPolynomial& b) { return a == b; })
        .def("__str__", &MonicIntPolynomial::to_string)
        .def("__repr__", [](const MonicIntPolynomial& f) { return "MonicIntPolynomial('" + f.to_string() + "')"; });

    m.def("parse_poly", [](const std::string& s) { return parse_poly(s); }, py::arg("src"));

    m.def("splits_completely", &splits_completely, py::arg("f"), py::arg("p"));
    m.def(
        "roots_mod_p",
        [](const MonicIntPolynomial& f, u64 p, u64 seed, u64 brute_force_below) {
            return roots_mod_p(f, p, RootOptions{brute_force_below, seed});
        },
        py::arg("f"), py::arg("p"), py::arg("seed") = 0, py::arg("brute_force_below") = 4096);
    m.def("cycle_type", &cycle_type, py::arg("f"), py::arg("p"));

    py::class_<ScanCursor>(m, "ScanCursor")
        .def_property_readonly("poly", &ScanCursor::poly)
        .def_property_readonly("scanned_up_to", &ScanCursor::scanned_up_to)
        .def_property_readonly("primes", [](const ScanCursor& c) { return std::vector<u64>(c.primes().begin(), c.primes().end()); })
        .def("record",
             [](const ScanCursor& c, std::size_t i) {
                 if (i >= c.size()) throw py::index_error();
                 const SplitRecord r = c.record(i);
                 return py::make_tuple(r.p, r.roots);
             })
        .def("count_upto", &ScanCursor::count_upto)
        .def("__len__", &ScanCursor::size)
        .def("__eq__", [](const ScanCursor& a, const ScanCursor& b) { return a == b; });

    m.def(
        "scan",
        [](const MonicIntPolynomial& f, u64 upto, std::optional<ScanCursor> resume, unsigned threads) {
            ScanOptions opts;
            opts.threads = threads;
            py::gil_scoped_release release;
            return scan(f, upto, resume, opts);
        },
        py::arg("f"), py::arg("upto"), py::arg("resume") = std::nullopt, py::arg("threads") = 0);
    m.def("least_split_prime_above", &least_split_prime_above, py::arg("f"), py::arg("bound"), py::arg("limit") = 0);
    m.def(
        "sn_evidence",
        [](const MonicIntPolynomial& f, u64 budget) {
            const SnEvidence ev = sn_evidence(f, budget);
            py::dict witnesses;
            for (const auto& [kind, p] : ev.witnesses) witnesses[py::str(to_string(kind))] = p;
            py::dict d;
            d["witnesses"] = witnesses;
            d["conclusive"] = ev.conclusive;
            return d;
        },
        py::arg("f"), py::arg("prime_budget"));
    m.def("cache_write", &cache_write, py::arg("cursor"), py::arg("path"));
    m.def("cache_read", py::overload_cast<const std::filesystem::path&>(&cache_read), py::arg("path"));

    m.def("irwin_hall_cdf", [](int n, const std::string& x) { return to_string(theory::irwin_hall_cdf(n, parse_rational(x))); },
          py::arg("n"), py::arg("x"));
    m.def("v_upper", [](int n, const std::string& a) { return rational_fn(theory::v_upper, n, a); }, py::arg("n"), py::arg("a"));
    m.def("v_lower", [](int n, const std::string& a) { return rational_fn(theory::v_lower, n, a); }, py::arg("n"), py::arg("a"));
    m.def("e_density", [](int n, const std::string& a) { return rational_fn(theory::e_density, n, a); }, py::arg("n"), py::arg("a"));
    m.def(
        "piecewise_v_lower",
        [](int n) {
            py::list pieces;
            for (const auto& p : theory::piecewise_v_lower(n).pieces) {
                std::vector<std::string> coeffs;
                for (const auto& c : p.coeffs) coeffs.push_back(to_string(c));
                pieces.append(py::make_tuple(to_string(p.left), to_string(p.right), coeffs));
            }
            return pieces;
        },
        py::arg("n"));
    m.def("derivative_at_zero", [](int n) { return to_string(theory::derivative_at_zero(n)); }, py::arg("n"));

    m.def(
        "mc_volume_ratio",
        [](int n, const std::string& constraints, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
            const DomainSpec d = parse_domain(constraints);
            geometry::McEstimate e;
            {
                py::gil_scoped_release release;
                e = geometry::mc_volume_ratio(n, d, samples, seed, threads);
            }
            return estimate_dict(e);
        },
        py::arg("n"), py::arg("constraints"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 0);

    m.def(
        "empirical_pr",
        [](const ScanCursor& c, const std::string& constraints) { return stats::empirical_pr(c, parse_domain(constraints)); },
        py::arg("cursor"), py::arg("constraints"));
    m.def(
        "deviation_row",
        [](const ScanCursor& c, int m) {
            const stats::DeviationCell cell = stats::deviation_row(c, m);
            py::dict d;
            d["n"] = cell.n;
            d["m"] = cell.m;
            d["X_m"] = cell.x_m;
            d["split_count"] = cell.split_count;
            d["max_deviation"] = cell.max_deviation;
            return d;
        },
        py::arg("cursor"), py::arg("m"));
}
