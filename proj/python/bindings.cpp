#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "interprime/auxfamily.hpp"
#include "interprime/bohr.hpp"
#include "interprime/bounds.hpp"
#include "interprime/cli.hpp"
#include "interprime/counting.hpp"
#include "interprime/errors.hpp"
#include "interprime/intpoly.hpp"
#include "interprime/localroots.hpp"
#include "interprime/parallel.hpp"
#include "interprime/primes.hpp"
#include "interprime/wtrick.hpp"
#include "interprime/znfourier.hpp"

namespace py = pybind11;
using namespace interprime;

// mpz_class <-> Python int, through hexadecimal text
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

    bool load(handle src, bool)
    {
        if (!src || !PyLong_Check(src.ptr())) return false;
        auto text = reinterpret_borrow<object>(src).attr("__format__")("x").cast<std::string>();
        return value.set_str(text, 16) == 0;
    }

    static handle cast(const mpz_class& v, return_value_policy, handle)
    {
        if (v.fits_slong_p()) return PyLong_FromLong(v.get_si());
        return PyLong_FromString(v.get_str(16).c_str(), nullptr, 16);
    }
};
}  // namespace pybind11::detail

namespace {

py::object fraction(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return py::module_::import("fractions").attr("Fraction")(Integer(c.get_num()), Integer(c.get_den()));
}

IntPoly as_poly(const py::object& o)
{
    if (py::isinstance<IntPoly>(o)) return o.cast<IntPoly>();
    if (py::isinstance<py::str>(o)) return parse_poly(o.cast<std::string>());
    return IntPoly(o.cast<std::vector<Integer>>());
}

py::dict verdict_dict(const IntersectivityVerdict& v)
{
    py::dict d;
    d["kind"] = v.kind_name();
    d["is_proof"] = v.is_proof();
    d["prime_bound"] = v.prime_bound;
    if (v.kind == IntersectivityVerdict::Kind::NotIntersective) {
        d["witness_modulus"] = v.witness_modulus;
        d["witness_prime"] = v.witness_prime;
    }
    if (v.kind == IntersectivityVerdict::Kind::CertifiedIntersective) d["integer_root"] = v.integer_root;
    return d;
}

py::dict aux_dict(const AuxPoly& a)
{
    py::dict d;
    d["d"] = a.d;
    d["r"] = a.r;
    d["lambda"] = a.lambda;
    d["poly"] = a.poly;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Intersective polynomials, local roots, Fourier counting on Z_N and the W-trick.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NoLocalRoot>(m, "NoLocalRoot", m.attr("DomainError").ptr());

    py::class_<IntPoly>(m, "Poly")
        .def(py::init([](const py::object& o) { return as_poly(o); }), py::arg("spec"))
        .def_property_readonly("coeffs", &IntPoly::coeffs)
        .def_property_readonly("degree", &IntPoly::degree)
        .def("__call__", [](const IntPoly& f, const Integer& x) { return f(x); })
        .def("__str__", &IntPoly::to_string)
        .def("__repr__", [](const IntPoly& f) { return "Poly(" + f.to_list() + ")"; })
        .def("to_list", &IntPoly::to_list)
        .def("derivative", [](const IntPoly& f) { return derivative(f); })
        .def(py::self == py::self)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def("__hash__", [](const IntPoly& f) { return py::hash(py::str(f.to_list())); });
    py::implicitly_convertible<py::str, IntPoly>();

    m.def("parse_poly", [](const std::string& s) { return parse_poly(s); }, py::arg("text"));
    m.def("content", [](const py::object& f) { return content(as_poly(f)); });
    m.def("discriminant", [](const py::object& f) { return discriminant(as_poly(f)); });
    m.def("semidiscriminant", [](const py::object& f) { return semidiscriminant(as_poly(f)); });
    m.def("growth_bounds", [](const py::object& f) {
        auto g = growth_bounds(as_poly(f));
        return py::make_tuple(g.leading, fraction(g.bound));
    });
    m.def("squarefree_decomposition", [](const py::object& f) {
        auto dec = squarefree_decomposition(as_poly(f));
        py::list factors;
        for (const auto& x : dec.factors) factors.append(py::make_tuple(x.poly, x.exponent));
        return py::make_tuple(dec.unit, factors);
    });

    m.def("roots_mod", [](const py::object& f, const Integer& mod) { return roots_mod(as_poly(f), mod); });
    m.def("lift_roots", [](const py::object& f, std::uint64_t p, unsigned alpha) { return lift_roots(as_poly(f), p, alpha); });
    m.def("integer_roots", [](const py::object& f) { return integer_roots(as_poly(f)); });
    m.def("select_padic_root", [](const py::object& f, std::uint64_t p, unsigned precision) {
        auto c = select_padic_root(as_poly(f), p, precision);
        return py::make_tuple(c.digits, c.multiplicity);
    });
    m.def("check_intersective", [](const py::object& f, std::uint64_t bound) {
        return verdict_dict(check_intersective(as_poly(f), bound));
    }, py::arg("h"), py::arg("prime_bound") = 10000);

    m.def("aux_poly", [](const py::object& f, std::uint64_t d) { return aux_dict(aux_poly(as_poly(f), d)); });
    m.def("verify_lemma1", [](const py::object& f, std::uint64_t d, std::uint64_t q) {
        auto rep = verify_lemma1(as_poly(f), d, q);
        py::list items;
        for (const auto& it : rep.items) items.append(py::make_tuple(it.pass, it.detail));
        return items;
    });

    m.def("primes_upto", [](std::uint64_t n) { return sieve(n).primes(); });
    m.def("chen_primes_upto", [](std::uint64_t n) {
        auto all = ChenTable(sieve(n + 2)).chen_primes();
        all.erase(std::upper_bound(all.begin(), all.end(), n), all.end());
        return all;
    });
    m.def("classify_chen", [](std::uint64_t p) { return classify_chen(p, sieve(p + 2)).describe(); });

    m.def("dft", [](const std::vector<Complex>& f) { return dft(ZnFun::time(f)).values(); });
    m.def("idft", [](const std::vector<Complex>& g) { return idft(ZnFun(g, Domain::Frequency)).values(); });
    m.def("build_S", [](const py::object& f, std::uint64_t n) { return build_S(as_poly(f), n).real(); });
    m.def("moment_by_counting", [](const py::object& f, std::uint64_t n, unsigned s) {
        auto mc = moment_by_counting(as_poly(f), n, s);
        return py::make_tuple(mc.weighted_solutions, fraction(mc.exact));
    });
    m.def("moment_fft", [](const py::object& f, std::uint64_t n, unsigned s) {
        return moment_power(dft(build_S(as_poly(f), n)), s);
    });

    m.def("smooth_decompose", [](const std::vector<double>& f, double eps) {
        auto d = smooth_decompose(ZnFun::time_real(f), eps);
        const auto& g = d.diagnostics;
        py::dict out;
        out["f1"] = d.f1.real();
        out["f2"] = d.f2.real();
        out["spectrum"] = d.spectrum.members;
        out["bohr"] = d.bohr.members;
        out["mean_gap"] = g.mean_gap;
        out["f2_sup"] = g.f2_sup;
        out["max_excess"] = std::max(g.max_excess_f1, g.max_excess_f2);
        return out;
    });

    m.def("difference_pairs", [](const std::vector<std::int64_t>& a, const py::object& f) {
        std::uint64_t n = 0;
        for (auto x : a) n = std::max<std::uint64_t>(n, x > 0 ? static_cast<std::uint64_t>(x) : 0);
        py::list out;
        for (const auto& w : difference_pairs(IntSet(n, a), as_poly(f))) out.append(py::make_tuple(w.a, w.a_prime, w.n));
        return out;
    });
    m.def("weighted_R", [](const std::vector<std::int64_t>& a, const py::object& f) {
        std::uint64_t n = 0;
        for (auto x : a) n = std::max<std::uint64_t>(n, x > 0 ? static_cast<std::uint64_t>(x) : 0);
        return weighted_R(IntSet(n, a), as_poly(f)).total;
    });
    m.def("extremal_dff", [](const py::object& f, std::uint64_t n, const std::string& mode) {
        auto r = extremal_dff(as_poly(f), n, mode == "greedy" ? DffMode::Greedy : DffMode::Exact);
        return py::make_tuple(r.size, r.witness.members());
    }, py::arg("h"), py::arg("N"), py::arg("mode") = "exact");

    m.def("run_experiment", [](const py::object& f, std::uint64_t n, std::uint64_t t, const std::string& source,
                               const std::optional<std::string>& filter) {
        ExperimentConfig cfg;
        cfg.h = as_poly(f);
        cfg.n = n;
        cfg.t = t;
        if (source == "chen")
            cfg.source = SourceKind::ChenPrimes;
        else if (source != "primes")
            throw DomainError("source must be 'primes' or 'chen'");
        if (filter) cfg.filter = parse_filter(*filter);
        ExperimentReport rep;
        {
            py::gil_scoped_release release;
            rep = run_experiment(cfg);
        }
        py::dict d;
        d["W"] = rep.w;
        d["lambda"] = rep.lambda;
        d["r"] = rep.r;
        d["hW"] = rep.hw;
        d["b"] = rep.b;
        d["X_size"] = rep.x_size;
        py::list triples;
        for (const auto& tr : rep.triples) triples.append(py::make_tuple(tr.p1, tr.p2, tr.n));
        d["triples"] = triples;
        d["verified"] = rep.verified;
        return d;
    }, py::arg("h"), py::arg("N"), py::arg("t") = 2, py::arg("source") = "primes", py::arg("filter") = py::none());

    m.def("profile", [](int k) {
        auto p = profile(k);
        py::dict d;
        d["k"] = p.k;
        d["mu"] = p.mu;
        d["s0"] = p.s0;
        d["rho"] = p.rho_exact ? fraction(*p.rho_exact) : py::object(py::float_(p.rho));
        d["kappa1"] = p.kappa1_exact ? fraction(*p.kappa1_exact) : py::object(py::float_(p.kappa1));
        d["kappa2"] = fraction(p.kappa2);
        d["q_range"] = py::make_tuple(fraction(p.q_lower), fraction(p.q_upper));
        return d;
    });
    m.def("lucier_c", &lucier_c, py::arg("k"), py::arg("delta"), py::arg("c1") = 1.0);
    m.def("theta", &theta, py::arg("x"), py::arg("k"));

    m.def("set_threads", &set_thread_count);
    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
    m.attr("__version__") = cli::version();
}
