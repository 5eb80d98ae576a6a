// Python bindings: thin typed wrappers over the C++ core. Structured results
// come back as native dicts/lists via the shared JSON serializers, so python
// sees exactly what the CLI prints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betalab/measure_lab.hpp"
#include "betalab/param_cylinders.hpp"
#include "betalab/serialize.hpp"
#include "betalab/shift_cylinders.hpp"

namespace py = pybind11;
namespace bl = betalab;

namespace {

py::object to_py(const bl::json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

bl::Dyadic dy(const std::string& s) { return bl::to_dyadic(s); }

}  // namespace

PYBIND11_MODULE(_betalab, m) {
    m.doc() = "numerical laboratory for greedy beta-expansions";

    py::register_exception<bl::parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<bl::not_in_omega>(m, "NotInOmega", PyExc_ValueError);
    py::register_exception<bl::cap_exceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<bl::tolerance_unreachable>(m, "ToleranceUnreachable",
                                                      PyExc_RuntimeError);

    m.def("expand", [](const std::string& x, const std::string& beta, size_t n) {
        auto r = bl::expand(dy(x), dy(beta), n);
        return to_py(bl::json{{"digits", r.digits}, {"remainder", r.remainder}});
    }, py::arg("x"), py::arg("beta"), py::arg("n"),
       "greedy digits and exact remainder of x at beta");

    m.def("star", [](const std::string& beta, size_t n) {
        auto one = bl::one_expansion(dy(beta), n);
        auto star = bl::star_expansion_of_one(dy(beta), n);
        return to_py(bl::json{{"digits", one.digits},
                              {"terminated", one.terminated},
                              {"star", star.to_string()}});
    }, py::arg("beta"), py::arg("n") = 64, "expansion of 1 and its infinite form");

    m.def("admissible", [](const std::string& w, const std::string& beta) {
        return bl::is_admissible(bl::parse_word(w), dy(beta));
    }, py::arg("w"), py::arg("beta"));

    m.def("sigma", [](const std::string& beta, size_t n, bool full_only) {
        auto res = bl::enumerate_sigma(dy(beta), n);
        bl::json rows = bl::json::array();
        for (const auto& c : res.cylinders)
            if (!full_only || c.full) rows.push_back(bl::json(c));
        return to_py(bl::json{{"cylinders", rows}, {"summary", res.report}});
    }, py::arg("beta"), py::arg("n"), py::arg("full_only") = false,
       "order-n admissible words with exact scaled cylinders");

    m.def("omega", [](const std::string& x, size_t n, const std::string& lo,
                      const std::string& hi) {
        auto res = bl::enumerate_param_window(dy(x), n, dy(lo), dy(hi));
        bl::json rows = bl::json::array();
        for (const auto& c : res.cylinders) rows.push_back(bl::json(c));
        return to_py(bl::json{{"cylinders", rows}, {"nodes", res.nodes_visited}});
    }, py::arg("x"), py::arg("n"), py::arg("lo"), py::arg("hi"),
       "order-n parameter cylinders meeting the base window (lo, hi]");

    m.def("full_check_param", [](const std::string& w, const std::string& x) {
        bl::Word word = bl::parse_word(w);
        bl::Dyadic xd = dy(x);
        auto lo = bl::lower_beta(word, xd);
        auto hi = bl::upper_beta(word, xd);
        return to_py(bl::json{{"lower_is_one", lo.is_one}, {"lo", lo.beta}, {"hi", hi},
                              {"full", bl::is_full_param(word, xd)}});
    }, py::arg("w"), py::arg("x"));

    m.def("full_check_shift", [](const std::string& w, const std::string& beta) {
        bl::Word word = bl::parse_word(w);
        bl::Dyadic b = dy(beta);
        bool adm = bl::is_admissible(word, b);
        return to_py(bl::json{{"admissible", adm}, {"full", adm && bl::is_full_word(word, b)}});
    }, py::arg("w"), py::arg("beta"));

    m.def("proportion", [](const std::string& beta, const std::string& lam, size_t n_lo,
                           size_t n_hi) {
        return to_py(bl::json(bl::full_proportion_report(dy(beta), dy(lam), n_lo, n_hi)));
    }, py::arg("beta"), py::arg("lam"), py::arg("n_lo"), py::arg("n_hi"));

    m.def("phi_slice", [](const std::string& w, const std::string& x, const std::string& target,
                          const std::string& radius) {
        return to_py(bl::json(bl::phi_slice(bl::parse_word(w), dy(x), dy(target), dy(radius))));
    }, py::arg("w"), py::arg("x"), py::arg("target"), py::arg("radius"));

    m.def("structural", [](const std::string& x, size_t n, const std::string& lo,
                           const std::string& hi) {
        return to_py(bl::json(bl::structural_checks(dy(x), n, dy(lo), dy(hi))));
    }, py::arg("x"), py::arg("n"), py::arg("lo"), py::arg("hi"));

    m.def("scan_param", [](const std::string& x, const std::string& targets,
                           const std::string& phi, const std::string& lo, const std::string& hi,
                           std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                           int workers) {
        auto curve = bl::hit_scan_param(dy(x), bl::TargetSpec::parse(targets),
                                        bl::RateSpec::parse(phi), dy(lo), dy(hi), samples, nmax,
                                        seed, workers);
        return to_py(bl::json(curve));
    }, py::arg("x"), py::arg("targets"), py::arg("phi"), py::arg("lo"), py::arg("hi"),
       py::arg("samples"), py::arg("nmax"), py::arg("seed"), py::arg("workers") = 1);

    m.def("scan_recurrence", [](const std::string& beta, const std::string& a,
                                const std::string& b, const std::string& phi,
                                std::uint64_t samples, std::uint64_t nmax, std::uint64_t seed,
                                int workers) {
        bl::AffineMap L{bl::parse_rational(a), bl::parse_rational(b)};
        auto curve = bl::recurrence_scan(dy(beta), L, bl::RateSpec::parse(phi), samples, nmax,
                                         seed, workers);
        return to_py(bl::json(curve));
    }, py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("phi"), py::arg("samples"),
       py::arg("nmax"), py::arg("seed"), py::arg("workers") = 1);

    m.def("beta_star", [](const std::string& l) {
        return to_py(bl::json(bl::beta_star(bl::RateSpec::parse(l))));
    }, py::arg("l"));

    m.def("recurrence_slice", [](const std::string& w, const std::string& beta,
                                 const std::string& a, const std::string& b,
                                 const std::string& phi) {
        bl::AffineMap L{bl::parse_rational(a), bl::parse_rational(b)};
        return to_py(bl::json(
            bl::recurrence_slice(bl::parse_word(w), dy(beta), L, bl::parse_rational(phi))));
    }, py::arg("w"), py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("phi"));

    m.def("tail_sum", [](const std::string& phi, std::uint64_t m_lo, std::uint64_t n_hi) {
        return to_py(bl::json(bl::tail_sum(bl::RateSpec::parse(phi), m_lo, n_hi)));
    }, py::arg("phi"), py::arg("m"), py::arg("n"));
}
