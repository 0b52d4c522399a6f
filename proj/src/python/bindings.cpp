#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubic/class_numbers.hpp"
#include "cubic/commands.hpp"
#include "cubic/errors.hpp"
#include "cubic/serialize.hpp"
#include "cubic/units.hpp"

namespace py = pybind11;
using namespace cubic;

namespace {

py::object py_int(const Int& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Int to_int(const py::handle& h) { return Int(py::str(h).cast<std::string>()); }

Rational to_rational(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational(to_int(h));
    return parse_real(py::str(h).cast<std::string>());
}

py::object to_py(const json& j) {
    switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
        py::list l;
        for (const auto& e : j) l.append(to_py(e));
        return std::move(l);
    }
    default: {
        py::dict d;
        for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
        return std::move(d);
    }
    }
}

CubicPolynomial to_poly(const std::vector<py::object>& a) {
    if (a.size() != 3) throw InvalidInput("expected (a1, a2, a3) for x^3 + a1 x^2 + a2 x + a3");
    return {to_int(a[0]), to_int(a[1]), to_int(a[2])};
}

PrimeSet to_primes(const std::vector<std::uint64_t>& ps) { return PrimeSet(ps); }

Census census_for(const Rational& x, const std::vector<std::uint64_t>& primes, unsigned workers) {
    CensusOptions o;
    o.x = x;
    o.S = primes;
    o.workers = workers;
    return run_census(o);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orders in complex cubic fields counted by regulator";

    auto base = py::register_exception<Error>(m, "CubicError");
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<UnsupportedSignature>(m, "UnsupportedSignature", base.ptr());
    py::register_exception<StaleCache>(m, "StaleCache", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());

    py::class_<CubicField>(m, "Field")
        .def_property_readonly("poly", [](const CubicField& F) {
            return py::make_tuple(py_int(F.poly.a1), py_int(F.poly.a2), py_int(F.poly.a3));
        })
        .def_property_readonly("d_K", [](const CubicField& F) { return py_int(F.d_K); })
        .def_property_readonly("index", [](const CubicField& F) { return py_int(F.k); })
        .def_property_readonly("key", &CubicField::key)
        .def("to_dict", [](const CubicField& F) { return to_py(field_json(F)); })
        .def("__repr__", [](const CubicField& F) { return "<Field " + F.key() + ">"; });

    m.def("discriminant", [](const std::vector<py::object>& a) { return py_int(discriminant(to_poly(a))); },
          py::arg("poly"));
    m.def("maximal_order", [](const std::vector<py::object>& a) { return maximal_order(to_poly(a)); },
          py::arg("poly"), "Field of x^3 + a1 x^2 + a2 x + a3 with its integral basis.");
    m.def("enumerate_fields", [](const py::object& X) {
        auto fs = enumerate_fields(to_int(X));
        return fs;
    }, py::arg("X"), "One field per isomorphism class with |d_K| <= X.");
    m.def("isomorphic", &isomorphic);

    m.def("splitting_type", [](const CubicField& F, std::uint64_t p) { return splitting_type(F, p).pairs; },
          py::arg("field"), py::arg("p"));
    m.def("lambda_S", [](const CubicField& F, const std::vector<std::uint64_t>& primes) {
        return lambda(F, to_primes(primes));
    }, py::arg("field"), py::arg("primes") = std::vector<std::uint64_t>{2, 3});
    m.def("density_diagnostic", [](const CubicField& F, std::uint64_t N) {
        return static_cast<double>(to_ld(density_diagnostic(F, N)));
    });

    m.def("fundamental_unit", [](const CubicField& F) { return to_py(unit_json(fundamental_unit(F))); },
          py::arg("field"));
    m.def("class_number", [](const CubicField& F) { return class_number_maximal(F).h; }, py::arg("field"));
    m.def("order_class_number", [](const CubicField& F, const std::vector<std::vector<py::object>>& rows) {
        std::vector<Vec3> v;
        for (const auto& r : rows) {
            if (r.size() != 3) throw InvalidInput("order rows need three coordinates");
            v.push_back({to_int(r[0]), to_int(r[1]), to_int(r[2])});
        }
        Order O = make_order(F.table, hnf(v));
        UnitData u = fundamental_unit(F);
        ModuleClassSet mc = module_class_number(F, O, u, class_number_maximal(F));
        py::dict d;
        d["h"] = mc.h;
        d["picard_sum"] = mc.picard_sum;
        d["all_invertible"] = mc.all_invertible;
        d["conductor_index"] = py_int(O.f);
        return d;
    }, py::arg("field"), py::arg("rows"),
       "h(O) for the order spanned by `rows` (integral-basis coordinates).");

    m.def("li", [](double x) { return static_cast<double>(li(x)); });

    py::class_<Census>(m, "Census")
        .def_property_readonly("fields_total", [](const Census& c) { return c.fields_total; })
        .def_property_readonly("fields_in_CS", [](const Census& c) { return c.fields_in_CS; })
        .def("records", [](const Census& c) {
            py::list l;
            for (const auto& r : c.records) l.append(to_py(record_json(r)));
            return l;
        })
        .def("pi_S", [](const Census& c, const py::object& x) { return pi_S(c.records, to_rational(x)).certain; })
        .def("report", [](const Census& c, const std::vector<py::object>& grid) {
            std::vector<Rational> g;
            for (const auto& x : grid) g.push_back(to_rational(x));
            std::sort(g.begin(), g.end());
            return report(c, g).csv();
        })
        .def("zeta", [](const Census& c, std::complex<double> s, double cutoff) {
            auto z = zeta_partial(c.records, {s.real(), s.imag()}, cutoff);
            return std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        })
        .def("log_derivative_residual", [](const Census& c, std::complex<double> s, double cutoff) {
            return static_cast<double>(zeta_log_derivative(c.records, {s.real(), s.imag()}, cutoff).residual);
        });

    m.def("census", [](const py::object& x, const std::vector<std::uint64_t>& primes, unsigned workers) {
        Rational xv = to_rational(x);
        py::gil_scoped_release nogil;
        return census_for(xv, primes, workers);
    }, py::arg("x"), py::arg("primes") = std::vector<std::uint64_t>{2, 3}, py::arg("workers") = 1);

    m.def("analyze", [](const std::vector<py::object>& a, const std::vector<std::uint64_t>& primes) {
        return cmd_analyze(to_poly(a), to_primes(primes));
    }, py::arg("poly"), py::arg("primes") = std::vector<std::uint64_t>{2, 3});

    m.def("count", [](const std::string& cache_dir, const std::string& grid, const std::vector<std::uint64_t>& primes) {
        Config cfg;
        cfg.S = to_primes(primes);
        cfg.grid = parse_grid(grid);
        py::gil_scoped_release nogil;
        Cache cache(cache_dir);
        return cmd_count(cache, cfg).csv;
    }, py::arg("cache_dir"), py::arg("grid"), py::arg("primes") = std::vector<std::uint64_t>{2, 3},
       "Cached count, same CSV as the command-line tool.");
}
