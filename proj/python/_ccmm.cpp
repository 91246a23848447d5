// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ccmm/cli.hpp"
#include "ccmm/constructions.hpp"
#include "ccmm/engine.hpp"
#include "ccmm/exponent.hpp"
#include "ccmm/realization.hpp"
#include "ccmm/spectrum.hpp"

namespace py = pybind11;
using namespace ccmm;

namespace {

py::object fraction_type() { return py::module_::import("fractions").attr("Fraction"); }

// Accepts nested lists of int, Fraction or str ("p/q").
QMatrix to_qmatrix(const py::sequence& rows) {
  const std::size_t r = py::len(rows);
  if (r == 0) throw std::invalid_argument("matrix has no rows");
  const std::size_t c = py::len(rows[0]);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const py::sequence row = rows[i];
    if (py::len(row) != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) {
      const std::string s = py::str(row[j]);
      m(i, j) = mpq_class(s);
      m(i, j).canonicalize();
    }
  }
  return m;
}

py::list from_qmatrix(const QMatrix& m) {
  const auto frac = fraction_type();
  py::list out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols; ++j) row.append(frac(m(i, j).get_str()));
    out.append(row);
  }
  return out;
}

BoolMatrix to_bool_matrix(const py::sequence& rows) {
  const QMatrix q = to_qmatrix(rows);
  return to_bool(q);
}

py::list from_bool_matrix(const BoolMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols; ++j) row.append(int(m(i, j)));
    out.append(row);
  }
  return out;
}

py::tuple report(Verdict v, const std::string& detail) { return py::make_tuple(v == Verdict::pass, detail); }

}  // namespace

PYBIND11_MODULE(_ccmm, m) {
  m.doc() = "Coherent configurations and matrix multiplication";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CapExceeded>(m, "CapExceeded", error.ptr());
  py::register_exception<Rejection>(m, "Rejection", error.ptr());

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("name", &FiniteGroup::name)
      .def("multiply", &FiniteGroup::multiply)
      .def("inverse", &FiniteGroup::inverse)
      .def("is_abelian", &FiniteGroup::is_abelian)
      .def("__repr__", [](const FiniteGroup& g) { return "FiniteGroup('" + g.name() + "')"; });
  m.def("parse_group", [](const std::string& s) { return parse_group(s); });
  m.def("verify_group", [](const FiniteGroup& g) {
    const auto r = verify_group(g);
    return py::make_tuple(to_string(r.verdict), r.detail);
  });
  m.def("conjugacy_class_count", [](const FiniteGroup& g) { return conjugacy_classes(g).count; });
  m.def("count_conjugacy_wreath", [](unsigned n, const FiniteGroup& h) {
    return py::int_(py::str(count_conjugacy_wreath(n, h).get_str()));
  });

  py::class_<GroupAction>(m, "GroupAction")
      .def_property_readonly("points", &GroupAction::points)
      .def_property_readonly("name", &GroupAction::name)
      .def("act", &GroupAction::act);
  m.def("parse_action", [](const std::string& s) { return parse_action(s); });

  py::class_<CoherentConfiguration>(m, "CoherentConfiguration")
      .def_static(
          "from_class_matrix",
          [](std::uint32_t n, std::uint32_t r, std::vector<ClassId> matrix) {
            return CoherentConfiguration::from_class_matrix(n, r, std::move(matrix));
          },
          py::arg("n"), py::arg("r"), py::arg("matrix"))
      .def_property_readonly("points", &CoherentConfiguration::points)
      .def_property_readonly("rank", &CoherentConfiguration::rank)
      .def("cls", &CoherentConfiguration::cls)
      .def_property_readonly("class_matrix", &CoherentConfiguration::class_matrix)
      .def("p", &CoherentConfiguration::p)
      .def("star", &CoherentConfiguration::star)
      .def("class_size", &CoherentConfiguration::class_size)
      .def("is_commutative", &CoherentConfiguration::is_commutative)
      .def("is_symmetric", &CoherentConfiguration::is_symmetric)
      .def("is_association_scheme", &CoherentConfiguration::is_association_scheme)
      .def("fibers", [](const CoherentConfiguration& c) { return c.fibers().cells; })
      .def("adjacency_matrix",
           [](const CoherentConfiguration& c, ClassId i) {
             const auto a = c.adjacency_matrix(i);
             py::list out;
             for (Point x = 0; x < c.points(); ++x)
               out.append(std::vector<int>(a.begin() + x * c.points(), a.begin() + (x + 1) * c.points()));
             return out;
           })
      .def("intersection_numbers",
           [](const CoherentConfiguration& c) {
             py::list out;
             for (const auto& e : c.intersection_numbers().entries()) out.append(py::make_tuple(e.i, e.j, e.k, e.p));
             return out;
           })
      .def("to_text",
           [](const CoherentConfiguration& c) {
             std::ostringstream s;
             write_ccfg(s, c);
             return s.str();
           })
      .def_static("from_text",
                  [](const std::string& text) {
                    std::istringstream s(text);
                    return read_ccfg(s);
                  })
      .def("__eq__", [](const CoherentConfiguration& a, const CoherentConfiguration& b) { return a == b; })
      .def("__repr__", [](const CoherentConfiguration& c) {
        return "CoherentConfiguration(points=" + std::to_string(c.points()) + ", rank=" + std::to_string(c.rank()) +
               ")";
      });

  m.def("group_scheme", [](const FiniteGroup& g) { return group_scheme(g); });
  m.def("schurian", [](const GroupAction& a) { return schurian(a); });
  m.def("group_association_scheme", [](const FiniteGroup& g) { return group_association_scheme(g); });
  m.def("trivial_configuration", &trivial_configuration);
  m.def("direct_product", [](const CoherentConfiguration& a, const CoherentConfiguration& b) {
    return direct_product(a, b);
  });
  m.def("symmetric_power", [](const CoherentConfiguration& c, unsigned k) { return symmetric_power(c, k); });
  m.def(
      "fusion",
      [](const CoherentConfiguration& c, const FusionPartition& blocks) {
        auto r = fusion(c, blocks);
        if (!r.config) throw Rejection("fusion is not coherent", r.report.detail);
        return *r.config;
      },
      "Fuse classes; raises Rejection with the violated axiom if the result is not coherent.");

  py::class_<Realization>(m, "Realization")
      .def(py::init<>())
      .def_readwrite("l", &Realization::l)
      .def_readwrite("m", &Realization::m)
      .def_readwrite("n", &Realization::n)
      .def_readwrite("alpha", &Realization::alpha)
      .def_readwrite("beta", &Realization::beta)
      .def_readwrite("gamma", &Realization::gamma)
      .def_property_readonly("dims", [](const Realization& r) { return py::make_tuple(r.l, r.m, r.n); })
      .def("__repr__", [](const Realization& r) {
        return "Realization(<" + std::to_string(r.l) + "," + std::to_string(r.m) + "," + std::to_string(r.n) + ">)";
      });
  m.def("verify_realization", [](const CoherentConfiguration& c, const Realization& r) {
    const auto rep = verify_realization(c, r);
    return report(rep.verdict, rep.detail);
  });
  m.def("verify_simultaneous", [](const CoherentConfiguration& c, const SimultaneousRealization& f) {
    const auto rep = verify_simultaneous(c, f);
    return report(rep.verdict, rep.detail);
  });
  m.def("fibers_realization", &fibers_realization);
  m.def("tpp_verify", &tpp_verify, py::arg("group"), py::arg("s"), py::arg("t"), py::arg("u"));
  m.def("diagonal_example", [](std::uint32_t n, const std::vector<std::uint32_t>& s) {
    auto d = diagonal_example(n, s);
    return py::make_tuple(std::move(d.config), std::move(d.family));
  });
  m.def("sympow_realization", [](const CoherentConfiguration& c, const SimultaneousRealization& f) {
    auto [cfg, r] = sympow_realization(c, f);
    return py::make_tuple(std::move(cfg), std::move(r));
  });
  m.def(
      "grp_as_realization",
      [](const FiniteGroup& h, const std::vector<std::array<std::vector<Element>, 3>>& triples) {
        auto g = grp_as_realization(TripleFamily{h, triples});
        return py::make_tuple(std::move(g.config), std::move(g.realization));
      },
      py::arg("group"), py::arg("triples"));

  m.def(
      "character_degrees",
      [](const CoherentConfiguration& c, std::uint64_t seed) {
        SpectralOptions o;
        o.seed = seed;
        const auto p = character_degrees(c, o);
        return py::make_tuple(p.degrees, p.residual);
      },
      py::arg("config"), py::arg("seed") = 0);

  m.def("embedded_matmul", [](const CoherentConfiguration& c, const Realization& r, const py::sequence& a,
                              const py::sequence& b) {
    const auto w = WeightedMatMul::build(c, r);
    const QMatrix qa = to_qmatrix(a), qb = to_qmatrix(b);
    return from_qmatrix(w.weights_factor() ? embedded_matmul(w, qa, qb) : weighted_product(w, qa, qb));
  });
  m.def(
      "boolean_matmul",
      [](const CoherentConfiguration& c, const Realization& r, const py::sequence& a, const py::sequence& b,
         std::uint64_t seed, unsigned reps) {
        const auto w = WeightedMatMul::build(c, r);
        return from_bool_matrix(boolean_matmul(w, to_bool_matrix(a), to_bool_matrix(b), {seed, reps, false}));
      },
      py::arg("config"), py::arg("realization"), py::arg("a"), py::arg("b"), py::arg("seed"),
      py::arg("repetitions") = 20);
  m.def(
      "theorem32_check",
      [](std::uint32_t n, std::uint64_t seed, std::optional<std::vector<Triple>> s) {
        const auto r = theorem32_check(n, s ? *s : triangle_free_set(n), seed);
        return report(r.pass ? Verdict::pass : Verdict::fail, r.detail);
      },
      py::arg("n"), py::arg("seed"), py::arg("s") = py::none());
  m.def("triangle_free_set", &triangle_free_set);

  py::class_<ExponentBound>(m, "ExponentBound")
      .def_readonly("value", &ExponentBound::value)
      .def_readonly("flags", &ExponentBound::flags)
      .def_readonly("assumptions", &ExponentBound::assumptions)
      .def_property_readonly("kind",
                             [](const ExponentBound& b) { return b.kind == BoundKind::omega_s ? "omega_s" : "omega"; })
      .def("replay", [](const ExponentBound& b) { return replay(b); })
      .def("__str__", [](const ExponentBound& b) { return format_bound(b); });
  m.def("omega_s_commutative", &omega_s_commutative);
  m.def("solve_asi", &solve_asi);
  m.def("geometric_mean_bound", &geometric_mean_bound);
  m.def("omega_s_noncommutative", &omega_s_noncommutative, py::arg("l"), py::arg("m"), py::arg("n"),
        py::arg("degrees"), py::arg("assumed_omega") = 2.3727);
  m.def("omega_from_omega_s", &omega_from_omega_s);
  m.def("cksu_formula", &cksu_formula);
  m.def("round_up", &round_up);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = cli::run(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "");
}
