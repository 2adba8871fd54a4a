// Python bindings for the main operations: ring construction, exact matrix
// arithmetic and rank, affine matrix spaces, classification, and censuses.
// Values cross the boundary as opaque handles; file formats cross as the same
// JSON text the command-line tool reads and writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "skewrank/random.hpp"
#include "skewrank/serialize.hpp"

namespace py = pybind11;
using namespace skewrank;

namespace {

struct PyRing {
  RingPtr r;
};
struct PyMatrix {
  Matrix m;
};
struct PySpace {
  AffineMatrixSpace s;
};

PyMatrix require_same(const PyRing& ring, PyMatrix m) {
  require_same_ring(ring.r, m.m.ring());
  return m;
}

py::object opt_matrix(const std::optional<Matrix>& m) {
  if (!m) return py::none();
  return py::cast(PyMatrix{*m});
}

std::string census_json(const CensusReport& rep) { return dump_json(census_report_to_json(rep)); }

CensusOptions census_options(std::uint64_t cap, int workers, std::uint64_t trials,
                             std::optional<std::uint64_t> seed) {
  CensusOptions opt;
  opt.cap = cap;
  opt.workers = workers;
  opt.trials = trials;
  opt.seed = seed;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "exact rank, classification, and censuses for matrix spaces over division rings";

  py::register_exception<Error>(mod, "SkewrankError");

  py::class_<PyRing>(mod, "Ring")
      .def_static(
          "gf", [](std::int64_t p, int k) { return PyRing{DivisionRingSpec::gf(p, k)}; },
          py::arg("p"), py::arg("k") = 1)
      .def_static("quaternions", [] { return PyRing{DivisionRingSpec::quaternions()}; })
      .def_static("from_json",
                  [](const std::string& text) { return PyRing{ring_from_json(parse_json_text(text))}; })
      .def("to_json", [](const PyRing& a) { return dump_json(ring_to_json(a.r)); })
      .def("brief", [](const PyRing& a) { return ring_brief(a.r); })
      .def_property_readonly("dim", [](const PyRing& a) { return a.r->dim(); })
      .def_property_readonly("finite", [](const PyRing& a) { return a.r->finite(); })
      .def_property_readonly("order",
                             [](const PyRing& a) -> std::optional<std::uint64_t> {
                               if (!a.r->finite()) return std::nullopt;
                               return a.r->order();
                             })
      .def("opposite", [](const PyRing& a) { return PyRing{a.r->opposite()}; })
      .def("__eq__", [](const PyRing& a, const PyRing& b) { return a.r->spec_equal(*b.r); })
      .def("__repr__", [](const PyRing& a) { return "Ring(" + ring_brief(a.r) + ")"; });

  py::class_<PyMatrix>(mod, "Matrix")
      .def_static(
          "zeros", [](const PyRing& ring, int n, int p) { return PyMatrix{Matrix(ring.r, n, p)}; },
          py::arg("ring"), py::arg("n"), py::arg("p"))
      .def_static(
          "identity", [](const PyRing& ring, int n) { return PyMatrix{Matrix::identity(ring.r, n)}; },
          py::arg("ring"), py::arg("n"))
      .def_static(
          "from_json",
          [](const PyRing& ring, int n, int p, const std::string& text) {
            return PyMatrix{matrix_from_json(ring.r, n, p, parse_json_text(text))};
          },
          py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("text"))
      .def("to_json", [](const PyMatrix& a) { return dump_json(matrix_to_json(a.m)); })
      .def_property_readonly("rows", [](const PyMatrix& a) { return a.m.rows(); })
      .def_property_readonly("cols", [](const PyMatrix& a) { return a.m.cols(); })
      .def("rank", [](const PyMatrix& a) { return rank(a.m); })
      .def("__add__", [](const PyMatrix& a, const PyMatrix& b) { return PyMatrix{mat_add(a.m, b.m)}; })
      .def("__sub__", [](const PyMatrix& a, const PyMatrix& b) { return PyMatrix{mat_sub(a.m, b.m)}; })
      .def("__mul__", [](const PyMatrix& a, const PyMatrix& b) { return PyMatrix{mat_mul(a.m, b.m)}; })
      .def("__eq__", [](const PyMatrix& a, const PyMatrix& b) { return a.m == b.m; })
      .def("__repr__", [](const PyMatrix& a) {
        return "Matrix(" + std::to_string(a.m.rows()) + "x" + std::to_string(a.m.cols()) + " over " +
               ring_brief(a.m.ring()) + ")";
      });

  mod.def("inverse", [](const PyMatrix& a) { return PyMatrix{inverse(a.m)}; });
  mod.def("transpose_op", [](const PyMatrix& a) { return PyMatrix{transpose_op(a.m)}; });
  mod.def("regular_rep", [](const PyMatrix& a) { return PyMatrix{regular_rep(a.m)}; });
  mod.def("normal_form", [](const PyMatrix& a) {
    RankCertificate c = normal_form(a.m);
    return py::make_tuple(c.r, PyMatrix{c.P}, PyMatrix{c.P_inv}, PyMatrix{c.Q}, PyMatrix{c.Q_inv});
  });
  mod.def(
      "random_matrix",
      [](std::uint64_t seed, const PyRing& ring, int rows, int cols) {
        Rng rng(seed);
        return PyMatrix{random_matrix(rng, ring.r, rows, cols)};
      },
      py::arg("seed"), py::arg("ring"), py::arg("rows"), py::arg("cols"));
  mod.def(
      "extraction_predicate", [](const PyMatrix& a, int r) { return extraction_predicate(a.m, r); },
      py::arg("matrix"), py::arg("r"));

  py::class_<PySpace>(mod, "Space")
      .def_static("from_json",
                  [](const std::string& text) { return PySpace{space_from_json(parse_json_text(text))}; })
      .def_static(
          "reduce",
          [](const PyRing& ring, const PyMatrix& offset, const std::vector<PyMatrix>& gens) {
            std::vector<Matrix> g;
            g.reserve(gens.size());
            for (const PyMatrix& x : gens) g.push_back(require_same(ring, x).m);
            return PySpace{AffineMatrixSpace::reduce(require_same(ring, offset).m, g)};
          },
          py::arg("ring"), py::arg("offset"), py::arg("generators"))
      .def("to_json", [](const PySpace& a) { return dump_json(space_to_json(a.s)); })
      .def_property_readonly("n", [](const PySpace& a) { return a.s.n(); })
      .def_property_readonly("p", [](const PySpace& a) { return a.s.p(); })
      .def_property_readonly("dim", [](const PySpace& a) { return a.s.dim_f(); })
      .def_property_readonly("linear", [](const PySpace& a) { return a.s.linear(); })
      .def("contains", [](const PySpace& a, const PyMatrix& m) { return a.s.contains(m.m); })
      .def("point_count", [](const PySpace& a) { return a.s.point_count(); })
      .def("point", [](const PySpace& a, std::uint64_t t) { return PyMatrix{a.s.point(t)}; })
      .def("max_rank",
           [](const PySpace& a) {
             MaxRankResult mr = max_rank(a.s);
             return py::make_tuple(mr.rank, PyMatrix{mr.witness},
                                   mr.verdict == Verdict::Proven ? "proven" : "sampled");
           })
      .def("__eq__", [](const PySpace& a, const PySpace& b) { return a.s == b.s; })
      .def("__repr__", [](const PySpace& a) {
        return "Space(" + std::to_string(a.s.n()) + "x" + std::to_string(a.s.p()) + ", dim " +
               std::to_string(a.s.dim_f()) + " over " + ring_brief(a.s.ring()) + ")";
      });

  mod.def(
      "compression",
      [](int s, int t, int n, int p, const PyRing& ring) {
        return PySpace{compression(s, t, n, p, ring.r)};
      },
      py::arg("s"), py::arg("t"), py::arg("n"), py::arg("p"), py::arg("ring"));
  mod.def("u2_space", [] { return PySpace{u2_space()}; });

  mod.def(
      "classify",
      [](const PySpace& s, int r) {
        ClassificationResult res = classify(s.s, r);
        py::dict out;
        out["tag"] = tag_string(res.tag);
        out["P"] = opt_matrix(res.p);
        out["Q"] = opt_matrix(res.q);
        out["witness"] = opt_matrix(res.witness);
        return out;
      },
      py::arg("space"), py::arg("r"));

  mod.def(
      "census_bound",
      [](const PyRing& ring, int n, int p, int r, std::uint64_t cap, int workers,
         std::uint64_t trials, std::optional<std::uint64_t> seed) {
        return census_json(verify_bound(ring.r, n, p, r, census_options(cap, workers, trials, seed)));
      },
      py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("r"), py::arg("cap") = 100000000ULL,
      py::arg("workers") = 1, py::arg("trials") = 0, py::arg("seed") = std::nullopt);
  mod.def(
      "census_extremal",
      [](const PyRing& ring, int n, int p, int r, std::uint64_t cap, int workers) {
        return census_json(classify_extremal(ring.r, n, p, r, census_options(cap, workers, 0, {})));
      },
      py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("r"), py::arg("cap") = 100000000ULL,
      py::arg("workers") = 1);
  mod.def(
      "census_corollary",
      [](const PyRing& ring, int n, int p, int r, std::uint64_t cap, int workers) {
        return census_json(corollary_census(ring.r, n, p, r, census_options(cap, workers, 0, {})));
      },
      py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("r"), py::arg("cap") = 100000000ULL,
      py::arg("workers") = 1);
}
