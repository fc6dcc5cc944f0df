#include "wordfact/congruence.hpp"
#include "wordfact/floodsearch.hpp"
#include "wordfact/harness.hpp"
#include "wordfact/heightfactor.hpp"
#include "wordfact/hnffactor.hpp"
#include "wordfact/sympfactor.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wordfact;

namespace {

// Entries cross the boundary as decimal text, so Python ints of any size survive.
IntMatrix to_matrix(const py::sequence& rows) {
  const std::size_t n = py::len(rows);
  if (n == 0) throw std::invalid_argument("empty matrix");
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    const auto r = row.cast<py::sequence>();
    if (py::len(r) != n) throw DimensionError("matrix must be square");
    for (const auto& x : r) entries.emplace_back(py::str(py::int_(py::reinterpret_borrow<py::object>(x))).cast<std::string>());
  }
  return IntMatrix(n, std::move(entries));
}

py::int_ to_pyint(const Integer& x) {
  const std::string s = x.get_str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::list from_matrix(const IntMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.dim(); ++c) row.append(to_pyint(m(r, c)));
    rows.append(row);
  }
  return rows;
}

// pybind11 holders cannot point to const; the sets are never mutated.
using Holder = std::shared_ptr<GenSet>;
Holder hold(std::shared_ptr<const GenSet> gs) { return std::const_pointer_cast<GenSet>(std::move(gs)); }

}  // namespace

PYBIND11_MODULE(_wordfact, m) {
  m.doc() = "Exact word factorization in SL_n(Z) and Sp_2n(Z)";

  py::register_exception<HeuristicStall>(m, "HeuristicStall", PyExc_RuntimeError);

  py::class_<GenSet, Holder>(m, "GenSet")
      .def_property_readonly("name", &GenSet::name)
      .def_property_readonly("dim", &GenSet::dim)
      .def("labels",
           [](const GenSet& gs) {
             std::vector<std::string> out;
             for (std::size_t s = 0; s < gs.symbol_count(); ++s) out.push_back(gs.symbol(s).label.text());
             return out;
           })
      .def("matrix",
           [](const GenSet& gs, const std::string& label) {
             const Word w = parse_word(label, gs);
             if (w.run_count() != 1) throw std::invalid_argument("expected a single generator label");
             return from_matrix(evaluate(w, gs));
           })
      .def("__len__", &GenSet::symbol_count)
      .def("__repr__", [](const GenSet& gs) { return "<GenSet " + gs.name() + ">"; });

  m.def("genset", [](const std::string& spec) { return hold(genset_from_spec(spec)); }, py::arg("spec"),
        "Generating set from 'sl:N', 'birman:2N' or 'extended:2N'.");
  m.def("build_sl_elementary", [](std::size_t n) { return hold(build_sl_elementary(n)); }, py::arg("n"));
  m.def("build_birman", [](std::size_t n) { return hold(build_birman(n)); }, py::arg("n"));
  m.def("build_extended_symplectic", [](std::size_t n) { return hold(build_extended_symplectic(n)); },
        py::arg("n"));

  m.def("is_sl_member", [](const py::sequence& a) { return is_sl_member(to_matrix(a)); });
  m.def("is_sp_member", [](const py::sequence& a) { return is_sp_member(to_matrix(a)); });
  m.def("height_full", [](const py::sequence& a) { return to_pyint(height_full(to_matrix(a))); });
  m.def("height_offblock", [](const py::sequence& a) { return to_pyint(height_offblock(to_matrix(a))); });
  m.def("height_rowlocal",
        [](const py::sequence& a, std::size_t rows) { return to_pyint(height_rowlocal(to_matrix(a), rows)); },
        py::arg("matrix"), py::arg("rows"));

  m.def("evaluate", [](const std::string& word, const GenSet& gs) { return from_matrix(evaluate(parse_word(word, gs), gs)); },
        py::arg("word"), py::arg("genset"));
  m.def("random_word",
        [](const GenSet& gs, std::size_t length, std::uint64_t seed) {
          return format_word(random_reduced_word(gs, length, seed), gs);
        },
        py::arg("genset"), py::arg("length"), py::arg("seed"));

  m.def("hnf_factor", [](const py::sequence& a) {
    const IntMatrix e = to_matrix(a);
    return format_word(hnf_factor(e), *build_sl_elementary(e.dim()));
  });
  m.def("height_factor",
        [](const py::sequence& a, std::size_t extension_depth, bool length_weighting) {
          const IntMatrix e = to_matrix(a);
          return format_word(height_factor_sl(e, extension_depth, length_weighting), *build_sl_elementary(e.dim()));
        },
        py::arg("matrix"), py::arg("extension_depth") = 3, py::arg("length_weighting") = true);
  m.def("symplectic_factor",
        [](const py::sequence& a, const std::string& letters, bool prepass, std::size_t extension_depth) {
          const IntMatrix e = to_matrix(a);
          SymplecticOptions so;
          if (letters == "extended")
            so.letters = OutputLetters::Extended;
          else if (letters != "birman")
            throw std::invalid_argument("letters must be 'birman' or 'extended'");
          so.full_height_prepass = prepass;
          so.extension_depth = extension_depth;
          const auto res = symplectic_factor(e, so);
          py::dict out;
          out["word"] = format_word(res.word, *res.alphabet);
          out["length"] = res.word.length();
          out["det_fix_applied"] = res.report.det_fix_applied;
          out["report"] = res.report.to_json(*build_extended_symplectic(e.dim() / 2)).dump();
          return out;
        },
        py::arg("matrix"), py::arg("letters") = "birman", py::arg("prepass") = true, py::arg("extension_depth") = 3);
  m.def("flood_factor",
        [](const GenSet& gs, const py::sequence& a, std::size_t max_elements, bool minimal) -> py::object {
          const auto out = flood_factor(gs, to_matrix(a), {max_elements, minimal});
          if (out.exhausted()) return py::none();
          py::dict d;
          d["word"] = format_word(*out.word, gs);
          d["length"] = out.word->length();
          d["certified_minimal"] = out.certified_minimal;
          d["stage"] = out.stage;
          return d;
        },
        py::arg("genset"), py::arg("matrix"), py::arg("max_elements") = 1'000'000, py::arg("minimal") = true);
  m.def("congruence_factor",
        [](const py::sequence& a, const std::string& order_cap, std::uint64_t start_prime) -> py::object {
          const IntMatrix e = to_matrix(a);
          PrimeSchedule ps;
          ps.order_cap = Integer(order_cap);
          ps.start_prime = start_prime;
          const auto gs = build_sl_elementary(e.dim());
          const auto out = congruence_factor(gs, e, ps);
          if (!out.word) return py::none();
          return py::str(format_word(*out.word, *gs));
        },
        py::arg("matrix"), py::arg("order_cap") = "10000000", py::arg("start_prime") = 3);
  m.def("bench_csv",
        [](const std::string& group, std::size_t dim, std::vector<std::size_t> lengths, std::size_t samples,
           const std::vector<std::string>& algorithms, std::uint64_t seed) {
          BenchConfig cfg;
          cfg.group = group == "sp" ? GroupKind::sp_of_dim(dim) : GroupKind::sl(dim);
          cfg.lengths = std::move(lengths);
          cfg.samples = samples;
          cfg.algorithms.clear();
          for (const auto& a : algorithms) cfg.algorithms.push_back(parse_algorithm(a));
          cfg.seed = seed;
          py::gil_scoped_release release;
          return records_to_csv(cfg, bench_run(cfg));
        },
        py::arg("group"), py::arg("dim"), py::arg("lengths"), py::arg("samples"), py::arg("algorithms"),
        py::arg("seed") = 1);
}
