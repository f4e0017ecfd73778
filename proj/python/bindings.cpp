#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlogic/blocks.hpp"
#include "qlogic/bohr.hpp"
#include "qlogic/cli.hpp"
#include "qlogic/documents.hpp"
#include "qlogic/error.hpp"
#include "qlogic/frames.hpp"
#include "qlogic/projection.hpp"
#include "qlogic/worked_example.hpp"

namespace py = pybind11;
using namespace qlogic;

namespace {

std::vector<std::string> labels_of(const FiniteOrtholattice& L, const ElementSet& s) {
  std::vector<std::string> out;
  for (auto x : members_of(s)) out.push_back(L.label(x));
  return out;
}

py::dict classify_dict(const FiniteOrtholattice& L) {
  const auto r = classify(L);
  py::dict d;
  d["lattice"] = r.is_lattice;
  d["orthocomplemented"] = r.is_orthocomplemented;
  d["orthomodular"] = r.is_orthomodular;
  d["distributive"] = r.is_distributive;
  d["boolean"] = r.is_boolean;
  return d;
}

std::vector<std::pair<std::string, std::vector<std::string>>> blocks_list(const LatticePtr& L,
                                                                          bool maximal) {
  const auto P = enumerate_blocks(L, maximal ? BlockMode::Maximal : BlockMode::All);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& b : P.blocks()) out.emplace_back(b.name, labels_of(*L, b.carrier));
  return out;
}

}  // namespace

PYBIND11_MODULE(_qlogic, m) {
  m.doc() = "Finite orthomodular lattices, Boolean blocks, section algebras and projections";

  py::register_exception<Error>(m, "QlogicError", PyExc_ValueError);

  py::class_<FiniteOrtholattice, std::shared_ptr<FiniteOrtholattice>>(m, "Lattice")
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<FiniteOrtholattice>(lattice_from_json(parse_json(text)));
                  })
      .def_static("power_set", [](std::size_t n) { return std::make_shared<FiniteOrtholattice>(power_set_lattice(n)); })
      .def_static("mo", [](std::size_t k) { return std::make_shared<FiniteOrtholattice>(mo_lattice(k)); })
      .def_static("chain", [](std::size_t n) { return std::make_shared<FiniteOrtholattice>(chain_lattice(n)); })
      .def_static("worked_example",
                  [] { return std::const_pointer_cast<FiniteOrtholattice>(hasse_example()); })
      .def("__len__", &FiniteOrtholattice::size)
      .def_property_readonly("labels", &FiniteOrtholattice::labels)
      .def("id", &FiniteOrtholattice::id)
      .def("leq", &FiniteOrtholattice::leq)
      .def("meet", &FiniteOrtholattice::meet)
      .def("join", &FiniteOrtholattice::join)
      .def("perp", &FiniteOrtholattice::perp)
      .def_property_readonly("bottom", &FiniteOrtholattice::bottom)
      .def_property_readonly("top", &FiniteOrtholattice::top)
      .def("classify", &classify_dict)
      .def("to_json", [](const FiniteOrtholattice& L) { return dump(lattice_to_json(L)); })
      .def("blocks",
           [](const std::shared_ptr<FiniteOrtholattice>& L, bool maximal) { return blocks_list(L, maximal); },
           py::arg("maximal") = false)
      .def(
          "section_count",
          [](const std::shared_ptr<FiniteOrtholattice>& L, bool maximal, std::size_t budget) {
            return bohrify(std::make_shared<const BlockPoset>(
                               enumerate_blocks(L, maximal ? BlockMode::Maximal : BlockMode::All)),
                           budget)
                .counted;
          },
          py::arg("maximal") = false, py::arg("budget") = kDefaultBudget)
      .def("ideal_points", [](const std::shared_ptr<FiniteOrtholattice>& L) {
        return frame_points(ideal_completion(L).frame).size();
      });

  m.def("four_block_section_count", [] { return bohrify(four_block_family(hasse_example())).counted; });

  m.def("bruns_lakser", [](const std::shared_ptr<FiniteOrtholattice>& L) {
    const auto r = bruns_lakser(L);
    py::dict d;
    d["definitional"] = r.definitional ? py::cast(r.definitional->size()) : py::none();
    d["family"] = r.family ? py::cast(r.family->size()) : py::none();
    d["in_both"] = r.in_both.size();
    d["only_definitional"] = r.only_definitional.size();
    d["only_family"] = r.only_family.size();
    return d;
  });

  m.def("proj_meet", [](const Matrix& p, const Matrix& q) {
    return proj_meet(MatProjection::from_matrix(p), MatProjection::from_matrix(q)).matrix();
  });
  m.def("proj_join", [](const Matrix& p, const Matrix& q) {
    return proj_join(MatProjection::from_matrix(p), MatProjection::from_matrix(q)).matrix();
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run a command-line subcommand; returns (exit code, stdout, stderr).");
}
