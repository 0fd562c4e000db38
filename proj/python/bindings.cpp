#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gocyclo/schema.hpp"
#include "gocyclo/translate.hpp"

namespace py = pybind11;
using namespace gocyclo;

namespace {

// CoNode is immutable and only reachable through shared_ptr<const CoNode>;
// Python sees it through this value wrapper.
struct PyCoProof {
  CoProof p;
};

struct PyFragment {
  Fragment f;
};

FormulaMultiset multiset(const std::vector<Formula>& v) { return FormulaMultiset(v); }

std::string rule_name(const Rule& r) {
  std::string s = rule_to_string(r);
  return s.substr(0, s.find('('));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Go_inf cyclic proofs, cut elimination and translation to Go_Seq";

  py::register_exception<SyntaxError>(m, "SyntaxError", PyExc_ValueError);
  py::register_exception<TransformError>(m, "TransformError", PyExc_ValueError);
  py::register_exception<FuelViolation>(m, "FuelViolation", PyExc_RuntimeError);

  py::class_<Formula>(m, "Formula")
      .def(py::init([](const std::string& text) { return parse_formula(text); }), py::arg("text"))
      .def_static("bottom", &Formula::bottom)
      .def_static("atom", [](const std::string& n) { return Formula::atom(n); })
      .def_static("implies", &Formula::implies)
      .def_static("box", &Formula::box)
      .def_property_readonly("is_atom", &Formula::is_atom)
      .def_property_readonly("is_bottom", &Formula::is_bottom)
      .def_property_readonly("is_implies", &Formula::is_implies)
      .def_property_readonly("is_box", &Formula::is_box)
      .def("__str__", &Formula::to_string)
      .def("__repr__", [](Formula f) { return "Formula('" + f.to_string() + "')"; })
      .def("__eq__", [](Formula a, Formula b) { return a == b; })
      .def("__lt__", [](Formula a, Formula b) { return a < b; })
      .def("__hash__", &Formula::hash);

  py::class_<Sequent>(m, "Sequent")
      .def(py::init([](const std::string& text) { return parse_sequent(text); }), py::arg("text"))
      .def_property_readonly("antecedent", [](const Sequent& s) { return s.ante.elements(); })
      .def_property_readonly("succedent", [](const Sequent& s) { return s.succ.elements(); })
      .def("__str__", &Sequent::to_string)
      .def("__repr__", [](const Sequent& s) { return "Sequent('" + s.to_string() + "')"; })
      .def("__eq__", [](const Sequent& a, const Sequent& b) { return a == b; });

  py::class_<ProofGraph>(m, "ProofGraph")
      .def_readwrite("name", &ProofGraph::name)
      .def_readwrite("root", &ProofGraph::root)
      .def_property_readonly("ids", &ProofGraph::ids)
      .def("__len__", &ProofGraph::size)
      .def("sequent", [](const ProofGraph& g, const std::string& id) { return g.at(id).sequent; })
      .def("rule", [](const ProofGraph& g, const std::string& id) { return rule_to_string(g.at(id).rule); })
      .def("premises", [](const ProofGraph& g, const std::string& id) { return g.at(id).premises; })
      .def("__str__", &write_proof_graph);
  m.def("parse_proof_graph", [](const std::string& text) { return parse_proof_graph(text); });
  m.def("write_proof_graph", &write_proof_graph);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("accepted", &ValidityReport::accepted)
      .def_readonly("schema_errors", &ValidityReport::schema_errors)
      .def_readonly("cycle", &ValidityReport::cycle)
      .def("__bool__", [](const ValidityReport& r) { return r.accepted; })
      .def("__str__", &ValidityReport::to_string);

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("accepted", &CheckReport::accepted)
      .def_readonly("path", &CheckReport::path)
      .def_readonly("message", &CheckReport::message)
      .def("__bool__", [](const CheckReport& r) { return r.accepted; })
      .def("__str__", &CheckReport::to_string);

  py::class_<FiniteProof>(m, "FiniteProof")
      .def_property_readonly("conclusion", &FiniteProof::conclusion)
      .def_property_readonly("rule", [](const FiniteProof& p) { return rule_to_string(p.rule()); })
      .def_property_readonly("premises", &FiniteProof::premises)
      .def("node_count", &FiniteProof::node_count)
      .def("height", &FiniteProof::height)
      .def("has_cut", &FiniteProof::has_cut);
  m.def("check_goseq", &check_goseq, py::arg("proof"), py::arg("allow_cut") = true);
  m.def("axiom_fixtures", &axiom_fixtures);
  m.def("to_graph", &to_graph, py::arg("proof"), py::arg("name") = "proof");
  m.def("finite_from_graph", &finite_from_graph);

  py::class_<PyCoProof>(m, "CoProof")
      .def_property_readonly("conclusion", [](const PyCoProof& p) { return p.p->conclusion(); })
      .def_property_readonly("rule", [](const PyCoProof& p) { return rule_to_string(p.p->rule()); })
      .def_property_readonly("rule_name", [](const PyCoProof& p) { return rule_name(p.p->rule()); })
      .def_property_readonly("arity", [](const PyCoProof& p) { return p.p->arity(); })
      .def("premise", [](const PyCoProof& p, std::size_t i) {
        if (i >= p.p->arity()) throw py::index_error("premise index out of range");
        return PyCoProof{p.p->premise(i)};
      })
      .def("local_height", [](const PyCoProof& p) { return p.p->local_height(); })
      .def("fragment", [](const PyCoProof& p, std::size_t n) { return PyFragment{fragment(p.p, n)}; }, py::arg("n"));

  py::class_<PyFragment>(m, "Fragment")
      .def_property_readonly("sequent", [](const PyFragment& f) { return f.f->sequent; })
      .def_property_readonly("rule", [](const PyFragment& f) { return rule_to_string(f.f->rule); })
      .def_property_readonly("children", [](const PyFragment& f) {
        std::vector<PyFragment> out;
        for (const auto& c : f.f->children) out.push_back({c});
        return out;
      })
      .def("node_count", [](const PyFragment& f) { return fragment_node_count(f.f); })
      .def("has_cut", [](const PyFragment& f) { return fragment_has_cut(f.f); })
      .def("violation", [](const PyFragment& f, bool allow_cut) { return fragment_violation(f.f, allow_cut); },
           py::arg("allow_cut") = true)
      .def("to_graph", [](const PyFragment& f, const std::string& name) { return fragment_to_graph(f.f, name); },
           py::arg("name") = "fragment")
      .def("__eq__", [](const PyFragment& a, const PyFragment& b) { return fragments_equal(a.f, b.f); });

  py::class_<DistanceReport>(m, "DistanceReport")
      .def_readonly("agree", &DistanceReport::agree)
      .def_readonly("precision", &DistanceReport::precision)
      .def_readonly("exact", &DistanceReport::exact)
      .def("__str__", &DistanceReport::to_string);

  m.def("check_cyclic", &check_cyclic);
  m.def("unfold", [](const ProofGraph& g) { return PyCoProof{unfold(g)}; });
  m.def("go_schema", &go_schema, py::arg("formula"));
  m.def("embed", [](const FiniteProof& p) { return PyCoProof{embed(p)}; });
  m.def("embed_graph", &embed_graph, py::arg("proof"), py::arg("name") = "embedded");
  m.def("ax_expand", [](const std::vector<Formula>& gamma, Formula a, const std::vector<Formula>& delta) {
    return PyCoProof{ax_expand(multiset(gamma), a, multiset(delta))};
  });
  m.def("proof_distance", [](const PyCoProof& a, const PyCoProof& b, std::size_t precision) {
    return proof_distance(a.p, b.p, precision);
  }, py::arg("a"), py::arg("b"), py::arg("precision") = 8);

  m.def("wk", [](const std::vector<Formula>& left, const std::vector<Formula>& right, const PyCoProof& p) {
    return PyCoProof{wk(multiset(left), multiset(right), p.p)};
  });
  m.def("invert_impl_left", [](Formula a, const PyCoProof& p) { return PyCoProof{invert_impl_left(a, p.p)}; });
  m.def("invert_impl_right", [](Formula a, const PyCoProof& p) { return PyCoProof{invert_impl_right(a, p.p)}; });
  m.def("invert_impr", [](Formula a, const PyCoProof& p) { return PyCoProof{invert_impr(a, p.p)}; });
  m.def("invert_bot", [](const PyCoProof& p) { return PyCoProof{invert_bot(p.p)}; });
  m.def("contract_atom_left", [](Formula q, const PyCoProof& p) { return PyCoProof{contract_atom_left(q, p.p)}; });
  m.def("contract_atom_right", [](Formula q, const PyCoProof& p) { return PyCoProof{contract_atom_right(q, p.p)}; });
  m.def("clip", [](const PyCoProof& p) { return PyCoProof{clip(p.p)}; });
  m.def("weaken_to", [](const PyCoProof& p, const Sequent& s) { return PyCoProof{weaken_to(p.p, s)}; });

  py::class_<FuelReport>(m, "FuelReport")
      .def_readonly("ok", &FuelReport::ok)
      .def_readonly("calls", &FuelReport::calls)
      .def_readonly("checked", &FuelReport::checked)
      .def_readonly("max_depth", &FuelReport::max_depth)
      .def("__str__", &FuelReport::to_string);

  py::class_<MeasureReport>(m, "MeasureReport")
      .def_readonly("ok", &MeasureReport::ok)
      .def_readonly("calls", &MeasureReport::calls)
      .def("__str__", &MeasureReport::to_string);

  py::class_<Engine>(m, "Engine")
      .def(py::init([](bool trace, bool throw_on_violation) {
             return Engine(EngineOptions{.trace = trace, .throw_on_violation = throw_on_violation});
           }),
           py::arg("trace") = false, py::arg("throw_on_violation") = false)
      .def("ce", [](Engine& e, const PyCoProof& p) { return PyCoProof{e.ce(p.p)}; })
      .def("re", [](Engine& e, Formula a, const PyCoProof& l, const PyCoProof& r) { return PyCoProof{e.re(a, l.p, r.p)}; })
      .def("audit", &Engine::audit);

  py::class_<Translator>(m, "Translator")
      .def(py::init<>())
      .def("to_goseq",
           [](Translator& t, const PyCoProof& p, const std::vector<Formula>& l1, const std::vector<Formula>& l2,
              const std::vector<Formula>& om) {
             return t.to_goseq(p.p, FormulaSet(l1.begin(), l1.end()), FormulaSet(l2.begin(), l2.end()),
                               FormulaSet(om.begin(), om.end()));
           },
           py::arg("proof"), py::arg("lambda1") = std::vector<Formula>{}, py::arg("lambda2") = std::vector<Formula>{},
           py::arg("omega") = std::vector<Formula>{})
      .def("audit", &Translator::audit);

  m.def("ce", [](const PyCoProof& p) { return PyCoProof{ce(p.p)}; });
  m.def("re", [](Formula a, const PyCoProof& l, const PyCoProof& r) { return PyCoProof{re(a, l.p, r.p)}; });
  m.def("to_goseq", [](const PyCoProof& p) { return to_goseq(p.p); });
  m.def("eliminate_cut_seq", [](const FiniteProof& p) { return eliminate_cut_seq(p); });
}
