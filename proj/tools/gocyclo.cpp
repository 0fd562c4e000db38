// Command-line front end. Exit codes: 0 accepted / success, 1 rejected,
// 2 parse error, unreadable input or invalid arguments.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gocyclo/schema.hpp"
#include "gocyclo/translate.hpp"

using namespace gocyclo;

namespace {

constexpr int kAccepted = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProofGraph load(const std::string& path) {
  try {
    return parse_proof_graph(read_all(path));
  } catch (const SyntaxError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

bool has_tag(const ProofGraph& g, bool (*pred)(const Rule&)) {
  for (const auto& id : g.reachable())
    if (pred(g.at(id).rule)) return true;
  return false;
}

bool is_box_inf(const Rule& r) { return std::holds_alternative<BoxInf>(r); }
bool is_box_go(const Rule& r) { return std::holds_alternative<BoxGo>(r); }
bool is_open(const Rule& r) { return std::holds_alternative<Open>(r); }
bool is_cut(const Rule& r) { return std::holds_alternative<Cut>(r); }

// Go_Seq when the graph is a finite tree with no BOX node; otherwise Go_∞.
std::optional<FiniteProof> as_finite(const ProofGraph& g) {
  if (has_tag(g, is_box_inf) || has_tag(g, is_open)) return std::nullopt;
  try {
    return finite_from_graph(g);
  } catch (const std::invalid_argument&) {
    if (has_tag(g, is_box_go)) throw InputError("BOXGO rule in a cyclic graph");
    return std::nullopt;
  }
}

// The input as an ∞-proof: Go_Seq proofs are embedded, graphs unfolded.
// Invalid inputs are reported as input errors.
CoProof as_coproof(const ProofGraph& g, bool* was_finite = nullptr) {
  if (auto f = as_finite(g)) {
    CheckReport rep = check_goseq(*f, true);
    if (!rep.accepted) throw InputError("input does not check: " + rep.to_string());
    if (was_finite) *was_finite = true;
    return embed(*f);
  }
  ValidityReport rep = check_cyclic(g);
  if (!rep.accepted) throw InputError("input does not check: " + rep.to_string());
  if (was_finite) *was_finite = false;
  return unfold_unchecked(g);
}

int cmd_check(const std::string& file, bool no_cut, bool fragment_mode) {
  ProofGraph g = load(file);
  if (has_tag(g, is_open)) {
    if (!fragment_mode) {
      std::cout << "rejected: OPEN leaves are only allowed with --fragment\n";
      return kRejected;
    }
    Fragment f = fragment_from_graph(g);
    auto v = fragment_violation(f, !no_cut);
    std::cout << (v ? "rejected (fragment): " + *v : std::string("accepted (fragment)")) << "\n";
    return v ? kRejected : kAccepted;
  }
  if (auto f = as_finite(g)) {
    CheckReport rep = check_goseq(*f, !no_cut);
    std::cout << rep.to_string() << " (Go_Seq)\n";
    return rep.accepted ? kAccepted : kRejected;
  }
  ValidityReport rep = check_cyclic(g);
  bool cut_ok = !no_cut || !has_tag(g, is_cut);
  std::cout << rep.to_string() << " (Go_inf)\n";
  if (rep.accepted && !cut_ok) std::cout << "rejected: cut present and --no-cut given\n";
  return rep.accepted && cut_ok ? kAccepted : kRejected;
}

int cmd_eliminate(const std::string& file, std::optional<std::size_t> depth, bool to_goseq_flag,
                  const std::string& out) {
  ProofGraph g = load(file);
  CoProof p = as_coproof(g);
  CoProof c = ce(p);
  if (to_goseq_flag) {
    FiniteProof f = to_goseq(c);
    emit(write_proof_graph(to_graph(f, g.name + "_cutfree")), out);
  } else {
    emit(write_proof_graph(fragment_to_graph(fragment(c, *depth), g.name + "_ce")), out);
  }
  return kAccepted;
}

int cmd_embed(const std::string& file, const std::string& out) {
  ProofGraph g = load(file);
  auto f = as_finite(g);
  if (!f) throw InputError("embed expects a Go_Seq proof");
  CheckReport rep = check_goseq(*f, true);
  if (!rep.accepted) {
    std::cout << rep.to_string() << "\n";
    return kRejected;
  }
  emit(write_proof_graph(embed_graph(*f, g.name + "_inf")), out);
  return kAccepted;
}

int cmd_translate(const std::string& file, const std::string& out) {
  ProofGraph g = load(file);
  if (has_tag(g, is_box_go)) throw InputError("translate expects a Go_inf proof");
  ValidityReport rep = check_cyclic(g);
  if (!rep.accepted) {
    std::cout << rep.to_string() << "\n";
    return kRejected;
  }
  if (has_tag(g, is_cut)) {
    std::cout << "rejected: translate needs a cut-free proof; use eliminate --to-goseq\n";
    return kRejected;
  }
  emit(write_proof_graph(to_graph(to_goseq(unfold_unchecked(g)), g.name + "_seq")), out);
  return kAccepted;
}

int cmd_distance(const std::string& a, const std::string& b, std::size_t precision) {
  CoProof p = as_coproof(load(a));
  CoProof q = as_coproof(load(b));
  std::cout << proof_distance(p, q, precision).to_string() << "\n";
  return kAccepted;
}

int cmd_schema(const std::string& formula, const std::string& out) {
  Formula a;
  try {
    a = parse_formula(formula);
  } catch (const SyntaxError& e) {
    throw InputError(e.what());
  }
  emit(write_proof_graph(go_schema(a)), out);
  return kAccepted;
}

int cmd_fragment(const std::string& file, std::size_t n, const std::string& out) {
  ProofGraph g = load(file);
  CoProof p = as_coproof(g);
  emit(write_proof_graph(fragment_to_graph(fragment(p, n), g.name + "_fragment")), out);
  return kAccepted;
}

int cmd_fixture(const std::string& which, const std::string& out) {
  static const std::map<std::string, std::size_t> names{{"ii", 0}, {"iii", 1}, {"iv", 2}};
  auto it = names.find(which);
  if (it == names.end()) throw InputError("unknown fixture '" + which + "' (expected ii, iii or iv)");
  emit(write_proof_graph(to_graph(axiom_fixtures()[it->second], "fixture_" + which)), out);
  return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic proofs, cut elimination and translation for the logic Go"};
  app.require_subcommand(1);
  int status = kAccepted;

  std::string file, file2, out, formula, which;
  bool no_cut = false, fragment_mode = false, to_goseq_flag = false;
  std::size_t depth = 0, precision = 8, n = 0;

  auto* check = app.add_subcommand("check", "check a proof file (Go_Seq or Go_inf by its rule tags)");
  check->add_option("file", file, "proof file, - for stdin")->required();
  check->add_flag("--no-cut", no_cut, "reject proofs containing cut");
  check->add_flag("--fragment", fragment_mode, "accept OPEN leaves and check nodes locally");

  auto* elim = app.add_subcommand("eliminate", "eliminate cuts");
  elim->add_option("file", file)->required();
  auto* depth_opt = elim->add_option("--depth", depth, "write the n-fragment of the cut-free proof");
  auto* goseq_opt = elim->add_flag("--to-goseq", to_goseq_flag, "write a finite cut-free Go_Seq proof");
  depth_opt->excludes(goseq_opt);
  elim->add_option("-o,--output", out);

  auto* emb = app.add_subcommand("embed", "Go_Seq proof to a cyclic Go_inf proof");
  emb->add_option("file", file)->required();
  emb->add_option("-o,--output", out);

  auto* tr = app.add_subcommand("translate", "cut-free Go_inf proof to a Go_Seq proof");
  tr->add_option("file", file)->required();
  tr->add_option("-o,--output", out);

  auto* dist = app.add_subcommand("distance", "distance between two proofs");
  dist->add_option("a", file)->required();
  dist->add_option("b", file2)->required();
  dist->add_option("--precision", precision, "largest fragment depth compared");

  auto* sch = app.add_subcommand("schema", "cyclic proof of box(box(A -> box A) -> A) |- box A");
  sch->add_option("formula", formula)->required();
  sch->add_option("-o,--output", out);

  auto* frag = app.add_subcommand("fragment", "n-fragment of a proof");
  frag->add_option("file", file)->required();
  frag->add_option("n", n)->required();
  frag->add_option("-o,--output", out);

  auto* fix = app.add_subcommand("fixture", "Go_Seq proofs with cut of the Go axioms: ii, iii or iv");
  fix->add_option("name", which)->required();
  fix->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check) status = cmd_check(file, no_cut, fragment_mode);
    else if (*elim) {
      if (!*depth_opt && !to_goseq_flag) throw InputError("eliminate needs --depth n or --to-goseq");
      status = cmd_eliminate(file, *depth_opt ? std::optional<std::size_t>(depth) : std::nullopt, to_goseq_flag, out);
    } else if (*emb) status = cmd_embed(file, out);
    else if (*tr) status = cmd_translate(file, out);
    else if (*dist) status = cmd_distance(file, file2, precision);
    else if (*sch) status = cmd_schema(formula, out);
    else if (*frag) status = cmd_fragment(file, n, out);
    else if (*fix) status = cmd_fixture(which, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  return status;
}
