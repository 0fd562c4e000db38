// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Expected values come from oracles defined here (hand-built fragments,
// a separate rule checker on string multisets, Floyd-Warshall reachability)
// rather than from the library's own checkers.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "gocyclo/schema.hpp"
#include "gocyclo/translate.hpp"

using namespace gocyclo;

namespace {

Formula P(std::string_view s) { return parse_formula(s); }
Sequent S(std::string_view s) { return parse_sequent(s); }

// ---------------------------------------------------------------------------
// Oracle rule checker. Multisets are maps from printed formula to count.

using Bag = std::map<std::string, int>;

Bag bag(const FormulaMultiset& m) {
  Bag b;
  for (Formula f : m.elements()) ++b[f.to_string()];
  return b;
}
Bag bag(const std::vector<Formula>& v) {
  Bag b;
  for (Formula f : v) ++b[f.to_string()];
  return b;
}
Bag boxed(const std::vector<Formula>& v) {
  Bag b;
  for (Formula f : v) ++b[Formula::box(f).to_string()];
  return b;
}
Bag operator+(Bag a, const Bag& b) {
  for (const auto& [k, n] : b) a[k] += n;
  return a;
}
Bag plus(Bag a, Formula f) {
  ++a[f.to_string()];
  return a;
}
bool has(const Bag& a, Formula f) {
  auto it = a.find(f.to_string());
  return it != a.end() && it->second > 0;
}
Bag minus(Bag a, Formula f) {
  if (--a[f.to_string()] == 0) a.erase(f.to_string());
  return a;
}

struct OSeq {
  Bag l, r;
  friend bool operator==(const OSeq&, const OSeq&) = default;
};
OSeq oseq(const Sequent& s) { return {bag(s.ante), bag(s.succ)}; }

enum class Calc { Inf, Seq };

std::optional<std::string> oracle_rule(const Sequent& concl, const Rule& rule, const std::vector<Sequent>& kids,
                                       Calc calc) {
  const OSeq c = oseq(concl);
  auto want = [&](std::size_t n) -> std::optional<std::string> {
    if (kids.size() != n) return "arity " + std::to_string(kids.size()) + " != " + std::to_string(n);
    return std::nullopt;
  };
  auto kid_is = [&](std::size_t i, const OSeq& s) -> std::optional<std::string> {
    if (oseq(kids[i]) == s) return std::nullopt;
    return "premise " + std::to_string(i) + " is " + kids[i].to_string();
  };
  if (auto* r = std::get_if<Axiom>(&rule)) {
    if (calc == Calc::Inf && !r->principal.is_atom()) return std::string("non-atomic initial sequent");
    if (!has(c.l, r->principal) || !has(c.r, r->principal)) return std::string("principal missing");
    return want(0);
  }
  if (std::holds_alternative<AxBot>(rule)) {
    if (!has(c.l, Formula::bottom())) return std::string("no bot on the left");
    return want(0);
  }
  if (auto* r = std::get_if<ImpR>(&rule)) {
    Formula a = r->principal;
    if (!a.is_implies() || !has(c.r, a)) return std::string("bad ImpR principal");
    if (auto e = want(1)) return e;
    return kid_is(0, {plus(c.l, a.left()), plus(minus(c.r, a), a.right())});
  }
  if (auto* r = std::get_if<ImpL>(&rule)) {
    Formula a = r->principal;
    if (!a.is_implies() || !has(c.l, a)) return std::string("bad ImpL principal");
    if (auto e = want(2)) return e;
    if (auto e = kid_is(0, {plus(minus(c.l, a), a.right()), c.r})) return e;
    return kid_is(1, {minus(c.l, a), plus(c.r, a.left())});
  }
  if (auto* r = std::get_if<Cut>(&rule)) {
    if (auto e = want(2)) return e;
    if (auto e = kid_is(0, {c.l, plus(c.r, r->cut_formula)})) return e;
    return kid_is(1, {plus(c.l, r->cut_formula), c.r});
  }
  if (auto* r = std::get_if<BoxInf>(&rule)) {
    if (calc != Calc::Inf) return std::string("BOX outside Go_inf");
    if (r->boxed.empty()) return std::string("BOX without boxed formulas");
    std::vector<Formula> pi = r->pi.elements();
    if (!(c == OSeq{bag(r->ctx_l) + boxed(pi), boxed(r->boxed) + bag(r->ctx_r)})) return std::string("conclusion");
    if (auto e = want(r->boxed.size() + 1)) return e;
    Bag left = bag(pi) + boxed(pi);
    if (auto e = kid_is(0, {left, bag(r->boxed) + boxed(r->boxed)})) return e;
    for (std::size_t i = 0; i < r->boxed.size(); ++i)
      if (auto e = kid_is(i + 1, {left, bag(std::vector<Formula>{r->boxed[i]})})) return e;
    return std::nullopt;
  }
  if (auto* r = std::get_if<BoxGo>(&rule)) {
    if (calc != Calc::Seq) return std::string("BOXGO outside Go_Seq");
    std::vector<Formula> pi = r->pi.elements();
    if (!(c == OSeq{bag(r->ctx_l) + boxed(pi), boxed({r->a}) + bag(r->ctx_r)})) return std::string("conclusion");
    if (auto e = want(1)) return e;
    Formula go = Formula::box(Formula::implies(r->a, Formula::box(r->a)));
    return kid_is(0, {plus(boxed(pi) + bag(pi), go), bag(std::vector<Formula>{r->a})});
  }
  return std::string("unexpected rule ") + rule_to_string(rule);
}

struct OracleResult {
  std::optional<std::string> error;
  std::size_t cuts = 0, nodes = 0, open = 0;
};

void oracle_walk(const Fragment& f, OracleResult& out, const std::string& path) {
  ++out.nodes;
  if (std::holds_alternative<Open>(f->rule)) {
    ++out.open;
    return;
  }
  if (std::holds_alternative<Cut>(f->rule)) ++out.cuts;
  std::vector<Sequent> kids;
  for (const auto& k : f->children) kids.push_back(k->sequent);
  if (!out.error)
    if (auto e = oracle_rule(f->sequent, f->rule, kids, Calc::Inf)) out.error = path + ": " + *e;
  for (std::size_t i = 0; i < f->children.size(); ++i) oracle_walk(f->children[i], out, path + "." + std::to_string(i));
}

OracleResult oracle_fragment(const Fragment& f) {
  OracleResult r;
  oracle_walk(f, r, "root");
  return r;
}

void oracle_walk(const FiniteProof& p, OracleResult& out, const std::string& path) {
  ++out.nodes;
  if (std::holds_alternative<Cut>(p.rule())) ++out.cuts;
  std::vector<Sequent> kids;
  for (const auto& k : p.premises()) kids.push_back(k.conclusion());
  if (!out.error)
    if (auto e = oracle_rule(p.conclusion(), p.rule(), kids, Calc::Seq)) out.error = path + ": " + *e;
  for (std::size_t i = 0; i < p.premises().size(); ++i)
    oracle_walk(p.premise(i), out, path + "." + std::to_string(i));
}

OracleResult oracle_finite(const FiniteProof& p) {
  OracleResult r;
  oracle_walk(p, r, "root");
  return r;
}

bool same_fragment(const Fragment& a, const Fragment& b) {
  if (!(a->sequent == b->sequent) || !(a->rule == b->rule) || a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!same_fragment(a->children[i], b->children[i])) return false;
  return true;
}

Fragment fnode(std::string_view seq, Rule rule, std::vector<Fragment> kids = {}) {
  return std::make_shared<FragmentNode>(FragmentNode{S(seq), std::move(rule), std::move(kids)});
}
Fragment fopen(std::string_view seq) { return fnode(seq, Open{}); }

// ---------------------------------------------------------------------------
// Shared fixtures

std::mt19937 rng(20241015);

std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Formula random_formula(int depth) {
  static const char* atoms[] = {"p", "q", "r"};
  std::size_t k = depth <= 0 ? pick(5) : pick(8);
  if (k < 3) return Formula::atom(atoms[k]);
  if (k < 4) return Formula::bottom();
  if (k < 5 || k == 7) return Formula::box(random_formula(depth - 1));
  return Formula::implies(random_formula(depth - 1), random_formula(depth - 1));
}

FormulaMultiset random_context(std::size_t max) {
  FormulaMultiset m;
  for (std::size_t i = pick(max + 1); i > 0; --i) m.add(random_formula(1));
  return m;
}

// A, X→Y ⊢ Y from a proof of ⇒ X→Y, through a cut on X→Y.
FiniteProof modus_ponens(const FiniteProof& p) {
  Formula xy = p.conclusion().succ.elements().at(0);
  Formula x = xy.left(), y = xy.right();
  FiniteProof left = wk_seq({x}, {y}, p);
  FiniteProof right = seq_imp_l(xy, seq_axiom({x}, y, {}), seq_axiom({}, x, {y}));
  return seq_cut(xy, left, right);
}

FiniteProof cut_identity(Formula a, Formula cut_on) {
  if (a == cut_on) return seq_cut(a, seq_axiom({}, a, {a}), seq_axiom({a}, a, {}));
  return seq_cut(cut_on, seq_axiom({}, a, {cut_on}), seq_axiom({cut_on}, a, {}));
}

std::vector<std::pair<std::string, FiniteProof>> corpus() {
  std::vector<std::pair<std::string, FiniteProof>> out;
  auto fx = axiom_fixtures();
  const char* names[] = {"(ii)", "(iii)", "(iv)"};
  for (std::size_t i = 0; i < fx.size(); ++i) out.emplace_back("fixture " + std::string(names[i]), fx[i]);
  for (std::size_t i = 0; i < fx.size(); ++i) out.emplace_back("mp " + std::string(names[i]), modus_ponens(fx[i]));
  for (const char* a : {"p", "p -> q", "box p", "box (p -> q)", "bot -> p", "box box p"})
    out.emplace_back(std::string("cut identity ") + a, cut_identity(P(a), P(a)));
  out.emplace_back("padded identity box p / q", cut_identity(P("box p"), P("q")));
  {
    // □p ⇒ □□p with two stacked cuts
    Formula bbp = P("box box p");
    FiniteProof mp = modus_ponens(fx[1]);
    out.emplace_back("stacked cuts box p |- box box p", seq_cut(bbp, wk_seq({}, {bbp}, mp), seq_axiom({P("box p")}, bbp, {})));
  }
  return out;
}

const std::vector<std::string> kSchemaFormulas = {"p",     "q",         "bot",     "p -> q",     "box p",
                                                  "box q", "box (p -> q)", "bot -> p", "box box p", "(p -> q) -> p"};

// π ⊢ □p ⇒ □p, □□p and τ ⊢ □p, □p ⇒ □□p, both ending in BOX.
CoProof hard_left() {
  Formula p = P("p"), bp = P("box p");
  CoProof left = ax_expand({bp}, p, {bp, bp, P("box box p")});
  return make_node(S("box p |- box p, box box p"), BoxInf{{p}, {p, bp}, {}, {}},
                   {left, ax_expand({bp}, p, {}), ax_expand({p}, bp, {})});
}
CoProof hard_right() {
  Formula p = P("p"), bp = P("box p");
  return make_node(S("box p, box p |- box box p"), BoxInf{{p, p}, {bp}, {}, {}},
                   {ax_expand({p, p, bp}, bp, {P("box box p")}), ax_expand({p, p, bp}, bp, {})});
}

// Same proof up to depth n; past the n-th right premise of BOX every
// subproof is replaced by a cut on bot.
CoProof perturb(const CoProof& p, std::size_t n) {
  if (n == 0) {
    Sequent s = p->conclusion();
    Sequent with_bot{s.ante.with(Formula::bottom()), s.succ};
    return make_node(s, Cut{Formula::bottom()}, {wk({}, {Formula::bottom()}, p), make_node(with_bot, AxBot{})});
  }
  return make_lazy(p->conclusion(), p->rule(), [p, n](std::size_t i) {
    return perturb(p->premise(i), is_right_box_premise(p->rule(), i) ? n - 1 : n);
  });
}

// ---------------------------------------------------------------------------
// Reporting

struct Result {
  std::vector<std::string> failures;
  std::string summary;
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
  void expect(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
};

int failed = 0;
// Criterion 7 audits the runs of later-numbered criteria, so lines are
// printed in order once everything has run.
std::map<int, std::string> lines;

void run(int id, const std::string& title, double limit_s, const std::function<void(Result&)>& body) {
  Result r;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) r.fail("runtime " + std::to_string(secs) + " s over limit");
  bool ok = r.failures.empty();
  if (!ok) ++failed;
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.3f s", secs);
  std::ostringstream os;
  os << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << r.summary << "; " << time_buf << "]\n";
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) os << "    " << r.failures[i] << "\n";
  if (r.failures.size() > 5) os << "    ... " << r.failures.size() - 5 << " more\n";
  lines[id] = os.str();
}

// ---------------------------------------------------------------------------
// Criteria

void golden(Result& r) {
  const std::string F = "box (p -> box p) -> p", BF = "box (box (p -> box p) -> p)";
  Formula f = P(F), p = P("p"), pbp = P("p -> box p");
  Fragment psi = fnode(F + ", " + BF + " |- p, p -> box p, box p, box (p -> box p)", ImpR{pbp},
                       {fnode("p, " + F + ", " + BF + " |- p, box p, box p, box (p -> box p)", Axiom{p})});
  Fragment inner = fnode(BF + " |- box (p -> box p), box p, p", BoxInf{{f}, {p, pbp}, {}, {p}},
                         {psi, fopen(F + ", " + BF + " |- p"), fopen(F + ", " + BF + " |- p -> box p")});
  Fragment impl = fnode(BF + ", " + F + " |- p, box p", ImpL{f}, {fnode(BF + ", p |- p, box p", Axiom{p}), inner});
  Fragment expected = fnode(BF + " |- box p", BoxInf{{f}, {p}, {}, {}}, {impl, fopen(F + ", " + BF + " |- p")});

  ProofGraph g = parse_proof_graph(write_proof_graph(go_schema(p)));
  ValidityReport rep = check_cyclic(g);
  r.expect(rep.accepted, "check_cyclic rejects: " + rep.to_string());
  CoProof c = unfold(g);
  r.expect(c->local_height() == 4, "local height " + std::to_string(c->local_height()));
  Fragment main = fragment(c, 1);
  r.expect(same_fragment(main, expected), "main fragment differs from the hand-built one");
  OracleResult o = oracle_fragment(main);
  r.expect(!o.error, "oracle: " + o.error.value_or(""));
  r.summary = "height " + std::to_string(c->local_height()) + ", " + std::to_string(o.nodes - o.open) + " nodes + " +
              std::to_string(o.open) + " open leaves";
}

void mutations(Result& r) {
  ProofGraph base;
  ProofGraph schema = go_schema(P("p"));
  for (const char* prefix : {"a_", "b_"})
    for (const auto& id : schema.ids()) {
      GraphNode n = schema.at(id);
      for (auto& k : n.premises) k = prefix + k;
      base.add(prefix + id, n);
    }
  base.root = "a_" + schema.root;
  r.expect(check_cyclic(base).accepted, "doubled schema graph rejected");

  const std::vector<std::string>& ids = base.ids();
  std::size_t bad_cycles = 0, valid = 0, local_bad = 0;
  for (int m = 0; m < 100; ++m) {
    ProofGraph g = base;
    const std::string& src = ids[pick(ids.size())];
    GraphNode& node = g.at(src);
    if (node.premises.empty()) {
      --m;
      continue;
    }
    std::size_t slot = pick(node.premises.size());
    const Sequent& old_seq = g.at(node.premises[slot]).sequent;
    std::vector<std::string> same;
    for (const auto& id : ids)
      if (g.at(id).sequent == old_seq && id != node.premises[slot]) same.push_back(id);
    std::string target = !same.empty() && pick(2) == 0 ? same[pick(same.size())] : ids[pick(ids.size())];
    node.premises[slot] = target;

    // Oracle: reachable set, then Floyd-Warshall over non-right edges.
    std::vector<std::string> reach = g.reachable();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < reach.size(); ++i) index[reach[i]] = i;
    const std::size_t n = reach.size();
    std::vector<std::vector<char>> path(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      const GraphNode& u = g.at(reach[i]);
      for (std::size_t j = 0; j < u.premises.size(); ++j)
        if (!is_right_box_premise(u.rule, j)) path[i][index.at(u.premises[j])] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (path[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (path[k][j]) path[i][j] = 1;
    bool cycle = false;
    for (std::size_t i = 0; i < n; ++i) cycle = cycle || path[i][i];
    // The base graph is valid and local checks only read premise sequents.
    bool local_ok = !index.count(src) || g.at(target).sequent == old_seq;

    ValidityReport rep = check_cyclic(g);
    std::string what = "mutant " + std::to_string(m) + " (" + src + "." + std::to_string(slot) + " -> " + target + ")";
    if (cycle) {
      ++bad_cycles;
      r.expect(!rep.accepted, what + ": bad cycle accepted");
      r.expect(!rep.cycle.empty(), what + ": no cycle witness");
      bool witness_ok = rep.cycle.size() >= 2 && rep.cycle.front() == rep.cycle.back();
      for (std::size_t i = 0; witness_ok && i + 1 < rep.cycle.size(); ++i) {
        const GraphNode& u = g.at(rep.cycle[i]);
        bool edge = false;
        for (std::size_t j = 0; j < u.premises.size(); ++j)
          edge = edge || (u.premises[j] == rep.cycle[i + 1] && !is_right_box_premise(u.rule, j));
        witness_ok = edge;
      }
      r.expect(witness_ok, what + ": witness is not a cycle avoiding right premises");
    } else if (local_ok) {
      ++valid;
      r.expect(rep.accepted, what + ": valid graph rejected: " + rep.to_string());
    } else {
      ++local_bad;
      r.expect(!rep.accepted, what + ": schema mismatch accepted");
      r.expect(rep.cycle.empty(), what + ": spurious cycle witness");
    }
  }
  r.expect(bad_cycles > 0 && valid > 0, "mutation sample misses a category");
  r.summary = "100 mutants: " + std::to_string(bad_cycles) + " bad cycles, " + std::to_string(valid) + " valid, " +
              std::to_string(local_bad) + " schema mismatches";
}

}  // namespace

int main() {
  Engine engine(EngineOptions{.trace = true});
  Translator translator;
  auto items = corpus();

  run(1, "golden main fragment of the schema proof for p", 1.0, golden);
  run(2, "validity soundness under edge mutations", 5.0, mutations);

  run(3, "eliminate_cut_seq on the Go_Seq+cut corpus", 60.0, [&](Result& r) {
    std::size_t cuts_in = 0, nodes_out = 0;
    for (const auto& [name, p] : items) {
      OracleResult in = oracle_finite(p);
      r.expect(!in.error, name + ": corpus proof fails the oracle: " + in.error.value_or(""));
      cuts_in += in.cuts;
      FiniteProof out = eliminate_cut_seq(p, engine, translator);
      OracleResult o = oracle_finite(out);
      r.expect(check_goseq(out, false).accepted, name + ": check_goseq rejects the output");
      r.expect(!o.error, name + ": oracle rejects the output: " + o.error.value_or(""));
      r.expect(o.cuts == 0, name + ": output has cuts");
      r.expect(out.conclusion() == p.conclusion(), name + ": endpoint changed");
      nodes_out += o.nodes;
    }
    r.expect(items.size() >= 10, "corpus too small");
    r.summary = std::to_string(items.size()) + " proofs, " + std::to_string(cuts_in) + " cuts in, " +
                std::to_string(nodes_out) + " cut-free nodes out";
  });

  run(4, "fragments of ce on the embedded corpus are cut-free, n = 1..4", 120.0, [&](Result& r) {
    std::size_t checked = 0, largest = 0;
    for (const auto& [name, p] : items) {
      CoProof in = embed(p);
      CoProof out = engine.ce(in);
      r.expect(out->conclusion() == p.conclusion(), name + ": endpoint changed");
      for (std::size_t n = 1; n <= 4; ++n) {
        OracleResult o = oracle_fragment(fragment(out, n));
        r.expect(o.cuts == 0, name + ": cut in the " + std::to_string(n) + "-fragment");
        r.expect(!o.error, name + ": oracle at n = " + std::to_string(n) + ": " + o.error.value_or(""));
        largest = std::max(largest, o.nodes);
        ++checked;
      }
    }
    r.summary = std::to_string(checked) + " fragments, largest " + std::to_string(largest) + " nodes";
  });

  run(5, "ce is the identity on schema proofs, n <= 3", 0, [&](Result& r) {
    for (const auto& a : kSchemaFormulas) {
      CoProof g = unfold(go_schema(P(a)));
      CoProof c = engine.ce(g);
      for (std::size_t n = 0; n <= 3; ++n)
        r.expect(same_fragment(fragment(c, n), fragment(g, n)), a + ": fragments differ at n = " + std::to_string(n));
    }
    r.summary = std::to_string(kSchemaFormulas.size()) + " formulas";
  });

  run(6, "strong admissibility of the transformers", 0, [&](Result& r) {
    std::vector<CoProof> pool;
    for (const auto& a : kSchemaFormulas) pool.push_back(unfold(go_schema(P(a))));
    for (const auto& [name, p] : items) pool.push_back(embed(p));
    for (int i = 0; i < 8; ++i) pool.push_back(ax_expand(random_context(2), random_formula(3), random_context(2)));
    auto base = [&] { return pool[pick(pool.size())]; };
    auto random_imp = [&] { return Formula::implies(random_formula(2), random_formula(2)); };
    Formula q = P("q");

    struct Case {
      CoProof in;
      std::function<CoProof(const CoProof&)> f;
      Sequent expected;
    };
    using Gen = std::function<Case()>;
    auto conc = [](const CoProof& p) { return p->conclusion(); };
    std::vector<std::pair<std::string, Gen>> gens = {
        {"wk",
         [&] {
           CoProof in = base();
           FormulaMultiset a = random_context(2), b = random_context(2);
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return wk(a, b, x); }, Sequent{sum(a, s.ante), sum(s.succ, b)}};
         }},
        {"invert_impl_left",
         [&] {
           Formula ab = random_imp();
           CoProof in = pick(2) ? wk({ab}, random_context(1), base()) : ax_expand(random_context(1), ab, random_context(1));
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return invert_impl_left(ab, x); },
                       Sequent{s.ante.without(ab).with(ab.right()), s.succ}};
         }},
        {"invert_impl_right",
         [&] {
           Formula ab = random_imp();
           CoProof in = pick(2) ? wk({ab}, random_context(1), base()) : ax_expand(random_context(1), ab, random_context(1));
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return invert_impl_right(ab, x); },
                       Sequent{s.ante.without(ab), s.succ.with(ab.left())}};
         }},
        {"invert_impr",
         [&] {
           Formula ab = random_imp();
           CoProof in;
           switch (pick(3)) {
             case 0: in = wk(random_context(1), {ab}, base()); break;
             case 1: in = ax_expand(random_context(1), ab, random_context(1)); break;
             default: {
               in = embed(items[pick(3)].second);
               ab = in->conclusion().succ.elements().at(0);
             }
           }
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return invert_impr(ab, x); },
                       Sequent{s.ante.with(ab.left()), s.succ.without(ab).with(ab.right())}};
         }},
        {"invert_bot",
         [&] {
           Formula bot = Formula::bottom();
           CoProof in = pick(2) ? wk(random_context(1), {bot}, base()) : ax_expand(random_context(1), bot, {});
           Sequent s = conc(in);
           return Case{in, [](const CoProof& x) { return invert_bot(x); }, Sequent{s.ante, s.succ.without(bot)}};
         }},
        {"contract_atom_left",
         [&] {
           CoProof in = pick(2) ? wk({q, q}, {}, base()) : wk({q}, {}, ax_expand(random_context(1), q, random_context(1)));
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return contract_atom_left(q, x); }, Sequent{s.ante.without(q), s.succ}};
         }},
        {"contract_atom_right",
         [&] {
           CoProof in = pick(2) ? wk({}, {q, q}, base()) : wk({}, {q}, ax_expand(random_context(1), q, random_context(1)));
           Sequent s = conc(in);
           return Case{in, [=](const CoProof& x) { return contract_atom_right(q, x); }, Sequent{s.ante, s.succ.without(q)}};
         }},
        {"clip",
         [&] {
           CoProof in = wk(random_context(1), random_context(1), base());
           Sequent s = conc(in);
           Sequent e = s;
           if (auto* b = std::get_if<BoxInf>(&in->rule())) {
             FormulaMultiset boxes;
             for (Formula a : b->boxed) boxes.add(Formula::box(a));
             e = Sequent{box_all(b->pi), boxes};
           }
           return Case{in, [](const CoProof& x) { return clip(x); }, e};
         }},
        {"weaken_to",
         [&] {
           CoProof in = base();
           Sequent s = conc(in);
           Sequent t{sum(random_context(2), s.ante), sum(s.succ, random_context(2))};
           return Case{in, [=](const CoProof& x) { return weaken_to(x, t); }, t};
         }},
    };

    std::size_t samples = 0, pairs = 0, separated = 0, adequacy_checks = 0;
    for (const auto& [name, gen] : gens) {
      for (int i = 0; i < 50; ++i) {
        Case c = gen();
        CoProof out = c.f(c.in);
        std::string what = name + " sample " + std::to_string(i) + " on " + c.in->conclusion().to_string();
        r.expect(out->conclusion() == c.expected, what + ": endpoint " + out->conclusion().to_string());
        r.expect(out->local_height() <= c.in->local_height(), what + ": local height grew");
        for (std::size_t n = 1; n <= 3; ++n) {
          OracleResult fi = oracle_fragment(fragment(c.in, n));
          OracleResult fo = oracle_fragment(fragment(out, n));
          r.expect(!fo.error, what + ": oracle at n = " + std::to_string(n) + ": " + fo.error.value_or(""));
          if (fi.cuts == 0) {
            ++adequacy_checks;
            r.expect(fo.cuts == 0, what + ": cut appears in the " + std::to_string(n) + "-fragment");
          }
        }
        ++samples;

        std::size_t n = 1 + pick(3);
        CoProof twin = perturb(c.in, n);
        r.expect(same_fragment(fragment(c.in, n), fragment(twin, n)), what + ": perturbation visible at depth n");
        if (!same_fragment(fragment(c.in, n + 1), fragment(twin, n + 1))) ++separated;
        r.expect(same_fragment(fragment(out, n), fragment(c.f(twin), n)),
                 what + ": outputs of " + std::to_string(n) + "-equal inputs differ at depth " + std::to_string(n));
        ++pairs;
      }
    }
    r.expect(separated > 0, "no matched pair differs beyond depth n");
    r.summary = std::to_string(gens.size()) + " transformers, " + std::to_string(samples) + " samples, " +
                std::to_string(pairs) + " matched pairs (" + std::to_string(separated) + " differing at n+1), " +
                std::to_string(adequacy_checks) + " adequacy checks";
  });

  run(9, "hard case: box p against box p", 0, [&](Result& r) {
    CoProof pi = hard_left(), tau = hard_right();
    for (std::size_t n = 1; n <= 3; ++n) {
      OracleResult a = oracle_fragment(fragment(pi, n)), b = oracle_fragment(fragment(tau, n));
      r.expect(!a.error && !b.error && a.cuts + b.cuts == 0, "inputs are not cut-free proofs");
    }
    CoProof out = engine.re(P("box p"), pi, tau);
    r.expect(out->conclusion() == S("box p |- box box p"), "endpoint " + out->conclusion().to_string());
    std::size_t nodes = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      OracleResult o = oracle_fragment(fragment(out, n));
      r.expect(!o.error, "oracle at n = " + std::to_string(n) + ": " + o.error.value_or(""));
      r.expect(o.cuts == 0, "cut in the " + std::to_string(n) + "-fragment");
      nodes = o.nodes;
    }
    r.summary = "3-fragment has " + std::to_string(nodes) + " nodes";
  });

  run(7, "fuel audit over criteria 3-6 and 9", 0, [&](Result& r) {
    FuelReport rep = engine.audit();
    r.expect(rep.ok, rep.to_string());
    r.expect(rep.checked > 0, "no parent/child pairs checked");
    r.summary = std::to_string(rep.calls) + " calls, " + std::to_string(rep.checked) + " pairs, max depth " +
                std::to_string(rep.max_depth);
  });

  run(8, "measure audit of to_goseq", 0, [&](Result& r) {
    for (const auto& a : kSchemaFormulas) {
      FiniteProof out = translator.to_goseq(unfold(go_schema(P(a))));
      OracleResult o = oracle_finite(out);
      r.expect(!o.error && o.cuts == 0, a + ": translated schema proof fails the oracle");
      r.expect(out.conclusion() == go_schema(P(a)).at(go_schema(P(a)).root).sequent, a + ": endpoint changed");
    }
    MeasureReport rep = translator.audit();
    r.expect(rep.ok, rep.to_string());
    r.summary = std::to_string(rep.calls) + " translation calls";
  });

  for (const auto& [id, line] : lines) std::cout << line;
  return failed == 0 ? 0 : 1;
}
