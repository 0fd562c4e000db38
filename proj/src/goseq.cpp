#include "gocyclo/goseq.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace gocyclo {

FiniteProof::FiniteProof(Sequent conclusion, Rule rule, std::vector<FiniteProof> premises)
    : node_(std::make_shared<const Node>(Node{std::move(conclusion), std::move(rule), std::move(premises)})) {
  if (node_->premises.size() != arity(node_->rule))
    throw std::invalid_argument("rule " + rule_to_string(node_->rule) + " given " +
                                std::to_string(node_->premises.size()) + " premises");
}

std::size_t FiniteProof::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises()) n += p.node_count();
  return n;
}

std::size_t FiniteProof::height() const {
  std::size_t h = 0;
  for (const auto& p : premises()) h = std::max(h, 1 + p.height());
  return h;
}

bool FiniteProof::has_cut() const {
  if (is_cut(rule())) return true;
  for (const auto& p : premises())
    if (p.has_cut()) return true;
  return false;
}

std::string CheckReport::to_string() const {
  if (accepted) return "accepted";
  return "rejected at " + path + ": " + message;
}

namespace {

bool check_rec(const FiniteProof& p, const LocalCheckOptions& opt, const std::string& path, CheckReport& report,
               std::unordered_set<const void*>& done) {
  if (done.count(p.identity())) return true;
  std::vector<Sequent> prem;
  for (const auto& q : p.premises()) prem.push_back(q.conclusion());
  if (auto e = local_violation(p.conclusion(), p.rule(), prem, opt)) {
    report = {false, path, *e};
    return false;
  }
  for (std::size_t i = 0; i < p.premises().size(); ++i)
    if (!check_rec(p.premise(i), opt, path + "." + std::to_string(i), report, done)) return false;
  done.insert(p.identity());
  return true;
}

FormulaMultiset require_remove(FormulaMultiset m, Formula f, const char* what) {
  if (m.remove(f) != 1) throw std::invalid_argument(std::string(what) + ": missing " + f.to_string());
  return m;
}

}  // namespace

CheckReport check_goseq(const FiniteProof& p, bool allow_cut) {
  CheckReport report;
  std::unordered_set<const void*> done;
  check_rec(p, LocalCheckOptions{Calculus::Seq, allow_cut, false}, "root", report, done);
  return report;
}

FiniteProof seq_axiom(const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta) {
  return FiniteProof(Sequent{gamma.with(a), delta.with(a)}, Axiom{a});
}

FiniteProof seq_bot(const FormulaMultiset& gamma, const FormulaMultiset& delta) {
  return FiniteProof(Sequent{gamma.with(Formula::bottom()), delta}, AxBot{});
}

FiniteProof seq_imp_r(Formula f, FiniteProof premise) {
  const Sequent& s = premise.conclusion();
  Sequent c{require_remove(s.ante, f.left(), "seq_imp_r"), require_remove(s.succ, f.right(), "seq_imp_r").with(f)};
  return FiniteProof(std::move(c), ImpR{f}, {std::move(premise)});
}

FiniteProof seq_imp_l(Formula f, FiniteProof left, FiniteProof right) {
  Sequent c{right.conclusion().ante.with(f), left.conclusion().succ};
  if (left.conclusion().ante != right.conclusion().ante.with(f.right()) ||
      right.conclusion().succ != left.conclusion().succ.with(f.left()))
    throw std::invalid_argument("seq_imp_l: premises do not fit " + f.to_string());
  return FiniteProof(std::move(c), ImpL{f}, {std::move(left), std::move(right)});
}

FiniteProof seq_cut(Formula a, FiniteProof left, FiniteProof right) {
  Sequent c{left.conclusion().ante, right.conclusion().succ};
  if (left.conclusion().succ != c.succ.with(a) || right.conclusion().ante != c.ante.with(a))
    throw std::invalid_argument("seq_cut: premises do not fit " + a.to_string());
  return FiniteProof(std::move(c), Cut{a}, {std::move(left), std::move(right)});
}

FiniteProof seq_box_go(FormulaMultiset pi, Formula a, FormulaMultiset ctx_l, FormulaMultiset ctx_r,
                       FiniteProof premise) {
  Sequent c{sum(ctx_l, box_all(pi)), ctx_r.with(Formula::box(a))};
  FormulaMultiset want = boxtimes(pi);
  want.add(Formula::box(Formula::implies(a, Formula::box(a))));
  if (premise.conclusion() != Sequent{want, FormulaMultiset{a}})
    throw std::invalid_argument("seq_box_go: premise " + premise.conclusion().to_string() + " does not fit");
  return FiniteProof(std::move(c), BoxGo{std::move(pi), a, std::move(ctx_l), std::move(ctx_r)}, {std::move(premise)});
}

namespace {

/// Context change applied to a conclusion and threaded upwards through
/// every rule whose premises inherit the context.
struct ContextEdit {
  FormulaMultiset ante_rm, ante_add, succ_rm, succ_add;

  Sequent apply(const Sequent& s) const {
    if (!is_submultiset(ante_rm, s.ante) || !is_submultiset(succ_rm, s.succ))
      throw std::invalid_argument("context edit on " + s.to_string() + ": formulas to remove are missing");
    return Sequent{sum(difference(s.ante, ante_rm), ante_add), sum(difference(s.succ, succ_rm), succ_add)};
  }
};

FiniteProof edit_context(const ContextEdit& e, const FiniteProof& p,
                         const std::function<std::optional<FiniteProof>(const FiniteProof&)>& principal_case) {
  if (auto r = principal_case(p)) return *r;
  Sequent c = e.apply(p.conclusion());
  return std::visit(
      overloaded{
          [&](const Axiom& r) -> FiniteProof {
            if (!c.ante.contains(r.principal) || !c.succ.contains(r.principal))
              throw std::logic_error("context edit removed initial principal");
            return FiniteProof(c, r);
          },
          [&](const AxBot& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const Open& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const BoxInf&) -> FiniteProof { throw std::logic_error("BOX rule in a finite proof"); },
          [&](const BoxGo& r) -> FiniteProof {
            BoxGo out = r;
            out.ctx_l = sum(difference(r.ctx_l, e.ante_rm), e.ante_add);
            out.ctx_r = sum(difference(r.ctx_r, e.succ_rm), e.succ_add);
            if (!is_submultiset(e.ante_rm, r.ctx_l) || !is_submultiset(e.succ_rm, r.ctx_r))
              throw std::logic_error("context edit reaches the principal part of a BOXGO rule");
            return FiniteProof(c, out, p.premises());
          },
          [&](const auto& r) -> FiniteProof {
            std::vector<FiniteProof> prem;
            for (const auto& q : p.premises()) prem.push_back(edit_context(e, q, principal_case));
            return FiniteProof(c, r, std::move(prem));
          },
      },
      p.rule());
}

std::optional<FiniteProof> no_principal(const FiniteProof&) { return std::nullopt; }

template <typename R>
bool principal_is(const FiniteProof& p, Formula f) {
  const R* r = std::get_if<R>(&p.rule());
  return r && r->principal == f;
}

FiniteProof li_seq(Formula f, const FiniteProof& p) {
  ContextEdit e{{f}, {f.right()}, {}, {}};
  std::function<std::optional<FiniteProof>(const FiniteProof&)> pc = [f](const FiniteProof& q) {
    return principal_is<ImpL>(q, f) ? std::optional<FiniteProof>(q.premise(0)) : std::nullopt;
  };
  return edit_context(e, p, pc);
}

FiniteProof ri_seq(Formula f, const FiniteProof& p) {
  ContextEdit e{{f}, {}, {}, {f.left()}};
  std::function<std::optional<FiniteProof>(const FiniteProof&)> pc = [f](const FiniteProof& q) {
    return principal_is<ImpL>(q, f) ? std::optional<FiniteProof>(q.premise(1)) : std::nullopt;
  };
  return edit_context(e, p, pc);
}

FiniteProof i_seq(Formula f, const FiniteProof& p) {
  ContextEdit e{{}, {f.left()}, {f}, {f.right()}};
  std::function<std::optional<FiniteProof>(const FiniteProof&)> pc = [f](const FiniteProof& q) {
    return principal_is<ImpR>(q, f) ? std::optional<FiniteProof>(q.premise(0)) : std::nullopt;
  };
  return edit_context(e, p, pc);
}

FiniteProof ctr_right_one(Formula f, const FiniteProof& p);

// Height-preserving contraction; expects atomic initial sequents only.
FiniteProof ctr_left_one(Formula f, const FiniteProof& p) {
  if (p.conclusion().ante.count(f) < 2)
    throw std::invalid_argument("contraction: fewer than two copies of " + f.to_string() + " in " +
                                p.conclusion().to_string());
  Sequent c{p.conclusion().ante.without(f), p.conclusion().succ};
  return std::visit(
      overloaded{
          [&](const ImpL& r) -> FiniteProof {
            if (r.principal == f) {
              FiniteProof l = ctr_left_one(f.right(), li_seq(f, p.premise(0)));
              FiniteProof rr = ctr_right_one(f.left(), ri_seq(f, p.premise(1)));
              return FiniteProof(c, r, {l, rr});
            }
            return FiniteProof(c, r, {ctr_left_one(f, p.premise(0)), ctr_left_one(f, p.premise(1))});
          },
          [&](const BoxGo& r) -> FiniteProof {
            BoxGo out = r;
            if (r.ctx_l.contains(f)) {
              out.ctx_l.remove(f);
              return FiniteProof(c, out, p.premises());
            }
            Formula body = f.body();
            out.pi.remove(body);
            return FiniteProof(c, out, {ctr_left_one(f, ctr_left_one(body, p.premise(0)))});
          },
          [&](const Axiom& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const AxBot& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const auto& r) -> FiniteProof {
            std::vector<FiniteProof> prem;
            for (const auto& q : p.premises()) prem.push_back(ctr_left_one(f, q));
            return FiniteProof(c, r, std::move(prem));
          },
      },
      p.rule());
}

FiniteProof ctr_right_one(Formula f, const FiniteProof& p) {
  if (p.conclusion().succ.count(f) < 2)
    throw std::invalid_argument("contraction: fewer than two copies of " + f.to_string() + " in " +
                                p.conclusion().to_string());
  Sequent c{p.conclusion().ante, p.conclusion().succ.without(f)};
  return std::visit(
      overloaded{
          [&](const ImpR& r) -> FiniteProof {
            if (r.principal == f) {
              FiniteProof q = ctr_right_one(f.right(), ctr_left_one(f.left(), i_seq(f, p.premise(0))));
              return FiniteProof(c, r, {q});
            }
            return FiniteProof(c, r, {ctr_right_one(f, p.premise(0))});
          },
          [&](const BoxGo& r) -> FiniteProof {
            BoxGo out = r;
            if (!out.ctx_r.remove(f)) throw std::logic_error("contraction: BOXGO succedent without context copy");
            return FiniteProof(c, out, p.premises());
          },
          [&](const Axiom& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const AxBot& r) -> FiniteProof { return FiniteProof(c, r); },
          [&](const auto& r) -> FiniteProof {
            std::vector<FiniteProof> prem;
            for (const auto& q : p.premises()) prem.push_back(ctr_right_one(f, q));
            return FiniteProof(c, r, std::move(prem));
          },
      },
      p.rule());
}

FiniteProof eta_seq(const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta) {
  switch (a.kind()) {
    case FormulaKind::Atom:
      return seq_axiom(gamma, a, delta);
    case FormulaKind::Bottom:
      return seq_bot(gamma, delta.with(a));
    case FormulaKind::Implies: {
      Formula b = a.left(), c = a.right();
      FiniteProof l = eta_seq(gamma.with(b), c, delta);
      FiniteProof r = eta_seq(gamma, b, delta.with(c));
      return seq_imp_r(a, seq_imp_l(a, l, r));
    }
    case FormulaKind::Box: {
      Formula b = a.body();
      FormulaMultiset ctx{Formula::box(b), Formula::box(Formula::implies(b, Formula::box(b)))};
      return seq_box_go(FormulaMultiset{b}, b, gamma, delta, eta_seq(ctx, b, {}));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FiniteProof wk_seq(const FormulaMultiset& pi_add, const FormulaMultiset& sigma_add, const FiniteProof& p) {
  if (pi_add.empty() && sigma_add.empty()) return p;
  return edit_context(ContextEdit{{}, pi_add, {}, sigma_add}, p, no_principal);
}

FiniteProof expand_axioms_seq(const FiniteProof& p) {
  if (const Axiom* ax = std::get_if<Axiom>(&p.rule()); ax && !ax->principal.is_atom()) {
    const Sequent& s = p.conclusion();
    return eta_seq(s.ante.without(ax->principal), ax->principal, s.succ.without(ax->principal));
  }
  bool changed = false;
  std::vector<FiniteProof> prem;
  for (const auto& q : p.premises()) {
    prem.push_back(expand_axioms_seq(q));
    changed = changed || prem.back().identity() != q.identity();
  }
  if (!changed) return p;
  return FiniteProof(p.conclusion(), p.rule(), std::move(prem));
}

FiniteProof ctr_seq(const FormulaMultiset& pi, const FiniteProof& p) {
  if (pi.empty()) return p;
  if (!is_submultiset(sum(pi, pi), p.conclusion().ante))
    throw std::invalid_argument("ctr_seq: " + p.conclusion().to_string() + " lacks two copies of " + to_string(pi));
  FiniteProof out = expand_axioms_seq(p);
  for (Formula f : pi.elements()) out = ctr_left_one(f, out);
  return out;
}

FiniteProof ctr_seq_right(const FormulaMultiset& sigma, const FiniteProof& p) {
  if (sigma.empty()) return p;
  if (!is_submultiset(sum(sigma, sigma), p.conclusion().succ))
    throw std::invalid_argument("ctr_seq_right: " + p.conclusion().to_string() + " lacks two copies of " +
                                to_string(sigma));
  FiniteProof out = expand_axioms_seq(p);
  for (Formula f : sigma.elements()) out = ctr_right_one(f, out);
  return out;
}

std::vector<FiniteProof> axiom_fixtures() {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  auto box = Formula::box;
  auto imp = Formula::implies;
  std::vector<FiniteProof> out;

  {
    // □(p→q) → (□p → □q)
    Formula pq = imp(p, q);
    FormulaMultiset ctx{box(pq), box(p), box(imp(q, box(q)))};
    FiniteProof l = seq_axiom(ctx.with(p), q, {});
    FiniteProof r = seq_axiom(ctx, p, {q});
    FiniteProof bx = seq_box_go({pq, p}, q, {}, {}, seq_imp_l(pq, l, r));
    out.push_back(seq_imp_r(imp(box(pq), imp(box(p), box(q))), seq_imp_r(imp(box(p), box(q)), bx)));
  }
  {
    // □p → □□p, routed through a cut on □p
    FiniteProof ax = seq_axiom({}, box(p), {box(box(p))});
    FiniteProof inner = seq_axiom({p, box(imp(box(p), box(box(p))))}, box(p), {});
    FiniteProof bx = seq_box_go({p}, box(p), {box(p)}, {}, inner);
    out.push_back(seq_imp_r(imp(box(p), box(box(p))), seq_cut(box(p), ax, bx)));
  }
  {
    // □(□(p→□p)→p) → □p, routed through a cut on □F
    Formula pbp = imp(p, box(p));
    Formula f = imp(box(pbp), p);
    FiniteProof ax = seq_axiom({}, box(f), {box(p)});
    FormulaMultiset ctx{box(f), box(pbp)};
    FiniteProof l = seq_axiom(ctx, p, {});
    FiniteProof r = seq_axiom({box(f)}, box(pbp), {p});
    FiniteProof bx = seq_box_go({f}, p, {box(f)}, {}, seq_imp_l(f, l, r));
    out.push_back(seq_imp_r(imp(box(f), box(p)), seq_cut(box(f), ax, bx)));
  }
  return out;
}

ProofGraph to_graph(const FiniteProof& p, const std::string& name) {
  ProofGraph g;
  g.name = name;
  std::unordered_map<const void*, std::string> ids;
  std::vector<std::pair<std::string, GraphNode>> nodes;
  std::function<std::string(const FiniteProof&)> visit = [&](const FiniteProof& q) -> std::string {
    if (auto it = ids.find(q.identity()); it != ids.end()) return it->second;
    std::string id = "n" + std::to_string(ids.size());
    ids.emplace(q.identity(), id);
    std::size_t slot = nodes.size();
    nodes.push_back({id, GraphNode{q.conclusion(), q.rule(), {}}});
    std::vector<std::string> prem;
    for (const auto& r : q.premises()) prem.push_back(visit(r));
    nodes[slot].second.premises = std::move(prem);
    return id;
  };
  g.root = visit(p);
  for (auto& [id, n] : nodes) g.add(id, std::move(n));
  return g;
}

FiniteProof finite_from_graph(const ProofGraph& g) {
  g.validate_references();
  std::map<std::string, FiniteProof> built;
  std::set<std::string> active;
  std::function<FiniteProof(const std::string&)> build = [&](const std::string& id) -> FiniteProof {
    if (auto it = built.find(id); it != built.end()) return it->second;
    if (!active.insert(id).second) throw std::invalid_argument("proof graph is cyclic at node '" + id + "'");
    const GraphNode& n = g.at(id);
    std::vector<FiniteProof> prem;
    for (const auto& p : n.premises) prem.push_back(build(p));
    active.erase(id);
    FiniteProof out(n.sequent, n.rule, std::move(prem));
    built.emplace(id, out);
    return out;
  };
  return build(g.root);
}

}  // namespace gocyclo
