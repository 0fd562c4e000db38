#include "gocyclo/schema.hpp"

#include <stdexcept>

namespace gocyclo {

GraphBuilder::GraphBuilder(std::string name) { graph_.name = std::move(name); }

std::string GraphBuilder::add(Sequent s, Rule r, std::vector<std::string> premises, std::string id) {
  if (id.empty()) {
    do {
      id = "n" + std::to_string(counter_++);
    } while (graph_.contains(id));
  }
  graph_.add(id, GraphNode{std::move(s), std::move(r), std::move(premises)});
  return id;
}

void GraphBuilder::set_premises(const std::string& id, std::vector<std::string> premises) {
  graph_.at(id).premises = std::move(premises);
}

ProofGraph GraphBuilder::finish(const std::string& root) {
  graph_.root = root;
  graph_.validate_references();
  return graph_;
}

CoProof ax_expand(const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta) {
  Sequent c{gamma.with(a), delta.with(a)};
  switch (a.kind()) {
    case FormulaKind::Atom:
      return make_node(c, Axiom{a});
    case FormulaKind::Bottom:
      return make_node(c, AxBot{});
    case FormulaKind::Implies: {
      Formula l = a.left(), r = a.right();
      CoProof p0 = ax_expand(gamma.with(l), r, delta);
      CoProof p1 = ax_expand(gamma, l, delta.with(r));
      CoProof imp_l = make_node(Sequent{gamma.with(l).with(a), delta.with(r)}, ImpL{a}, {p0, p1});
      return make_node(c, ImpR{a}, {imp_l});
    }
    case FormulaKind::Box: {
      Formula body = a.body();
      FormulaMultiset boxed{a};
      CoProof left = ax_expand(boxed, body, boxed);
      CoProof right = ax_expand(boxed, body, {});
      return make_node(c, BoxInf{{body}, {body}, gamma, delta}, {left, right});
    }
  }
  throw std::logic_error("unreachable");
}

std::string ax_expand_into(GraphBuilder& b, const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta) {
  auto key = std::make_tuple(gamma, a, delta);
  if (auto it = b.ax_cache.find(key); it != b.ax_cache.end()) return it->second;
  Sequent c{gamma.with(a), delta.with(a)};
  std::string id;
  switch (a.kind()) {
    case FormulaKind::Atom:
      id = b.add(c, Axiom{a});
      break;
    case FormulaKind::Bottom:
      id = b.add(c, AxBot{});
      break;
    case FormulaKind::Implies: {
      Formula l = a.left(), r = a.right();
      std::string p0 = ax_expand_into(b, gamma.with(l), r, delta);
      std::string p1 = ax_expand_into(b, gamma, l, delta.with(r));
      std::string il = b.add(Sequent{gamma.with(l).with(a), delta.with(r)}, ImpL{a}, {p0, p1});
      id = b.add(c, ImpR{a}, {il});
      break;
    }
    case FormulaKind::Box: {
      Formula body = a.body();
      FormulaMultiset boxed{a};
      std::string left = ax_expand_into(b, boxed, body, boxed);
      std::string right = ax_expand_into(b, boxed, body, {});
      id = b.add(c, BoxInf{{body}, {body}, gamma, delta}, {left, right});
      break;
    }
  }
  b.ax_cache.emplace(key, id);
  return id;
}

namespace {

// Node ids follow the worked example: root, n1 (the loop target
// F, A, □F ⇒ □A), phi, psi, xi, theta and their BOX / initial parts.
std::string schema_into(GraphBuilder& b, Formula a, const std::string& prefix) {
  Formula ba = Formula::box(a);
  Formula s = Formula::implies(a, ba);
  Formula bs = Formula::box(s);
  Formula f = Formula::implies(bs, a);
  Formula bf = Formula::box(f);
  const FormulaMultiset pi{f};
  const FormulaMultiset xf{f, bf};  // ⊠F
  auto id = [&](const char* n) { return prefix + n; };

  // Placeholder premises are patched once every target exists.
  std::string root = b.add(Sequent{{bf}, {ba}}, BoxInf{pi, {a}, {}, {}}, {}, id("root"));
  std::string n1 = b.add(Sequent{xf.with(a), {ba}}, BoxInf{pi, {a}, {f, a}, {}}, {}, id("n1"));
  std::string phi = b.add(Sequent{xf, {a, ba}}, ImpL{f}, {}, id("phi"));
  std::string phi_ax = ax_expand_into(b, {bf}, a, {ba});
  std::vector<Formula> two = {a, s};
  std::sort(two.begin(), two.end());
  std::string phi_box = b.add(Sequent{{bf}, {bs, ba, a}}, BoxInf{pi, two, {}, {a}}, {}, id("phi_box"));
  std::string psi = b.add(Sequent{xf, {a, s, ba, bs}}, ImpR{s}, {}, id("psi"));
  std::string psi_ax = ax_expand_into(b, xf, a, {ba, ba, bs});
  std::string impr1 = b.add(Sequent{xf, {s}}, ImpR{s}, {n1}, id("impr1"));
  std::string xi = b.add(Sequent{xf, {s, bs}}, ImpR{s}, {}, id("xi"));
  std::string xi_box = b.add(Sequent{xf.with(a), {ba, bs}}, BoxInf{pi, two, {a, f}, {}}, {}, id("xi_box"));
  std::string theta = b.add(Sequent{xf, {a}}, ImpL{f}, {}, id("theta"));
  std::string theta_ax = ax_expand_into(b, {bf}, a, {});
  std::string theta_box = b.add(Sequent{{bf}, {bs, a}}, BoxInf{pi, {s}, {}, {a}}, {}, id("theta_box"));

  auto right_for = [&](Formula x) { return x == a ? theta : impr1; };
  b.set_premises(root, {phi, theta});
  b.set_premises(n1, {phi, theta});
  b.set_premises(phi, {phi_ax, phi_box});
  b.set_premises(phi_box, {psi, right_for(two[0]), right_for(two[1])});
  b.set_premises(psi, {psi_ax});
  b.set_premises(xi, {xi_box});
  b.set_premises(xi_box, {psi, right_for(two[0]), right_for(two[1])});
  b.set_premises(theta, {theta_ax, theta_box});
  b.set_premises(theta_box, {xi, impr1});
  return root;
}

}  // namespace

ProofGraph go_schema(Formula a) {
  GraphBuilder b("go_schema");
  std::string root = schema_into(b, a, "");
  return b.finish(root);
}

std::string go_schema_into(GraphBuilder& b, Formula a) {
  if (auto it = b.schema_cache.find(a); it != b.schema_cache.end()) return it->second;
  std::string root = schema_into(b, a, "s" + std::to_string(b.schema_cache.size()) + ".");
  b.schema_cache.emplace(a, root);
  return root;
}

std::string wk_into(GraphBuilder& b, const std::string& id, const FormulaMultiset& ante_add,
                    const FormulaMultiset& succ_add) {
  if (ante_add.empty() && succ_add.empty()) return id;
  auto key = std::make_tuple(id, ante_add, succ_add);
  if (auto it = b.wk_cache.find(key); it != b.wk_cache.end()) return it->second;
  GraphNode n = b.at(id);
  Sequent c{sum(n.sequent.ante, ante_add), sum(n.sequent.succ, succ_add)};
  std::string out = std::visit(
      overloaded{
          [&](const BoxInf& r) {
            BoxInf w = r;
            w.ctx_l = sum(w.ctx_l, ante_add);
            w.ctx_r = sum(w.ctx_r, succ_add);
            return b.add(c, w, n.premises);
          },
          [&](const BoxGo&) -> std::string { throw std::logic_error("BOXGO node in a Go_inf graph"); },
          [&](const auto& r) {
            std::vector<std::string> prem;
            for (const auto& p : n.premises) prem.push_back(wk_into(b, p, ante_add, succ_add));
            return b.add(c, r, std::move(prem));
          },
      },
      n.rule);
  b.wk_cache.emplace(key, out);
  return out;
}

namespace {

std::string embed_rec(GraphBuilder& b, const FiniteProof& p, std::map<const void*, std::string>& done) {
  if (auto it = done.find(p.identity()); it != done.end()) return it->second;
  const Sequent& c = p.conclusion();
  std::string id = std::visit(
      overloaded{
          [&](const Axiom& r) {
            if (r.principal.is_atom()) return b.add(c, r);
            return ax_expand_into(b, c.ante.without(r.principal), r.principal, c.succ.without(r.principal));
          },
          [&](const BoxGo& r) {
            Formula a = r.a;
            Formula f = Formula::implies(Formula::box(Formula::implies(a, Formula::box(a))), a);
            Formula bf = Formula::box(f);
            std::string xi = embed_rec(b, p.premise(0), done);
            std::string impr = b.add(Sequent{boxtimes(r.pi), {f}}, ImpR{f}, {xi});
            std::string left = wk_into(b, impr, {}, {bf});
            FormulaMultiset ctx_r = r.ctx_r.with(Formula::box(a));
            std::string box = b.add(Sequent{c.ante, c.succ.with(bf)}, BoxInf{r.pi, {f}, r.ctx_l, ctx_r}, {left, impr});
            std::string chi = go_schema_into(b, a);
            std::string chi_w = wk_into(b, chi, c.ante, r.ctx_r);
            return b.add(c, Cut{bf}, {box, chi_w});
          },
          [&](const BoxInf&) -> std::string { throw std::invalid_argument("BOX rule in a Go_Seq proof"); },
          [&](const auto& r) {
            std::vector<std::string> prem;
            for (const auto& q : p.premises()) prem.push_back(embed_rec(b, q, done));
            return b.add(c, r, std::move(prem));
          },
      },
      p.rule());
  done.emplace(p.identity(), id);
  return id;
}

}  // namespace

ProofGraph embed_graph(const FiniteProof& p, const std::string& name) {
  CheckReport rep = check_goseq(p, true);
  if (!rep.accepted) throw std::invalid_argument("embed: input does not check: " + rep.to_string());
  GraphBuilder b(name);
  std::map<const void*, std::string> done;
  std::string root = embed_rec(b, p, done);
  return b.finish(root);
}

CoProof embed(const FiniteProof& p) { return unfold(embed_graph(p)); }

}  // namespace gocyclo
