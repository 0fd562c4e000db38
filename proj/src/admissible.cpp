#include "gocyclo/admissible.hpp"

#include "memo.hpp"

namespace gocyclo {

namespace {

detail::NodeMemo& memo() {
  static detail::NodeMemo m;
  return m;
}

// Replacement of side formulas: Γ - remove_l + add_l ⇒ Δ - remove_r + add_r.
// When the root rule is `principal_tag` acting on `principal`, the transformer
// returns premise `principal_premise` instead of descending.
struct ContextEdit {
  std::string tag;
  FormulaMultiset remove_l, add_l, remove_r, add_r;
  enum class Principal { None, ImpL, ImpR } principal_kind = Principal::None;
  Formula principal;
  std::size_t principal_premise = 0;
};

bool hits_principal(const ContextEdit& e, const Rule& r) {
  switch (e.principal_kind) {
    case ContextEdit::Principal::ImpL:
      return std::holds_alternative<ImpL>(r) && std::get<ImpL>(r).principal == e.principal;
    case ContextEdit::Principal::ImpR:
      return std::holds_alternative<ImpR>(r) && std::get<ImpR>(r).principal == e.principal;
    case ContextEdit::Principal::None:
      return false;
  }
  return false;
}

FormulaMultiset apply(const FormulaMultiset& m, const FormulaMultiset& remove, const FormulaMultiset& add) {
  return sum(difference(m, remove), add);
}

CoProof forward_premises(Sequent c, Rule r, const CoProof& p) {
  return make_lazy(std::move(c), std::move(r), [p](std::size_t i) { return p->premise(i); });
}

CoProof edit(const CoProof& p, const std::shared_ptr<const ContextEdit>& e) {
  const Sequent& s = p->conclusion();
  if (!is_submultiset(e->remove_l, s.ante) || !is_submultiset(e->remove_r, s.succ))
    throw TransformError(e->tag + ": endpoint " + s.to_string() + " lacks the required formulas");
  if (CoProof hit = memo().find(e->tag, {p})) return hit;

  Sequent c{apply(s.ante, e->remove_l, e->add_l), apply(s.succ, e->remove_r, e->add_r)};
  CoProof out;
  if (hits_principal(*e, p->rule())) {
    out = p->premise(e->principal_premise);
    if (out->conclusion() != c)
      throw TransformError(e->tag + ": premise " + out->conclusion().to_string() + " does not match " + c.to_string());
  } else {
    out = std::visit(
        overloaded{
            [&](const Axiom& r) -> CoProof {
              if (!local_violation(c, r, {}, {})) return make_node(c, r);
              if (is_initial_inf(c)) return make_initial(c);
              throw TransformError(e->tag + ": " + c.to_string() + " is not initial");
            },
            [&](const AxBot& r) -> CoProof {
              if (!local_violation(c, r, {}, {})) return make_node(c, r);
              throw TransformError(e->tag + ": " + c.to_string() + " is not initial");
            },
            [&](const BoxInf& r) -> CoProof {
              if (!is_submultiset(e->remove_l, r.ctx_l) || !is_submultiset(e->remove_r, r.ctx_r))
                throw TransformError(e->tag + ": formula to remove is principal in BOX at " + s.to_string());
              BoxInf nr = r;
              nr.ctx_l = apply(r.ctx_l, e->remove_l, e->add_l);
              nr.ctx_r = apply(r.ctx_r, e->remove_r, e->add_r);
              return forward_premises(c, nr, p);
            },
            [&](const BoxGo&) -> CoProof { throw TransformError(e->tag + ": BOXGO node in a Go_inf proof"); },
            [&](const Open&) -> CoProof { throw TransformError(e->tag + ": OPEN node"); },
            [&](const auto& r) -> CoProof {
              return make_lazy(c, r, [p, e](std::size_t i) { return edit(p->premise(i), e); });
            },
        },
        p->rule());
  }
  memo().store(e->tag, {p}, out);
  return out;
}

CoProof run(const CoProof& p, ContextEdit e) {
  return edit(p, std::make_shared<const ContextEdit>(std::move(e)));
}

void require_implication(const char* op, Formula f) {
  if (!f.is_implies()) throw TransformError(std::string(op) + ": " + f.to_string() + " is not an implication");
}

void require_atom(const char* op, Formula f) {
  if (!f.is_atom()) throw TransformError(std::string(op) + ": " + f.to_string() + " is not an atom");
}

}  // namespace

CoProof wk(const FormulaMultiset& pi_add, const FormulaMultiset& sigma_add, const CoProof& p) {
  if (pi_add.empty() && sigma_add.empty()) return p;
  ContextEdit e;
  e.tag = "wk " + to_string(pi_add) + " ; " + to_string(sigma_add);
  e.add_l = pi_add;
  e.add_r = sigma_add;
  return run(p, std::move(e));
}

CoProof invert_impl_left(Formula principal, const CoProof& p) {
  require_implication("li", principal);
  ContextEdit e;
  e.tag = "li " + principal.to_string();
  e.remove_l = {principal};
  e.add_l = {principal.right()};
  e.principal_kind = ContextEdit::Principal::ImpL;
  e.principal = principal;
  e.principal_premise = 0;
  return run(p, std::move(e));
}

CoProof invert_impl_right(Formula principal, const CoProof& p) {
  require_implication("ri", principal);
  ContextEdit e;
  e.tag = "ri " + principal.to_string();
  e.remove_l = {principal};
  e.add_r = {principal.left()};
  e.principal_kind = ContextEdit::Principal::ImpL;
  e.principal = principal;
  e.principal_premise = 1;
  return run(p, std::move(e));
}

CoProof invert_impr(Formula principal, const CoProof& p) {
  require_implication("i", principal);
  ContextEdit e;
  e.tag = "i " + principal.to_string();
  e.remove_r = {principal};
  e.add_l = {principal.left()};
  e.add_r = {principal.right()};
  e.principal_kind = ContextEdit::Principal::ImpR;
  e.principal = principal;
  e.principal_premise = 0;
  return run(p, std::move(e));
}

CoProof invert_bot(const CoProof& p) {
  ContextEdit e;
  e.tag = "i_bot";
  e.remove_r = {Formula::bottom()};
  return run(p, std::move(e));
}

CoProof contract_atom_left(Formula q, const CoProof& p) {
  require_atom("acl", q);
  if (p->conclusion().ante.count(q) < 2)
    throw TransformError("acl: " + p->conclusion().to_string() + " has fewer than two copies of " + q.to_string());
  ContextEdit e;
  e.tag = "acl " + q.to_string();
  e.remove_l = {q};
  return run(p, std::move(e));
}

CoProof contract_atom_right(Formula q, const CoProof& p) {
  require_atom("acr", q);
  if (p->conclusion().succ.count(q) < 2)
    throw TransformError("acr: " + p->conclusion().to_string() + " has fewer than two copies of " + q.to_string());
  ContextEdit e;
  e.tag = "acr " + q.to_string();
  e.remove_r = {q};
  return run(p, std::move(e));
}

CoProof clip(const CoProof& p) {
  const auto* r = std::get_if<BoxInf>(&p->rule());
  if (!r || (r->ctx_l.empty() && r->ctx_r.empty())) return p;
  if (CoProof hit = memo().find("clip", {p})) return hit;
  Sequent c{box_all(r->pi), box_all(FormulaMultiset(r->boxed))};
  CoProof out = forward_premises(std::move(c), BoxInf{r->pi, r->boxed, {}, {}}, p);
  memo().store("clip", {p}, out);
  return out;
}

CoProof weaken_to(const CoProof& p, const Sequent& target) {
  const Sequent& s = p->conclusion();
  if (!is_submultiset(s.ante, target.ante) || !is_submultiset(s.succ, target.succ))
    throw TransformError("weaken_to: " + s.to_string() + " is not contained in " + target.to_string());
  return wk(difference(target.ante, s.ante), difference(target.succ, s.succ), p);
}

void clear_transformer_cache() { memo().clear(); }

}  // namespace gocyclo
