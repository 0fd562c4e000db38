#include "gocyclo/translate.hpp"

#include <sstream>
#include <stdexcept>

#include "gocyclo/schema.hpp"

namespace gocyclo {

std::string Measure::to_string() const {
  std::ostringstream os;
  os << "(" << m1 << ", " << m2 << ", " << m3 << ", " << m4 << ")";
  return os.str();
}

namespace {

std::string record_line(const MeasureRecord& r) {
  return "#" + std::to_string(r.id) + " " + r.step + " " + r.measure.to_string() + " " + r.sequent +
         (r.memo_hit ? " (cached)" : "");
}

std::size_t count_outside(const FormulaSet& sub, const FormulaSet& s) {
  std::size_t n = 0;
  for (Formula f : sub) n += s.count(f) ? 0 : 1;
  return n;
}

Formula star(Formula a) { return Formula::implies(a, Formula::box(a)); }

FormulaMultiset as_multiset(const FormulaSet& s) { return FormulaMultiset(s); }

void expect(const FiniteProof& p, const Sequent& s, const char* step) {
  if (p.conclusion() != s)
    throw std::logic_error(std::string("to_goseq ") + step + ": built " + p.conclusion().to_string() + ", expected " +
                           s.to_string());
}

}  // namespace

std::string MeasureReport::to_string() const {
  std::string out = (ok ? "measure audit passed: " : "measure audit FAILED: ") + std::to_string(calls) + " calls";
  for (const auto& r : violation) out += "\n  " + record_line(r);
  return out;
}

MeasureReport measure_audit(const std::vector<MeasureRecord>& trace) {
  MeasureReport rep;
  rep.calls = trace.size();
  for (const auto& r : trace) {
    if (!r.parent || !rep.ok) continue;
    if (!(r.measure < trace.at(*r.parent).measure)) {
      rep.ok = false;
      for (std::optional<std::size_t> at = r.id; at; at = trace[*at].parent)
        rep.violation.insert(rep.violation.begin(), trace[*at]);
    }
  }
  return rep;
}

FormulaMultiset translation_context(const FormulaSet& lambda1, const FormulaSet& lambda2, const FormulaSet& omega) {
  return sum(sum(box_all(as_multiset(star_set(lambda1))), as_multiset(star_set(lambda2))),
             boxtimes(as_multiset(omega)));
}

FiniteProof Translator::to_goseq(const CoProof& p, const FormulaSet& lambda1, const FormulaSet& lambda2,
                                 const FormulaSet& omega) {
  if (!is_subset(lambda2, lambda1)) throw std::invalid_argument("to_goseq: Λ₂ is not a subset of Λ₁");
  return step(p, lambda1, lambda2, omega, std::nullopt);
}

FiniteProof Translator::step(const CoProof& p, const FormulaSet& l1, const FormulaSet& l2, const FormulaSet& om,
                             std::optional<std::size_t> parent) {
  const Sequent& s = p->conclusion();
  FormulaSet sub = subformulas(s);
  MeasureRecord rec;
  rec.id = trace_.size();
  rec.parent = parent;
  rec.sequent = s.to_string();
  rec.measure = Measure{count_outside(sub, l1), count_outside(sub, l2), count_outside(sub, om), p->local_height()};

  Key key{p.get(), l1, l2, om};
  if (auto it = memo_.find(key); it != memo_.end()) {
    rec.step = "cached";
    rec.memo_hit = true;
    trace_.push_back(rec);
    return it->second.second;
  }

  const FormulaMultiset psi = translation_context(l1, l2, om);
  const Sequent target{sum(psi, s.ante), s.succ};
  const std::size_t self = rec.id;
  trace_.push_back(rec);
  auto set_step = [&](const char* name) { trace_[self].step = name; };

  FiniteProof out = std::visit(
      overloaded{
          [&](const Axiom& r) {
            set_step("axiom");
            return seq_axiom(target.ante.without(r.principal), r.principal, target.succ.without(r.principal));
          },
          [&](const AxBot&) {
            set_step("axiom");
            return seq_bot(target.ante.without(Formula::bottom()), target.succ);
          },
          [&](const ImpR& r) {
            set_step("impr");
            return seq_imp_r(r.principal, step(p->premise(0), l1, l2, om, self));
          },
          [&](const ImpL& r) {
            set_step("impl");
            FiniteProof a = step(p->premise(0), l1, l2, om, self);
            FiniteProof b = step(p->premise(1), l1, l2, om, self);
            return seq_imp_l(r.principal, std::move(a), std::move(b));
          },
          [&](const BoxInf& r) {
            const FormulaMultiset& pi = r.pi;
            const FormulaMultiset l1_star = as_multiset(star_set(l1));
            const FormulaMultiset l2_star = as_multiset(star_set(l2));
            const FormulaMultiset box_om = box_all(as_multiset(om));
            const FormulaMultiset go_ctx_l = sum(sum(l2_star, boxtimes(as_multiset(om))), r.ctx_l);

            for (std::size_t i = 0; i < r.boxed.size(); ++i) {
              Formula a = r.boxed[i];
              if (l1.count(a)) continue;
              set_step("3.1");
              FormulaSet l1a = l1;
              l1a.insert(a);
              FiniteProof q = step(p->premise(i + 1), l1a, l1, {}, self);
              return seq_box_go(sum(pi, l1_star), a, go_ctx_l, s.succ.without(Formula::box(a)), q);
            }
            for (std::size_t i = 0; i < r.boxed.size(); ++i) {
              Formula a = r.boxed[i];
              if (l2.count(a)) continue;
              set_step("3.2");
              FiniteProof q = step(p->premise(i + 1), l1, l1, {}, self);
              q = wk_seq({Formula::box(star(a))}, {}, q);
              return seq_box_go(sum(pi, l1_star), a, go_ctx_l, s.succ.without(Formula::box(a)), q);
            }
            FormulaSet missing = set_difference(pi.support(), om);
            if (!missing.empty()) {
              set_step("3.3");
              if (r.boxed.empty()) throw std::invalid_argument("to_goseq: BOX with no boxed formulas");
              Formula a = r.boxed[0];
              FormulaSet om2 = set_union(om, pi.support());
              FiniteProof q = step(p->premise(1), l1, l1, om2, self);
              q = wk_seq({Formula::box(star(a))}, {}, q);
              FormulaMultiset go_pi = sum(sum(l1_star, as_multiset(om2)), pi);
              FormulaMultiset ctx_l = sum(sum(l2_star, as_multiset(om)), r.ctx_l);
              FiniteProof b = seq_box_go(go_pi, a, ctx_l, s.succ.without(Formula::box(a)), q);
              for (Formula g : missing) b = ctr_seq({Formula::box(g)}, b);
              return b;
            }
            set_step("3.4");
            FiniteProof cur = step(p->premise(0), l1, l2, om, self);
            const FormulaMultiset base = sum(psi, boxtimes(pi));
            FormulaMultiset succ = boxtimes(FormulaMultiset(r.boxed));
            expect(cur, Sequent{base, succ}, "3.4 premise");
            for (Formula a : r.boxed) {
              succ.remove(a);
              Formula ba = Formula::box(a);
              FiniteProof ax = seq_axiom(base, ba, succ.without(ba));
              cur = ctr_seq({star(a)}, seq_imp_l(star(a), ax, cur));
            }
            for (Formula f : pi.elements()) cur = ctr_seq({f}, cur);
            return wk_seq(r.ctx_l, r.ctx_r, cur);
          },
          [&](const auto& r) -> FiniteProof {
            throw std::invalid_argument("to_goseq: rule " + rule_to_string(r) + " is not a cut-free Go_inf rule");
          },
      },
      p->rule());

  expect(out, target, trace_[self].step.c_str());
  memo_.emplace(std::move(key), std::make_pair(p, out));
  return out;
}

FiniteProof to_goseq(const CoProof& p, const FormulaSet& lambda1, const FormulaSet& lambda2, const FormulaSet& omega) {
  Translator t;
  return t.to_goseq(p, lambda1, lambda2, omega);
}

FiniteProof eliminate_cut_seq(const FiniteProof& p, Engine& engine, Translator& translator) {
  CoProof c = engine.ce(embed(p));
  return translator.to_goseq(c);
}

FiniteProof eliminate_cut_seq(const FiniteProof& p) {
  Engine e;
  Translator t;
  return eliminate_cut_seq(p, e, t);
}

}  // namespace gocyclo
