#include "gocyclo/rule.hpp"

#include <cctype>

namespace gocyclo {

namespace {

std::string list_to_string(const std::vector<Formula>& fs) {
  std::string out = "[";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += fs[i].to_string();
  }
  return out + "]";
}

std::string box_meta(const FormulaMultiset& pi, const std::vector<Formula>& boxed, const FormulaMultiset& l,
                     const FormulaMultiset& r) {
  return "pi=" + list_to_string(pi.elements()) + " boxed=" + list_to_string(boxed) +
         " ctxL=" + list_to_string(l.elements()) + " ctxR=" + list_to_string(r.elements());
}

void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

void expect(std::string_view text, std::size_t& pos, std::string_view token) {
  skip_ws(text, pos);
  if (text.substr(pos, token.size()) != token) throw SyntaxError("expected '" + std::string(token) + "'", pos);
  pos += token.size();
}

std::vector<Formula> parse_bracket_list(std::string_view text, std::size_t& pos, std::string_view key) {
  expect(text, pos, key);
  expect(text, pos, "=");
  expect(text, pos, "[");
  auto out = parse_formula_list(text, pos);
  expect(text, pos, "]");
  return out;
}

}  // namespace

std::size_t arity(const Rule& rule) {
  return std::visit(overloaded{
                        [](const Axiom&) -> std::size_t { return 0; },
                        [](const AxBot&) -> std::size_t { return 0; },
                        [](const Open&) -> std::size_t { return 0; },
                        [](const ImpR&) -> std::size_t { return 1; },
                        [](const BoxGo&) -> std::size_t { return 1; },
                        [](const ImpL&) -> std::size_t { return 2; },
                        [](const Cut&) -> std::size_t { return 2; },
                        [](const BoxInf& b) -> std::size_t { return 1 + b.boxed.size(); },
                    },
                    rule);
}

bool is_cut(const Rule& rule) { return std::holds_alternative<Cut>(rule); }

bool is_right_box_premise(const Rule& rule, std::size_t i) { return i >= 1 && std::holds_alternative<BoxInf>(rule); }

std::string rule_to_string(const Rule& rule) {
  return std::visit(
      overloaded{
          [](const Axiom& r) { return "AXA(" + r.principal.to_string() + ")"; },
          [](const AxBot&) { return std::string("AXB()"); },
          [](const Open&) { return std::string("OPEN()"); },
          [](const ImpR& r) { return "IMPR(" + r.principal.to_string() + ")"; },
          [](const ImpL& r) { return "IMPL(" + r.principal.to_string() + ")"; },
          [](const Cut& r) { return "CUT(" + r.cut_formula.to_string() + ")"; },
          [](const BoxInf& r) { return "BOX(" + box_meta(r.pi, r.boxed, r.ctx_l, r.ctx_r) + ")"; },
          [](const BoxGo& r) { return "BOXGO(" + box_meta(r.pi, {r.a}, r.ctx_l, r.ctx_r) + ")"; },
      },
      rule);
}

Rule parse_rule(std::string_view text, std::size_t& pos) {
  skip_ws(text, pos);
  std::size_t start = pos;
  while (pos < text.size() && std::isupper(static_cast<unsigned char>(text[pos]))) ++pos;
  std::string_view tag = text.substr(start, pos - start);
  expect(text, pos, "(");
  Rule rule;
  if (tag == "AXB") {
    rule = AxBot{};
  } else if (tag == "OPEN") {
    rule = Open{};
  } else if (tag == "AXA" || tag == "IMPR" || tag == "IMPL" || tag == "CUT") {
    skip_ws(text, pos);
    Formula f = parse_formula_prefix(text, pos);
    if (tag == "AXA") rule = Axiom{f};
    else if (tag == "IMPR") rule = ImpR{f};
    else if (tag == "IMPL") rule = ImpL{f};
    else rule = Cut{f};
    if ((tag == "IMPR" || tag == "IMPL") && !f.is_implies())
      throw SyntaxError(std::string(tag) + " principal must be an implication", start);
  } else if (tag == "BOX" || tag == "BOXGO") {
    auto pi = parse_bracket_list(text, pos, "pi");
    auto boxed = parse_bracket_list(text, pos, "boxed");
    auto l = parse_bracket_list(text, pos, "ctxL");
    auto r = parse_bracket_list(text, pos, "ctxR");
    if (tag == "BOX") {
      if (boxed.empty()) throw SyntaxError("BOX needs at least one boxed formula", start);
      for (std::size_t i = 1; i < boxed.size(); ++i)
        if (!(boxed[i - 1] <= boxed[i])) throw SyntaxError("BOX boxed list not in canonical order", start);
      rule = BoxInf{FormulaMultiset(pi), boxed, FormulaMultiset(l), FormulaMultiset(r)};
    } else {
      if (boxed.size() != 1) throw SyntaxError("BOXGO needs exactly one boxed formula", start);
      rule = BoxGo{FormulaMultiset(pi), boxed.front(), FormulaMultiset(l), FormulaMultiset(r)};
    }
  } else {
    throw SyntaxError("unknown rule tag '" + std::string(tag) + "'", start);
  }
  expect(text, pos, ")");
  return rule;
}

namespace {

std::string describe(const Sequent& want, const Sequent& got) {
  return "expected " + want.to_string() + ", found " + got.to_string();
}

FormulaMultiset boxes_of(const std::vector<Formula>& fs) {
  FormulaMultiset out;
  for (Formula f : fs) out.add(Formula::box(f));
  return out;
}

}  // namespace

std::optional<std::string> local_violation(const Sequent& c, const Rule& rule, const std::vector<Sequent>& prem,
                                           const LocalCheckOptions& opt) {
  if (prem.size() != arity(rule))
    return "rule " + rule_to_string(rule) + " expects " + std::to_string(arity(rule)) + " premises, has " +
           std::to_string(prem.size());
  auto premise_is = [&](std::size_t i, const Sequent& want) -> std::optional<std::string> {
    if (prem[i] == want) return std::nullopt;
    return "premise " + std::to_string(i) + ": " + describe(want, prem[i]);
  };
  return std::visit(
      overloaded{
          [&](const Axiom& r) -> std::optional<std::string> {
            if (opt.calculus == Calculus::Inf && !r.principal.is_atom())
              return "initial sequent principal " + r.principal.to_string() + " is not atomic";
            if (!c.ante.contains(r.principal) || !c.succ.contains(r.principal))
              return "principal " + r.principal.to_string() + " not on both sides of " + c.to_string();
            return std::nullopt;
          },
          [&](const AxBot&) -> std::optional<std::string> {
            if (!c.ante.contains(Formula::bottom())) return "no bot in antecedent of " + c.to_string();
            return std::nullopt;
          },
          [&](const Open&) -> std::optional<std::string> {
            if (!opt.allow_open) return std::string("open leaf outside fragment mode");
            return std::nullopt;
          },
          [&](const ImpR& r) -> std::optional<std::string> {
            Formula f = r.principal;
            if (!f.is_implies() || !c.succ.contains(f)) return "principal " + f.to_string() + " not in succedent";
            return premise_is(0, Sequent{c.ante.with(f.left()), c.succ.without(f).with(f.right())});
          },
          [&](const ImpL& r) -> std::optional<std::string> {
            Formula f = r.principal;
            if (!f.is_implies() || !c.ante.contains(f)) return "principal " + f.to_string() + " not in antecedent";
            FormulaMultiset g = c.ante.without(f);
            if (auto e = premise_is(0, Sequent{g.with(f.right()), c.succ})) return e;
            return premise_is(1, Sequent{g, c.succ.with(f.left())});
          },
          [&](const Cut& r) -> std::optional<std::string> {
            if (!opt.allow_cut) return "cut on " + r.cut_formula.to_string() + " is not allowed";
            if (auto e = premise_is(0, Sequent{c.ante, c.succ.with(r.cut_formula)})) return e;
            return premise_is(1, Sequent{c.ante.with(r.cut_formula), c.succ});
          },
          [&](const BoxInf& r) -> std::optional<std::string> {
            if (opt.calculus != Calculus::Inf) return std::string("BOX rule not available here");
            if (r.boxed.empty()) return std::string("BOX rule with no boxed formula");
            for (std::size_t i = 1; i < r.boxed.size(); ++i)
              if (r.boxed[i] < r.boxed[i - 1]) return std::string("boxed formulas not in canonical order");
            Sequent want{sum(r.ctx_l, box_all(r.pi)), sum(boxes_of(r.boxed), r.ctx_r)};
            if (c != want) return "conclusion: " + describe(want, c);
            FormulaMultiset bp = boxtimes(r.pi);
            FormulaMultiset bb = boxtimes(FormulaMultiset(r.boxed));
            if (auto e = premise_is(0, Sequent{bp, bb})) return e;
            for (std::size_t i = 0; i < r.boxed.size(); ++i)
              if (auto e = premise_is(i + 1, Sequent{bp, FormulaMultiset{r.boxed[i]}})) return e;
            return std::nullopt;
          },
          [&](const BoxGo& r) -> std::optional<std::string> {
            if (opt.calculus != Calculus::Seq) return std::string("BOXGO rule not available here");
            Sequent want{sum(r.ctx_l, box_all(r.pi)), r.ctx_r.with(Formula::box(r.a))};
            if (c != want) return "conclusion: " + describe(want, c);
            FormulaMultiset ante = boxtimes(r.pi);
            ante.add(Formula::box(Formula::implies(r.a, Formula::box(r.a))));
            return premise_is(0, Sequent{ante, FormulaMultiset{r.a}});
          },
      },
      rule);
}

Rule initial_rule(const Sequent& s) {
  if (s.ante.contains(Formula::bottom())) return AxBot{};
  for (const auto& [f, n] : s.ante.counts())
    if (f.is_atom() && s.succ.contains(f)) return Axiom{f};
  throw std::logic_error("not an initial sequent: " + s.to_string());
}

}  // namespace gocyclo
