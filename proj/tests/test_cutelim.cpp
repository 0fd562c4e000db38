#include <chrono>

#include "doctest.h"
#include "gocyclo/cutelim.hpp"
#include "gocyclo/schema.hpp"

using namespace gocyclo;

namespace {
Formula P(std::string_view s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }

void check_cut_free(const CoProof& p, std::size_t n) {
  Fragment f = fragment(p, n);
  auto v = fragment_violation(f, false);
  CHECK_MESSAGE(!v, *v);
}

// π = BOX(Π={p}, boxed=[p, □p]) ⊢ □p ⇒ □p, □□p
CoProof hard_left() {
  Formula p = P("p"), bp = P("box p");
  CoProof left = ax_expand({bp}, p, {bp, bp, P("box box p")});
  CoProof r1 = ax_expand({bp}, p, {});
  CoProof r2 = ax_expand({p}, bp, {});
  return make_node(S("box p |- box p, box box p"), BoxInf{{p}, {p, bp}, {}, {}}, {left, r1, r2});
}

// τ = BOX(Π={p, p}, boxed=[□p]) ⊢ □p, □p ⇒ □□p
CoProof hard_right() {
  Formula p = P("p"), bp = P("box p");
  CoProof left = ax_expand({p, p, bp}, bp, {P("box box p")});
  CoProof r1 = ax_expand({p, p, bp}, bp, {});
  return make_node(S("box p, box p |- box box p"), BoxInf{{p, p}, {bp}, {}, {}}, {left, r1});
}
}  // namespace

TEST_CASE("cut pairs") {
  CoProof a = make_node(S("p |- p, q"), Axiom{P("p")});
  CoProof b = make_node(S("q, p |- p"), Axiom{P("p")});
  auto cp = as_cut_pair(a, b, P("q"));
  REQUIRE(cp);
  CHECK(cp->cut_result == S("p |- p"));
  CHECK_FALSE(as_cut_pair(a, b, P("p")));
  CHECK_FALSE(as_cut_pair(b, a, P("q")));
  CoProof u = u_cut(P("q"), a, b);
  CHECK(std::holds_alternative<Cut>(u->rule()));
  CHECK(u_cut(P("p"), a, b) == a);
}

TEST_CASE("re_atom base cases") {
  Engine e;
  CoProof a = make_node(S("p |- p, q"), Axiom{P("p")});
  CoProof b = make_node(S("q, p |- p"), Axiom{P("p")});
  CoProof r = e.re_atom(P("q"), a, b);
  CHECK(r->conclusion() == S("p |- p"));
  CHECK(r->arity() == 0);

  // Γ ⇒ Δ, q initial only through q: result is acl(τ)
  CoProof pi = make_node(S("q |- r -> q, q"), Axiom{P("q")});
  CoProof tau = make_node(S("q, q |- r -> q"), ImpR{P("r -> q")}, {make_node(S("q, q, r |- q"), Axiom{P("q")})});
  CoProof out = e.re_atom(P("q"), pi, tau);
  CHECK(out->conclusion() == S("q |- r -> q"));
  CHECK(out->premise(0)->conclusion() == S("q, r |- q"));

  CHECK(e.re_atom(P("q"), b, a) == b);
}

TEST_CASE("re_atom drops the atom from a BOX context") {
  CoProof g = wk({}, {P("q")}, unfold(go_schema(P("p"))));
  CoProof tau = wk({P("q")}, {}, unfold(go_schema(P("p"))));
  CoProof out = re(P("q"), g, tau);
  CHECK(out->conclusion() == S("box (box (p -> box p) -> p) |- box p"));
  CHECK(out->premise(0) == g->premise(0));
  check_cut_free(out, 3);
}

TEST_CASE("re for bot and implications") {
  CoProof pi = make_node(S("p |- bot, p"), Axiom{P("p")});
  CoProof tau = make_node(S("bot, p |- p"), AxBot{});
  CoProof out = re(P("bot"), pi, tau);
  CHECK(out->conclusion() == S("p |- p"));

  Formula a = P("p -> bot");
  CoProof pi2 = make_node(S("p |- p -> bot, p"), ImpR{a}, {make_node(S("p, p |- bot, p"), Axiom{P("p")})});
  CoProof tau2 = make_node(S("p -> bot, p |- p"), ImpL{a},
                           {make_node(S("bot, p |- p"), AxBot{}), make_node(S("p |- p, p"), Axiom{P("p")})});
  REQUIRE(as_cut_pair(pi2, tau2, a));
  CoProof r = re(a, pi2, tau2);
  CHECK(r->conclusion() == S("p |- p"));
  check_cut_free(r, 3);
}

TEST_CASE("gbox tau-side context drop") {
  Engine e;
  Formula bp = P("box p");
  CoProof pi = hard_left();
  Formula bbp = P("box box p"), p = P("p");
  CoProof four = make_node(S("box p |- box box p"), BoxInf{{p}, {bp}, {}, {}},
                           {ax_expand({p}, bp, {bbp}), ax_expand({p}, bp, {})});
  CoProof tau = wk({bp}, {}, four);
  REQUIRE(std::get<BoxInf>(tau->rule()).ctx_l.contains(bp));
  CoProof out = e.re(bp, pi, tau);
  CHECK(out->conclusion() == S("box p |- box box p"));
  REQUIRE(std::holds_alternative<BoxInf>(out->rule()));
  CHECK(out->premise(0) == tau->premise(0));
  check_cut_free(out, 3);
}

TEST_CASE("gbox hard case") {
  Engine e(EngineOptions{.trace = true});
  CoProof pi = hard_left(), tau = hard_right();
  REQUIRE(as_cut_pair(pi, tau, P("box p")));
  CHECK_FALSE(fragment_violation(fragment(pi, 3), false));
  CHECK_FALSE(fragment_violation(fragment(tau, 3), false));
  CoProof out = e.re(P("box p"), pi, tau);
  CHECK(out->conclusion() == S("box p |- box box p"));
  REQUIRE(std::holds_alternative<BoxInf>(out->rule()));
  const auto& r = std::get<BoxInf>(out->rule());
  CHECK(r.pi == FormulaMultiset{P("p")});
  CHECK(r.boxed == std::vector<Formula>{P("box p")});
  check_cut_free(out, 3);
  FuelReport rep = e.audit();
  CHECK_MESSAGE(rep.ok, rep.to_string());
  CHECK(rep.checked > 0);
}

TEST_CASE("miswired hard case is caught by the fuel check") {
  Engine e(EngineOptions{.trace = true, .throw_on_violation = true, .miswire_hard_case = true});
  CoProof out = e.re(P("box p"), hard_left(), hard_right());
  CHECK_THROWS_AS(fragment(out, 2), FuelViolation);
  CHECK_FALSE(e.audit().ok);
}

TEST_CASE("ce is the identity on cut-free proofs") {
  CoProof g = unfold(go_schema(P("p")));
  CoProof c = ce(g);
  CHECK(c->conclusion() == g->conclusion());
  for (std::size_t n = 0; n <= 3; ++n) CHECK(fragments_equal(fragment(c, n), fragment(g, n)));
}

TEST_CASE("ce on a base-case cut") {
  Engine e(EngineOptions{.trace = true});
  CoProof a = make_node(S("p |- p, p"), Axiom{P("p")});
  CoProof b = make_node(S("p, p |- p"), Axiom{P("p")});
  CoProof cut = make_node(S("p |- p"), Cut{P("p")}, {a, b});
  CoProof out = e.ce(cut);
  CHECK(out->conclusion() == S("p |- p"));
  CHECK(out->arity() == 0);
  FuelReport rep = e.audit();
  CHECK(rep.ok);
  CHECK(rep.max_depth == 0);
}

TEST_CASE("ce on embedded axiom fixtures") {
  Engine e(EngineOptions{.trace = true});
  for (const auto& fx : axiom_fixtures()) {
    auto t0 = std::chrono::steady_clock::now();
    CoProof in = embed(fx);
    CoProof out = e.ce(in);
    CHECK(out->conclusion() == fx.conclusion());
    for (std::size_t n = 1; n <= 4; ++n) check_cut_free(out, n);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE(fx.conclusion().to_string() << " " << ms << " ms, nodes at 4: " << fragment_node_count(fragment(out, 4)));
  }
  FuelReport rep = e.audit();
  CHECK_MESSAGE(rep.ok, rep.to_string());
}
