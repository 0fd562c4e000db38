#include "doctest.h"
#include "gocyclo/admissible.hpp"
#include "gocyclo/schema.hpp"

using namespace gocyclo;

namespace {
Formula P(std::string_view s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }

void check_valid(const CoProof& p, std::size_t n = 3) {
  auto v = fragment_violation(fragment(p, n), true);
  CHECK_MESSAGE(!v, *v);
}
}  // namespace

TEST_CASE("wk on an initial sequent and the identity case") {
  CoProof ax = make_node(S("p |- p"), Axiom{P("p")});
  CoProof w = wk({P("q")}, {}, ax);
  CHECK(w->conclusion() == S("q, p |- p"));
  CHECK(std::holds_alternative<Axiom>(w->rule()));
  CHECK(wk({}, {}, ax) == ax);
}

TEST_CASE("wk on go_schema keeps BOX premises") {
  CoProof g = unfold(go_schema(P("p")));
  CoProof w = wk({P("r")}, {P("s")}, g);
  CHECK(w->conclusion() == S("r, box (box (p -> box p) -> p) |- box p, s"));
  REQUIRE(std::holds_alternative<BoxInf>(w->rule()));
  CHECK(std::get<BoxInf>(w->rule()).ctx_l == FormulaMultiset{P("r")});
  CHECK(w->premise(0) == g->premise(0));
  CHECK(w->local_height() == g->local_height());
  check_valid(w);
}

TEST_CASE("inversions") {
  CoProof ax = make_node(S("p |- p"), Axiom{P("p")});
  CoProof r = make_node(S("|- p -> p"), ImpR{P("p -> p")}, {ax});
  CHECK(invert_impr(P("p -> p"), r)->conclusion() == S("p |- p"));
  CHECK(invert_impr(P("p -> p"), r) == ax);

  CoProof bot = make_node(S("p |- bot, p"), Axiom{P("p")});
  CoProof ib = invert_bot(bot);
  CHECK(ib->conclusion() == S("p |- p"));

  CoProof e = ax_expand({}, P("p -> q"), {});
  CoProof li = invert_impl_left(P("p -> q"), e);
  CHECK(li->conclusion() == S("q |- p -> q"));
  check_valid(li);
  CoProof ri = invert_impl_right(P("p -> q"), e);
  CHECK(ri->conclusion() == S("|- p, p -> q"));
  check_valid(ri);
  CHECK_THROWS_AS(invert_impl_left(P("q -> p"), e), TransformError);
}

TEST_CASE("inversion through BOX contexts") {
  CoProof g = wk({P("a -> b")}, {P("c -> d"), P("bot")}, unfold(go_schema(P("p"))));
  CoProof li = invert_impl_left(P("a -> b"), g);
  CHECK(li->conclusion() == S("b, box (box (p -> box p) -> p) |- box p, c -> d, bot"));
  CoProof i = invert_impr(P("c -> d"), li);
  CHECK(i->conclusion() == S("c, b, box (box (p -> box p) -> p) |- box p, d, bot"));
  CoProof ib = invert_bot(i);
  CHECK(ib->conclusion() == S("c, b, box (box (p -> box p) -> p) |- box p, d"));
  CHECK(ib->local_height() == 4);
  check_valid(ib);
}

TEST_CASE("atomic contraction") {
  CoProof ax = make_node(S("p, p |- p"), Axiom{P("p")});
  CHECK(contract_atom_left(P("p"), ax)->conclusion() == S("p |- p"));
  CoProof ax2 = make_node(S("q |- p, p, q"), Axiom{P("q")});
  CHECK(contract_atom_right(P("p"), ax2)->conclusion() == S("q |- p, q"));
  CHECK_THROWS_AS(contract_atom_left(P("q"), ax), TransformError);

  CoProof inner = make_node(S("p, p, q |- r, q"), Axiom{P("q")});
  CoProof r = make_node(S("p, p |- q -> r, q"), ImpR{P("q -> r")}, {inner});
  CoProof c = contract_atom_left(P("p"), r);
  CHECK(c->conclusion() == S("p |- q -> r, q"));
  CHECK(std::holds_alternative<ImpR>(c->rule()));
  CHECK(c->premise(0)->conclusion() == S("p, q |- r, q"));
}

TEST_CASE("clip and weaken_to") {
  CoProof ax = make_node(S("p |- p"), Axiom{P("p")});
  CHECK(clip(ax) == ax);
  CoProof g = unfold(go_schema(P("p")));
  CHECK(clip(g) == g);
  CoProof w = wk({P("r")}, {P("s")}, g);
  CoProof c = clip(w);
  CHECK(c->conclusion() == g->conclusion());
  CHECK(c->premise(1) == g->premise(1));
  CHECK(fragments_equal(fragment(c, 3), fragment(g, 3)));

  CHECK(weaken_to(ax, S("q, p |- p, r"))->conclusion() == S("q, p |- p, r"));
  CHECK_THROWS_AS(weaken_to(ax, S("q |- p")), TransformError);
}
