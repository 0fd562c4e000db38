#include "gocyclo/coproof.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace gocyclo {

CoNode::CoNode(Sequent conclusion, Rule rule)
    : conclusion_(std::move(conclusion)), rule_(std::move(rule)), arity_(gocyclo::arity(rule_)) {}

std::vector<CoProof> CoNode::premises() const {
  std::vector<CoProof> out;
  for (std::size_t i = 0; i < arity_; ++i) out.push_back(premise(i));
  return out;
}

Sequent CoNode::premise_conclusion(std::size_t i) const {
  const Sequent& c = conclusion_;
  return std::visit(
      overloaded{
          [&](const ImpR& r) { return Sequent{c.ante.with(r.principal.left()),
                                              c.succ.without(r.principal).with(r.principal.right())}; },
          [&](const ImpL& r) {
            FormulaMultiset g = c.ante.without(r.principal);
            return i == 0 ? Sequent{g.with(r.principal.right()), c.succ} : Sequent{g, c.succ.with(r.principal.left())};
          },
          [&](const Cut& r) {
            return i == 0 ? Sequent{c.ante, c.succ.with(r.cut_formula)} : Sequent{c.ante.with(r.cut_formula), c.succ};
          },
          [&](const BoxInf& r) {
            if (i == 0) return Sequent{boxtimes(r.pi), boxtimes(FormulaMultiset(r.boxed))};
            return Sequent{boxtimes(r.pi), FormulaMultiset{r.boxed.at(i - 1)}};
          },
          [&](const BoxGo& r) {
            FormulaMultiset a = boxtimes(r.pi);
            a.add(Formula::box(Formula::implies(r.a, Formula::box(r.a))));
            return Sequent{a, FormulaMultiset{r.a}};
          },
          [&](const auto&) -> Sequent { return premise(i)->conclusion(); },
      },
      rule_);
}

std::size_t CoNode::local_height() const {
  long cached = height_.load(std::memory_order_acquire);
  if (cached >= 0) return static_cast<std::size_t>(cached);
  std::size_t h = 0;
  if (std::holds_alternative<BoxInf>(rule_)) {
    h = 1 + premise(0)->local_height();
  } else {
    for (std::size_t i = 0; i < arity_; ++i) h = std::max(h, 1 + premise(i)->local_height());
  }
  height_.store(static_cast<long>(h), std::memory_order_release);
  return h;
}

namespace {

class StrictNode final : public CoNode {
 public:
  StrictNode(Sequent c, Rule r, std::vector<CoProof> prem) : CoNode(std::move(c), std::move(r)), prem_(std::move(prem)) {
    if (prem_.size() != arity())
      throw std::invalid_argument("rule " + rule_to_string(rule()) + " given " + std::to_string(prem_.size()) +
                                  " premises");
  }
  CoProof premise(std::size_t i) const override { return prem_.at(i); }

 private:
  std::vector<CoProof> prem_;
};

class LazyNode final : public CoNode {
 public:
  LazyNode(Sequent c, Rule r, std::function<CoProof(std::size_t)> thunk)
      : CoNode(std::move(c), std::move(r)),
        thunk_(std::move(thunk)),
        flags_(std::make_unique<std::once_flag[]>(arity())),
        cache_(arity()) {}

  CoProof premise(std::size_t i) const override {
    if (i >= arity()) throw std::out_of_range("premise index");
    std::call_once(flags_[i], [&] {
      cache_[i] = thunk_(i);
      if (!cache_[i]) throw std::logic_error("lazy premise produced no proof");
    });
    return cache_[i];
  }

 private:
  std::function<CoProof(std::size_t)> thunk_;
  std::unique_ptr<std::once_flag[]> flags_;
  mutable std::vector<CoProof> cache_;
};

struct UnfoldState;

class GraphNodeView final : public CoNode {
 public:
  GraphNodeView(Sequent c, Rule r) : CoNode(std::move(c), std::move(r)) {}
  CoProof premise(std::size_t i) const override;

  std::weak_ptr<UnfoldState> state;
  std::vector<std::size_t> prem;
};

struct UnfoldState {
  std::vector<std::unique_ptr<GraphNodeView>> nodes;
};

CoProof GraphNodeView::premise(std::size_t i) const {
  auto s = state.lock();
  if (!s) throw std::logic_error("unfolding state released");
  const GraphNodeView* n = s->nodes.at(prem.at(i)).get();
  return CoProof(s, n);
}

}  // namespace

CoProof make_node(Sequent conclusion, Rule rule, std::vector<CoProof> premises) {
  return std::make_shared<StrictNode>(std::move(conclusion), std::move(rule), std::move(premises));
}

CoProof make_lazy(Sequent conclusion, Rule rule, std::function<CoProof(std::size_t)> thunk) {
  if (arity(rule) == 0) return make_node(std::move(conclusion), std::move(rule));
  return std::make_shared<LazyNode>(std::move(conclusion), std::move(rule), std::move(thunk));
}

CoProof make_initial(const Sequent& s) { return make_node(s, initial_rule(s)); }

std::string ValidityReport::to_string() const {
  if (accepted) return "accepted";
  std::string out = "rejected";
  for (const auto& e : schema_errors) out += "\n  schema: " + e;
  if (!cycle.empty()) {
    out += "\n  cycle avoiding right premises of BOX: ";
    for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? " -> " : "") + cycle[i];
  }
  return out;
}

ValidityReport check_cyclic(const ProofGraph& g) {
  ValidityReport rep;
  try {
    g.validate_references();
  } catch (const std::invalid_argument& e) {
    rep.accepted = false;
    rep.schema_errors.push_back(e.what());
    return rep;
  }
  std::vector<std::string> reach = g.reachable();
  LocalCheckOptions opt{Calculus::Inf, true, false};
  for (const auto& id : reach) {
    const GraphNode& n = g.at(id);
    std::vector<Sequent> prem;
    for (const auto& p : n.premises) prem.push_back(g.at(p).sequent);
    if (auto e = local_violation(n.sequent, n.rule, prem, opt)) rep.schema_errors.push_back(id + ": " + *e);
  }

  // Iterative DFS over edges that are not right premises of BOX.
  std::map<std::string, int> colour;  // 0 white, 1 on stack, 2 done
  std::vector<std::string> path;
  std::function<bool(const std::string&)> dfs = [&](const std::string& id) -> bool {
    colour[id] = 1;
    path.push_back(id);
    const GraphNode& n = g.at(id);
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      if (is_right_box_premise(n.rule, i)) continue;
      const std::string& q = n.premises[i];
      int c = colour[q];
      if (c == 1) {
        auto it = std::find(path.begin(), path.end(), q);
        rep.cycle.assign(it, path.end());
        rep.cycle.push_back(q);
        return true;
      }
      if (c == 0 && dfs(q)) return true;
    }
    path.pop_back();
    colour[id] = 2;
    return false;
  };
  for (const auto& id : reach) {
    if (colour[id] == 0 && dfs(id)) break;
  }
  rep.accepted = rep.schema_errors.empty() && rep.cycle.empty();
  return rep;
}

CoProof unfold_unchecked(const ProofGraph& g) {
  g.validate_references();
  auto state = std::make_shared<UnfoldState>();
  std::map<std::string, std::size_t> index;
  for (const auto& id : g.ids()) {
    index[id] = state->nodes.size();
    const GraphNode& n = g.at(id);
    state->nodes.push_back(std::make_unique<GraphNodeView>(n.sequent, n.rule));
  }
  for (const auto& id : g.ids()) {
    GraphNodeView& v = *state->nodes[index[id]];
    v.state = state;
    for (const auto& p : g.at(id).premises) v.prem.push_back(index.at(p));
  }
  const GraphNodeView* root = state->nodes[index.at(g.root)].get();
  return CoProof(state, root);
}

CoProof unfold(const ProofGraph& g) {
  ValidityReport rep = check_cyclic(g);
  if (!rep.accepted) throw std::invalid_argument("invalid cyclic proof: " + rep.to_string());
  return unfold_unchecked(g);
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void*, std::size_t>& k) const noexcept {
    return std::hash<const void*>{}(k.first) * 31 + k.second;
  }
};

class FragmentBuilder {
 public:
  Fragment build(const CoProof& p, std::size_t n) {
    auto key = std::make_pair(static_cast<const void*>(p.get()), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto node = std::make_shared<FragmentNode>();
    node->sequent = p->conclusion();
    if (n == 0) {
      node->rule = Open{};
    } else {
      node->rule = p->rule();
      for (std::size_t i = 0; i < p->arity(); ++i) {
        if (is_right_box_premise(p->rule(), i)) {
          if (n == 1) {
            auto open = std::make_shared<FragmentNode>();
            open->sequent = p->premise_conclusion(i);
            open->rule = Open{};
            node->children.push_back(open);
          } else {
            node->children.push_back(build(p->premise(i), n - 1));
          }
        } else {
          node->children.push_back(build(p->premise(i), n));
        }
      }
    }
    memo_.emplace(key, node);
    keep_.push_back(p);
    return node;
  }

 private:
  std::unordered_map<std::pair<const void*, std::size_t>, Fragment, PairHash> memo_;
  std::vector<CoProof> keep_;
};

}  // namespace

Fragment fragment(const CoProof& p, std::size_t n) {
  FragmentBuilder b;
  return b.build(p, n);
}

bool fragments_equal(const Fragment& a, const Fragment& b) {
  std::set<std::pair<const FragmentNode*, const FragmentNode*>> same;
  std::function<bool(const Fragment&, const Fragment&)> eq = [&](const Fragment& x, const Fragment& y) -> bool {
    if (x == y) return true;
    if (same.count({x.get(), y.get()})) return true;
    if (x->sequent != y->sequent || !(x->rule == y->rule) || x->children.size() != y->children.size()) return false;
    for (std::size_t i = 0; i < x->children.size(); ++i)
      if (!eq(x->children[i], y->children[i])) return false;
    same.insert({x.get(), y.get()});
    return true;
  };
  return eq(a, b);
}

bool equal_upto(const CoProof& a, const CoProof& b, std::size_t n) {
  std::set<std::tuple<const CoNode*, const CoNode*, std::size_t>> same;
  std::function<bool(const CoProof&, const CoProof&, std::size_t)> eq = [&](const CoProof& x, const CoProof& y,
                                                                         std::size_t k) -> bool {
    if (k == 0) return x->conclusion() == y->conclusion();
    if (x == y) return true;
    if (same.count({x.get(), y.get(), k})) return true;
    if (x->conclusion() != y->conclusion() || !(x->rule() == y->rule())) return false;
    for (std::size_t i = 0; i < x->arity(); ++i) {
      if (is_right_box_premise(x->rule(), i)) {
        if (k > 1 && !eq(x->premise(i), y->premise(i), k - 1)) return false;
      } else if (!eq(x->premise(i), y->premise(i), k)) {
        return false;
      }
    }
    same.insert({x.get(), y.get(), k});
    return true;
  };
  return eq(a, b, n);
}

namespace {
template <typename F>
void for_each_node(const Fragment& f, F&& visit) {
  std::set<const FragmentNode*> seen;
  std::vector<const FragmentNode*> stack{f.get()};
  while (!stack.empty()) {
    const FragmentNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    visit(*n);
    for (const auto& c : n->children) stack.push_back(c.get());
  }
}
}  // namespace

std::size_t fragment_node_count(const Fragment& f) {
  std::function<std::size_t(const FragmentNode&)> count = [&](const FragmentNode& n) -> std::size_t {
    std::size_t k = 1;
    for (const auto& c : n.children) k += count(*c);
    return k;
  };
  return count(*f);
}

bool fragment_has_cut(const Fragment& f) {
  bool found = false;
  for_each_node(f, [&](const FragmentNode& n) { found = found || is_cut(n.rule); });
  return found;
}

std::optional<std::string> fragment_violation(const Fragment& f, bool allow_cut) {
  std::optional<std::string> out;
  LocalCheckOptions opt{Calculus::Inf, allow_cut, true};
  for_each_node(f, [&](const FragmentNode& n) {
    if (out || std::holds_alternative<Open>(n.rule)) return;
    std::vector<Sequent> prem;
    for (const auto& c : n.children) prem.push_back(c->sequent);
    if (auto e = local_violation(n.sequent, n.rule, prem, opt)) out = n.sequent.to_string() + ": " + *e;
  });
  return out;
}

ProofGraph fragment_to_graph(const Fragment& f, const std::string& name) {
  ProofGraph g;
  g.name = name;
  std::unordered_map<const FragmentNode*, std::string> ids;
  std::vector<std::pair<std::string, GraphNode>> nodes;
  std::function<std::string(const Fragment&)> visit = [&](const Fragment& x) -> std::string {
    if (auto it = ids.find(x.get()); it != ids.end()) return it->second;
    std::string id = "f" + std::to_string(ids.size());
    ids.emplace(x.get(), id);
    std::size_t slot = nodes.size();
    nodes.push_back({id, GraphNode{x->sequent, x->rule, {}}});
    std::vector<std::string> prem;
    for (const auto& c : x->children) prem.push_back(visit(c));
    nodes[slot].second.premises = std::move(prem);
    return id;
  };
  g.root = visit(f);
  for (auto& [id, n] : nodes) g.add(id, std::move(n));
  return g;
}

Fragment fragment_from_graph(const ProofGraph& g) {
  g.validate_references();
  std::map<std::string, Fragment> built;
  std::set<std::string> active;
  std::function<Fragment(const std::string&)> build = [&](const std::string& id) -> Fragment {
    if (auto it = built.find(id); it != built.end()) return it->second;
    if (!active.insert(id).second) throw std::invalid_argument("fragment graph is cyclic at node '" + id + "'");
    const GraphNode& n = g.at(id);
    auto node = std::make_shared<FragmentNode>();
    node->sequent = n.sequent;
    node->rule = n.rule;
    for (const auto& p : n.premises) node->children.push_back(build(p));
    active.erase(id);
    built.emplace(id, node);
    return node;
  };
  return build(g.root);
}

std::string DistanceReport::to_string() const {
  if (!exact) return "≤ 2^-" + std::to_string(precision);
  if (agree == 0) return "1";
  return "2^-" + std::to_string(agree);
}

DistanceReport proof_distance(const CoProof& p, const CoProof& q, std::size_t precision) {
  if (precision == 0) throw std::invalid_argument("precision must be at least 1");
  for (std::size_t m = 1; m <= precision; ++m)
    if (!equal_upto(p, q, m)) return DistanceReport{m - 1, precision, true};
  return DistanceReport{precision, precision, false};
}

}  // namespace gocyclo
