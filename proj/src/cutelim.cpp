#include "gocyclo/cutelim.hpp"

#include <mutex>
#include <sstream>

#include "memo.hpp"

namespace gocyclo {

std::optional<CutPair> as_cut_pair(const CoProof& pi, const CoProof& tau, Formula a) {
  const Sequent& l = pi->conclusion();
  const Sequent& r = tau->conclusion();
  if (!l.succ.contains(a) || !r.ante.contains(a)) return std::nullopt;
  if (l.ante != r.ante.without(a) || l.succ.without(a) != r.succ) return std::nullopt;
  return CutPair{pi, tau, a, Sequent{l.ante, r.succ}};
}

bool fuel_decreases(const Fuel& parent, const Fuel& child) {
  if (child.depth_consumed != parent.depth_consumed) return child.depth_consumed > parent.depth_consumed;
  return child.height_budget < parent.height_budget;
}

namespace {

std::string record_line(const CallRecord& r) {
  std::ostringstream os;
  os << "#" << r.id << " " << r.family << " " << r.op << " depth=" << r.fuel.depth_consumed
     << " height=" << r.fuel.height_budget << (r.memo_hit ? " (cached)" : "");
  return os.str();
}

std::vector<CallRecord> chain_to(const std::vector<CallRecord>& trace, std::size_t id) {
  std::vector<CallRecord> out;
  for (std::optional<std::size_t> at = id; at; at = trace[*at].parent) out.insert(out.begin(), trace[*at]);
  return out;
}

}  // namespace

std::string FuelReport::to_string() const {
  std::ostringstream os;
  os << (ok ? "fuel audit passed" : "fuel audit FAILED") << ": " << calls << " calls, " << checked
     << " same-family steps, max depth " << max_depth;
  for (const auto& r : violation) os << "\n  " << record_line(r);
  return os.str();
}

FuelReport fuel_audit(const std::vector<CallRecord>& trace) {
  FuelReport rep;
  rep.calls = trace.size();
  for (const auto& r : trace) {
    rep.max_depth = std::max(rep.max_depth, r.fuel.depth_consumed);
    if (!r.parent) continue;
    const CallRecord& p = trace.at(*r.parent);
    if (p.family != r.family) continue;
    ++rep.checked;
    if (rep.ok && !fuel_decreases(p.fuel, r.fuel)) {
      rep.ok = false;
      rep.violation = chain_to(trace, r.id);
    }
  }
  return rep;
}

namespace detail {

struct EngineState {
  EngineOptions options;
  NodeMemo memo;
  mutable std::mutex trace_mu;
  std::vector<CallRecord> trace;
};

}  // namespace detail

namespace {

using State = std::shared_ptr<detail::EngineState>;

// Where new engine calls attach: the enclosing call and the number of right
// BOX premises crossed to get here.
struct Frame {
  const detail::EngineState* state = nullptr;
  std::optional<std::size_t> call;
  std::size_t level = 0;
};

thread_local std::vector<Frame> frames;

struct FrameGuard {
  explicit FrameGuard(const Frame& f) { frames.push_back(f); }
  ~FrameGuard() { frames.pop_back(); }
  FrameGuard(const FrameGuard&) = delete;
  FrameGuard& operator=(const FrameGuard&) = delete;
};

Frame current(const State& st) {
  if (!frames.empty() && frames.back().state == st.get()) return frames.back();
  return Frame{st.get(), std::nullopt, 0};
}

std::optional<std::size_t> record(const State& st, const Frame& f, const std::string& family, const std::string& op,
                                  const std::vector<CoProof>& args, bool hit) {
  CallRecord r;
  r.parent = f.call;
  r.family = family;
  r.op = op;
  r.fuel.depth_consumed = f.level;
  for (const auto& a : args) r.fuel.height_budget += a->local_height();
  r.memo_hit = hit;
  std::lock_guard lock(st->trace_mu);
  r.id = st->trace.size();
  st->trace.push_back(r);
  if (st->options.throw_on_violation && r.parent) {
    const CallRecord& p = st->trace[*r.parent];
    if (p.family == r.family && !fuel_decreases(p.fuel, r.fuel)) {
      std::string msg = "recursive call does not decrease its fuel:";
      for (const auto& c : chain_to(st->trace, r.id)) msg += "\n  " + record_line(c);
      throw FuelViolation(msg);
    }
  }
  return r.id;
}

CoProof call(const State& st, const std::string& family, const std::string& op, const std::vector<CoProof>& args,
             const std::function<CoProof()>& body) {
  Frame f = current(st);
  const std::string key = family + " " + op;
  if (st->options.memoize) {
    if (CoProof hit = st->memo.find(key, args, f.level)) {
      if (st->options.trace) record(st, f, family, op, args, true);
      return hit;
    }
  }
  std::optional<std::size_t> id;
  if (st->options.trace) id = record(st, f, family, op, args, false);
  CoProof out;
  {
    FrameGuard g(Frame{st.get(), id, f.level});
    out = body();
  }
  if (st->options.memoize) st->memo.store(key, args, out, f.level);
  return out;
}

// Node produced by the current call. Premise thunks run in the frame of that
// call, one level deeper for right premises of BOX.
CoProof engine_node(const State& st, Sequent c, Rule r, std::function<CoProof(std::size_t)> body) {
  Frame f = current(st);
  bool box = std::holds_alternative<BoxInf>(r);
  return make_lazy(std::move(c), std::move(r), [st, f, box, body = std::move(body)](std::size_t i) {
    Frame g = f;
    if (box && i > 0) ++g.level;
    FrameGuard guard(g);
    return body(i);
  });
}

CoProof forward(Sequent c, Rule r, const CoProof& p) {
  return make_lazy(std::move(c), std::move(r), [p](std::size_t i) { return p->premise(i); });
}

bool is_axiom(const CoProof& p) {
  return std::holds_alternative<Axiom>(p->rule()) || std::holds_alternative<AxBot>(p->rule());
}

void expect_endpoint(const CoProof& p, const Sequent& s, const char* what) {
  if (p->conclusion() != s)
    throw std::logic_error(std::string(what) + " proves " + p->conclusion().to_string() + ", expected " +
                           s.to_string());
}

CoProof re_impl(const State& st, Formula a, const CoProof& pi, const CoProof& tau);

CoProof re_atom_impl(const State& st, Formula q, const CoProof& pi, const CoProof& tau) {
  return call(st, "re " + q.to_string(), "re", {pi, tau}, [&]() -> CoProof {
    auto cp = as_cut_pair(pi, tau, q);
    if (!cp) return pi;
    const Sequent& res = cp->cut_result;
    if (is_axiom(pi)) return is_initial_inf(res) ? make_initial(res) : contract_atom_left(q, tau);
    return std::visit(
        overloaded{
            [&](const ImpR& r) {
              return engine_node(st, res, r, [st, q, pi, tau, r](std::size_t) {
                return re_atom_impl(st, q, pi->premise(0), invert_impr(r.principal, tau));
              });
            },
            [&](const ImpL& r) {
              return engine_node(st, res, r, [st, q, pi, tau, r](std::size_t i) {
                return i == 0 ? re_atom_impl(st, q, pi->premise(0), invert_impl_left(r.principal, tau))
                              : re_atom_impl(st, q, pi->premise(1), invert_impl_right(r.principal, tau));
              });
            },
            [&](const Cut& r) {
              return engine_node(st, res, r, [st, q, pi, tau, r](std::size_t i) {
                return i == 0 ? re_atom_impl(st, q, pi->premise(0), wk({}, {r.cut_formula}, tau))
                              : re_atom_impl(st, q, pi->premise(1), wk({r.cut_formula}, {}, tau));
              });
            },
            [&](const BoxInf& r) {
              // An atom is never boxed, so q sits in the right context.
              BoxInf nr = r;
              if (nr.ctx_r.remove(q) != 1) throw std::logic_error("re: atom missing from BOX context");
              return forward(res, nr, pi);
            },
            [&](const auto& r) -> CoProof { throw std::logic_error("re: unexpected rule " + rule_to_string(r)); },
        },
        pi->rule());
  });
}

// Right premises of the new BOX in the □-against-□ case come either from the
// left proof (premise index) or from the right proof (index into its boxed).
struct HardSource {
  bool from_left;
  std::size_t premise;
};

CoProof hard_case(const State& st, Formula b, const RemovingMap& u, const CoProof& pi, const CoProof& tau,
                  const BoxInf& r, const BoxInf& s, const Sequent& res) {
  const Formula bb = Formula::box(b);
  const FormulaMultiset& big_pi = r.pi;
  FormulaMultiset lambda = s.pi;
  if (lambda.remove(b) != 1) throw std::logic_error("gbox: □" + b.to_string() + " is not principal on the right");
  const FormulaMultiset big_u = set_union(big_pi, lambda);

  std::size_t b_at = r.boxed.size();
  for (std::size_t k = 0; k < r.boxed.size() && b_at == r.boxed.size(); ++k)
    if (r.boxed[k] == b) b_at = k;
  if (b_at == r.boxed.size()) throw std::logic_error("gbox: □" + b.to_string() + " is not principal on the left");

  std::vector<std::pair<Formula, HardSource>> entries;
  FormulaMultiset a_vec, d;
  for (std::size_t k = 0; k < r.boxed.size(); ++k) {
    if (k == b_at) continue;
    entries.push_back({r.boxed[k], HardSource{true, k + 1}});
    a_vec.add(r.boxed[k]);
  }
  d = a_vec;
  FormulaMultiset seen;
  for (std::size_t j = 0; j < s.boxed.size(); ++j) {
    Formula c = s.boxed[j];
    seen.add(c);
    if (seen.count(c) > a_vec.count(c)) {
      entries.push_back({c, HardSource{false, j + 1}});
      d.add(c);
    }
  }

  const FormulaMultiset xu = boxtimes(big_u), xd = boxtimes(d);
  if (!is_submultiset(box_all(big_u), res.ante) || !is_submultiset(box_all(d), res.succ))
    throw std::logic_error("gbox: new BOX does not fit the cut result " + res.to_string());
  std::vector<HardSource> sources;
  BoxInf nr = make_box_inf(big_u, entries, difference(res.ante, box_all(big_u)), difference(res.succ, box_all(d)),
                           sources);
  const bool miswire = st->options.miswire_hard_case;

  return engine_node(st, res, nr, [=](std::size_t i) -> CoProof {
    if (i == 0) {
      CoProof pi0 = miswire ? clip(pi) : pi->premise(0);
      CoProof psi1 = u(weaken_to(pi0, Sequent{xu, sum(xd, {b, bb})}), weaken_to(clip(tau), Sequent{xu.with(bb), xd.with(b)}));
      CoProof psi2 = u(weaken_to(clip(pi), Sequent{xu.with(b), xd.with(bb)}), weaken_to(tau->premise(0), Sequent{sum(xu, {b, bb}), xd}));
      CoProof out = re_impl(st, b, psi1, psi2);
      expect_endpoint(out, Sequent{xu, xd}, "gbox left premise");
      return out;
    }
    const HardSource& src = sources.at(i - 1);
    Formula target = nr.boxed.at(i - 1);
    if (src.from_left) return weaken_to(pi->premise(src.premise), Sequent{xu, {target}});
    CoProof pi_b = pi->premise(b_at + 1);
    CoProof pi_b_boxed = make_node(Sequent{boxtimes(big_pi), {bb}}, BoxInf{big_pi, {b}, big_pi, {}},
                                   {wk({}, {bb}, pi_b), pi_b});
    CoProof x = weaken_to(pi_b_boxed, Sequent{xu, {target, bb}});
    CoProof y = re_impl(st, b, weaken_to(pi_b, Sequent{xu.with(bb), {target, b}}),
                        weaken_to(tau->premise(src.premise), Sequent{sum(xu, {b, bb}), {target}}));
    CoProof out = u(x, y);
    expect_endpoint(out, Sequent{xu, {target}}, "gbox right premise");
    return out;
  });
}

CoProof gbox_body(const State& st, Formula b, const RemovingMap& u, const CoProof& pi, const CoProof& tau) {
  const Formula bb = Formula::box(b);
  auto cp = as_cut_pair(pi, tau, bb);
  if (!cp) return pi;
  const Sequent res = cp->cut_result;
  if (is_axiom(pi) || is_axiom(tau)) return make_initial(res);

  auto tau_side = [&](const BoxInf& r) -> CoProof {
    return std::visit(
        overloaded{
            [&](const ImpR& s) {
              return engine_node(st, res, s, [u, pi, tau, s](std::size_t) {
                return u(invert_impr(s.principal, pi), tau->premise(0));
              });
            },
            [&](const ImpL& s) {
              return engine_node(st, res, s, [u, pi, tau, s](std::size_t i) {
                return i == 0 ? u(invert_impl_left(s.principal, pi), tau->premise(0))
                              : u(invert_impl_right(s.principal, pi), tau->premise(1));
              });
            },
            [&](const Cut& s) {
              return engine_node(st, res, s, [u, pi, tau, s](std::size_t i) {
                return i == 0 ? u(wk({}, {s.cut_formula}, pi), tau->premise(0))
                              : u(wk({s.cut_formula}, {}, pi), tau->premise(1));
              });
            },
            [&](const BoxInf& s) -> CoProof {
              if (s.ctx_l.contains(bb)) {
                BoxInf ns = s;
                ns.ctx_l.remove(bb);
                return forward(res, ns, tau);
              }
              return hard_case(st, b, u, pi, tau, r, s, res);
            },
            [&](const auto& s) -> CoProof { throw std::logic_error("gbox: unexpected rule " + rule_to_string(s)); },
        },
        tau->rule());
  };

  return std::visit(
      overloaded{
          [&](const ImpR& r) {
            return engine_node(st, res, r, [u, pi, tau, r](std::size_t) {
              return u(pi->premise(0), invert_impr(r.principal, tau));
            });
          },
          [&](const ImpL& r) {
            return engine_node(st, res, r, [u, pi, tau, r](std::size_t i) {
              return i == 0 ? u(pi->premise(0), invert_impl_left(r.principal, tau))
                            : u(pi->premise(1), invert_impl_right(r.principal, tau));
            });
          },
          [&](const Cut& r) {
            return engine_node(st, res, r, [u, pi, tau, r](std::size_t i) {
              return i == 0 ? u(pi->premise(0), wk({}, {r.cut_formula}, tau))
                            : u(pi->premise(1), wk({r.cut_formula}, {}, tau));
            });
          },
          [&](const BoxInf& r) -> CoProof {
            if (r.ctx_r.contains(bb)) {
              BoxInf nr = r;
              nr.ctx_r.remove(bb);
              return forward(res, nr, pi);
            }
            return tau_side(r);
          },
          [&](const auto& r) -> CoProof { throw std::logic_error("gbox: unexpected rule " + rule_to_string(r)); },
      },
      pi->rule());
}

CoProof re_impl(const State& st, Formula a, const CoProof& pi, const CoProof& tau) {
  switch (a.kind()) {
    case FormulaKind::Atom:
      return re_atom_impl(st, a, pi, tau);
    case FormulaKind::Bottom:
      return call(st, "re bot", "re", {pi, tau}, [&]() -> CoProof {
        return as_cut_pair(pi, tau, a) ? invert_bot(pi) : pi;
      });
    case FormulaKind::Implies:
      return call(st, "re " + a.to_string(), "re", {pi, tau}, [&]() -> CoProof {
        if (!as_cut_pair(pi, tau, a)) return pi;
        Formula b = a.left(), c = a.right();
        CoProof inner = re_impl(st, b, wk({}, {c}, invert_impl_right(a, tau)), invert_impr(a, pi));
        return re_impl(st, c, inner, invert_impl_left(a, tau));
      });
    case FormulaKind::Box: {
      Formula b = a.body();
      RemovingMap u = [st, a](const CoProof& x, const CoProof& y) { return re_impl(st, a, x, y); };
      return call(st, "re " + a.to_string(), "re", {pi, tau}, [&] { return gbox_body(st, b, u, pi, tau); });
    }
  }
  throw std::logic_error("unreachable");
}

CoProof ce_impl(const State& st, const CoProof& p) {
  return call(st, "ce", "ce", {p}, [&]() -> CoProof {
    if (is_axiom(p)) return p;
    if (const auto* r = std::get_if<Cut>(&p->rule())) {
      CoProof l = ce_impl(st, p->premise(0));
      CoProof rt = ce_impl(st, p->premise(1));
      return re_impl(st, r->cut_formula, l, rt);
    }
    if (std::holds_alternative<BoxGo>(p->rule()) || std::holds_alternative<Open>(p->rule()))
      throw std::invalid_argument("ce: unexpected rule " + rule_to_string(p->rule()));
    return engine_node(st, p->conclusion(), p->rule(), [st, p](std::size_t i) { return ce_impl(st, p->premise(i)); });
  });
}

}  // namespace

Engine::Engine(EngineOptions options) : state_(std::make_shared<detail::EngineState>()) {
  state_->options = options;
}

CoProof Engine::re_atom(Formula q, const CoProof& pi, const CoProof& tau) {
  if (!q.is_atom()) throw std::invalid_argument("re_atom: " + q.to_string() + " is not an atom");
  return re_atom_impl(state_, q, pi, tau);
}

CoProof Engine::gbox_step(Formula b, const RemovingMap& u, const CoProof& pi, const CoProof& tau) {
  const State& st = state_;
  return call(st, "re " + Formula::box(b).to_string(), "gbox_step", {pi, tau},
              [&] { return gbox_body(st, b, u, pi, tau); });
}

CoProof Engine::re(Formula a, const CoProof& pi, const CoProof& tau) { return re_impl(state_, a, pi, tau); }

CoProof Engine::ce(const CoProof& p) { return ce_impl(state_, p); }

const EngineOptions& Engine::options() const { return state_->options; }

std::vector<CallRecord> Engine::trace() const {
  std::lock_guard lock(state_->trace_mu);
  return state_->trace;
}

FuelReport Engine::audit() const { return fuel_audit(trace()); }

CoProof u_cut(Formula a, const CoProof& pi, const CoProof& tau) {
  auto cp = as_cut_pair(pi, tau, a);
  if (!cp) return pi;
  return make_node(cp->cut_result, Cut{a}, {pi, tau});
}

CoProof re(Formula a, const CoProof& pi, const CoProof& tau) { return Engine().re(a, pi, tau); }

CoProof ce(const CoProof& p) { return Engine().ce(p); }

}  // namespace gocyclo
