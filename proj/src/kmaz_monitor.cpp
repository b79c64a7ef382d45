#include "slicemon/kmaz_monitor.hpp"

#include "slicemon/error.hpp"
#include "slicemon/relations.hpp"

#include <array>
#include <deque>
#include <map>

namespace slicemon {

namespace {

Nfa as_nfa(const Dfa& d) {
  Nfa n(d.alphabet(), d.states());
  n.add_initial(d.initial());
  for (State q = 0; q < d.states(); ++q) {
    n.set_accepting(q, d.accepting(q));
    for (Label a = 0; a < d.alphabet().size(); ++a)
      n.add_transition(q, a, d.next(q, a));
  }
  return n;
}

} // namespace

Nfa single_swap_closure(const Nfa& base) {
  const auto& sigma = base.alphabet();
  const Label L = static_cast<Label>(sigma.size());
  std::vector<std::vector<Label>> indep(L);
  for (Label a = 0; a < L; ++a)
    for (Label b = 0; b < L; ++b)
      if (independent(sigma.label(a), sigma.label(b)))
        indep[b].push_back(a);

  // Kinds: 0 = no swap yet, 1 = holding back `b` until the next label, 2 = swap done.
  using Key = std::array<std::uint32_t, 3>;
  std::map<Key, State> ids;
  std::vector<Key> keys;
  std::deque<State> work;
  auto intern = [&](const Key& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<State>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      work.push_back(it->second);
    }
    return it->second;
  };
  std::vector<std::array<State, 3>> edges; // from, label, to
  for (auto q : base.initial())
    intern({0, q, 0});
  while (!work.empty()) {
    State id = work.front();
    work.pop_front();
    const Key k = keys[id];
    if (k[0] == 1) {
      const Label b = k[2];
      for (auto a : indep[b])
        for (auto r : base.successors(k[1], a))
          for (auto s : base.successors(r, b))
            edges.push_back({id, a, intern({2, s, 0})});
      continue;
    }
    for (Label l = 0; l < L; ++l) {
      for (auto r : base.successors(k[1], l))
        edges.push_back({id, l, intern({k[0], r, 0})});
      if (k[0] == 0 && !indep[l].empty())
        edges.push_back({id, l, intern({1, k[1], l})});
    }
  }

  // Keep states that can still reach acceptance, plus the initial ones.
  std::vector<std::vector<State>> rev(keys.size());
  for (const auto& e : edges)
    rev[e[2]].push_back(e[0]);
  std::vector<bool> useful(keys.size(), false);
  std::vector<State> stack;
  for (State id = 0; id < keys.size(); ++id)
    if (keys[id][0] != 1 && base.accepting(keys[id][1])) {
      useful[id] = true;
      stack.push_back(id);
    }
  while (!stack.empty()) {
    State id = stack.back();
    stack.pop_back();
    for (auto p : rev[id])
      if (!useful[p]) {
        useful[p] = true;
        stack.push_back(p);
      }
  }
  for (auto q : base.initial())
    useful[ids.at({0, q, 0})] = true;
  std::vector<State> renum(keys.size());
  State next = 0;
  for (State id = 0; id < keys.size(); ++id)
    renum[id] = useful[id] ? next++ : 0;

  Nfa out(sigma, next);
  for (auto q : base.initial())
    out.add_initial(renum[ids.at({0, q, 0})]);
  for (State id = 0; id < keys.size(); ++id)
    if (useful[id] && keys[id][0] != 1 && base.accepting(keys[id][1]))
      out.set_accepting(renum[id]);
  for (const auto& e : edges)
    if (useful[e[0]] && useful[e[2]])
      out.add_transition(renum[e[0]], e[1], renum[e[2]]);
  return out;
}

Nfa build_kmaz_nfa(const Dfa& spec, unsigned k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  Nfa n = as_nfa(spec);
  for (unsigned i = 0; i < k; ++i)
    n = single_swap_closure(n);
  return n;
}

bool kmaz_monitor_run(const Trace& t, const Dfa& spec, unsigned k) {
  return accepts(build_kmaz_nfa(spec, k), t);
}

} // namespace slicemon
