#include "slicemon/oracle.hpp"

#include "slicemon/error.hpp"
#include "slicemon/relations.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace slicemon {

namespace {

void check_bound(const Trace& t, std::size_t bound) {
  if (t.size() > bound)
    throw BoundExceededError("trace of length " + std::to_string(t.size()) + " exceeds oracle bound " +
                             std::to_string(bound));
}

} // namespace

void enumerate_rf_reorderings(const Trace& t, const std::function<bool(const Trace&)>& visit, std::size_t bound) {
  check_bound(t, bound);
  const std::size_t n = t.size();
  const auto rf = reads_from(t);

  std::vector<Symbol> threads = t.threads();
  std::vector<std::vector<Pos>> queues(threads.size());
  std::unordered_map<Symbol, std::size_t> loc_ids;
  std::vector<std::size_t> loc(n + 1, 0);
  for (Pos p = 1; p <= n; ++p) {
    const Event& e = t.at(p);
    queues[std::find(threads.begin(), threads.end(), e.thread) - threads.begin()].push_back(p);
    if (e.is_access())
      loc[p] = loc_ids.emplace(e.loc, loc_ids.size()).first->second;
  }

  std::vector<std::size_t> next(threads.size(), 0);
  std::vector<Pos> last_write(loc_ids.size(), 0);
  std::vector<Event> out;
  out.reserve(n);
  bool stop = false;

  std::function<void()> rec = [&] {
    if (out.size() == n) {
      stop = !visit(Trace(out));
      return;
    }
    for (std::size_t th = 0; th < threads.size() && !stop; ++th) {
      if (next[th] == queues[th].size())
        continue;
      const Pos p = queues[th][next[th]];
      const Event& e = t.at(p);
      Pos saved = 0;
      if (e.is_read() && last_write[loc[p]] != rf.source(p).value_or(0))
        continue;
      if (e.is_write()) {
        saved = last_write[loc[p]];
        last_write[loc[p]] = p;
      }
      ++next[th];
      out.push_back(e);
      rec();
      out.pop_back();
      --next[th];
      if (e.is_write())
        last_write[loc[p]] = saved;
    }
  };
  rec();
}

std::vector<Trace> rf_reorderings(const Trace& t, std::size_t bound) {
  std::vector<Trace> out;
  enumerate_rf_reorderings(
      t,
      [&](const Trace& r) {
        out.push_back(r);
        return true;
      },
      bound);
  return out;
}

bool oracle_pre(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound) {
  bool found = false;
  enumerate_rf_reorderings(
      t,
      [&](const Trace& rho) {
        auto d = drop_count(t, rho);
        found = d && *d <= k && accepts(spec, rho);
        return !found;
      },
      bound);
  return found;
}

bool oracle_post(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound) {
  bool found = false;
  enumerate_rf_reorderings(
      t,
      [&](const Trace& rho) {
        auto d = drop_count(rho, t);
        found = d && *d <= k && accepts(spec, rho);
        return !found;
      },
      bound);
  return found;
}

std::vector<Trace> swap_ball(const Trace& t, unsigned k, std::size_t bound) {
  check_bound(t, bound);
  std::unordered_set<Trace> seen{t};
  std::vector<Trace> frontier{t}, all{t};
  for (unsigned depth = 0; depth < k && !frontier.empty(); ++depth) {
    std::vector<Trace> next;
    for (const auto& cur : frontier) {
      std::vector<Event> ev(cur.begin(), cur.end());
      for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        if (!independent(ev[i], ev[i + 1]))
          continue;
        std::swap(ev[i], ev[i + 1]);
        Trace nb(ev);
        if (seen.insert(nb).second) {
          next.push_back(nb);
          all.push_back(std::move(nb));
        }
        std::swap(ev[i], ev[i + 1]);
      }
    }
    frontier = std::move(next);
  }
  return all;
}

bool oracle_kmaz(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound) {
  for (const auto& r : swap_ball(t, k, bound))
    if (accepts(spec, r))
      return true;
  return false;
}

bool slice_star_reachable(const Trace& a, const Trace& b, std::size_t max_steps, std::size_t bound) {
  check_bound(a, bound);
  if (a == b)
    return true;
  if (!rf_equivalent(a, b))
    return false;
  std::unordered_set<Trace> seen{a};
  std::vector<Trace> frontier{a};
  for (std::size_t step = 0; step < max_steps && !frontier.empty(); ++step) {
    std::vector<Trace> next;
    bool hit = false;
    for (const auto& g : frontier) {
      enumerate_rf_reorderings(
          g,
          [&](const Trace& r) {
            auto d = drop_count(g, r);
            if (!d || *d > 1 || !seen.insert(r).second)
              return true;
            if (r == b) {
              hit = true;
              return false;
            }
            next.push_back(r);
            return true;
          },
          bound);
      if (hit)
        return true;
    }
    frontier = std::move(next);
  }
  return false;
}

bool lemma_consistency_check(const AnnotatedTrace& at) {
  const auto ev = at.events();
  const std::size_t n = ev.size();
  const Trace erased = at.erased();
  const auto rf = reads_from(erased);

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (ev[a].event.thread == ev[b].event.thread && ev[a].slice > ev[b].slice)
        return false;

  for (std::size_t r = 0; r < n; ++r) {
    const Event& e = ev[r].event;
    if (!e.is_read())
      continue;
    const unsigned i = ev[r].slice;
    auto src = rf.source(r + 1);
    for (std::size_t w = 0; w < n; ++w) {
      const Event& f = ev[w].event;
      if (!f.is_write() || f.loc != e.loc)
        continue;
      const unsigned l = ev[w].slice;
      if (!src) {
        if (l < i)
          return false;
        continue;
      }
      const std::size_t s = *src - 1;
      const unsigned j = ev[s].slice;
      if (w == s) {
        if (j > i)
          return false;
        continue;
      }
      if (j > i)
        return false;
      if (!(l <= j || l >= i))
        return false;
      if (l == i && j < i && !(r < w))
        return false;
      if (l == j && j < i && !(w < s))
        return false;
    }
  }
  return true;
}

bool definitional_consistency_check(const AnnotatedTrace& at) {
  // Events keep their identity: slot i of the concatenation is event order[i]
  // of the original, so equal labels in one thread cannot trade places.
  const auto ev = at.events();
  std::vector<std::size_t> order;
  for (unsigned s = 1; s <= at.k() + 1; ++s)
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (ev[i].slice == s)
        order.push_back(i);

  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (ev[order[a]].event.thread == ev[order[b]].event.thread && order[a] > order[b])
        return false;

  const auto rf_orig = reads_from(at.erased());
  const auto rf_cat = reads_from(at.concatenation());
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto src = rf_cat.source(i + 1);
    auto want = rf_orig.source(order[i] + 1);
    if (src.has_value() != want.has_value())
      return false;
    if (src && order[*src - 1] + 1 != *want)
      return false;
  }
  return true;
}

} // namespace slicemon
