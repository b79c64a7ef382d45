#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace slicemon;

inline Trace T(std::string_view text) { return parse_trace(text); }

inline std::vector<Symbol> names(const char* base, std::size_t n) {
  std::vector<Symbol> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(Symbol::intern(base + std::to_string(i)));
  return out;
}

/// All r/w labels over threads T1..Tt and locations x1..xl, plus b/e if asked.
inline std::vector<Event> universe(std::size_t threads, std::size_t locs, bool boundaries = false) {
  std::vector<Event> out;
  for (auto t : names("T", threads)) {
    for (auto x : names("x", locs)) {
      out.push_back(Event{t, Op::Read, x});
      out.push_back(Event{t, Op::Write, x});
    }
    if (boundaries) {
      out.push_back(Event{t, Op::Begin, {}});
      out.push_back(Event{t, Op::End, {}});
    }
  }
  return out;
}

inline Trace random_trace(std::mt19937_64& rng, const std::vector<Event>& labels, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  std::vector<Event> ev;
  for (std::size_t i = 0; i < n; ++i)
    ev.push_back(labels[pick(rng)]);
  return Trace(std::move(ev));
}

/// Calls fn on every trace of length exactly n over `labels`.
template <class Fn> void for_each_word(const std::vector<Event>& labels, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> digits(n, 0);
  std::vector<Event> ev(n, labels.empty() ? Event{} : labels[0]);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      ev[i] = labels[digits[i]];
    fn(Trace(ev));
    std::size_t i = n;
    while (i > 0 && ++digits[i - 1] == labels.size())
      digits[--i] = 0;
    if (i == 0)
      return;
  }
}

inline AnnotatedTrace random_annotation(std::mt19937_64& rng, const Trace& t, unsigned k) {
  std::uniform_int_distribution<unsigned> slice(1, k + 1);
  std::vector<AnnotatedEvent> ev;
  for (const auto& e : t)
    ev.push_back({e, slice(rng)});
  return AnnotatedTrace(std::move(ev), k);
}

/// Minimum number of slices: the fewest contiguous blocks of b such that
/// each block picks events of a in increasing order, with the i-th event of
/// a thread in b identified with the i-th event of that thread in a.
/// Returns 0 when the per-thread sequences differ. O(n^2) dynamic program.
inline std::size_t min_blocks(const Trace& a, const Trace& b) {
  if (a.size() != b.size())
    return 0;
  const std::size_t n = a.size();
  std::map<Symbol, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < n; ++i)
    where[a.events()[i].thread].push_back(i);
  std::map<Symbol, std::size_t> used;
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Event& e = b.events()[i];
    auto& list = where[e.thread];
    auto& u = used[e.thread];
    if (u >= list.size() || !(a.events()[list[u]] == e))
      return 0;
    id[i] = list[u++];
  }
  for (const auto& [t, list] : where)
    if (used[t] != list.size())
      return 0;
  // best[j] = fewest blocks covering b[0..j).
  std::vector<std::size_t> best(n + 1, SIZE_MAX);
  best[0] = 0;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      if (i + 1 < j && id[i] > id[i + 1])
        break;
      if (best[i] != SIZE_MAX)
        best[j] = std::min(best[j], best[i] + 1);
    }
  return n == 0 ? 1 : best[n];
}

/// Independent reads-from comparison used by oracles in tests: every read's
/// source, named by (thread, occurrence index), agrees in both traces.
inline bool rf_agree(const Trace& a, const Trace& b) {
  auto names_of = [](const Trace& t) {
    std::map<Symbol, std::size_t> seen;
    std::vector<std::pair<Symbol, std::size_t>> id;
    for (const auto& e : t)
      id.emplace_back(e.thread, seen[e.thread]++);
    std::map<std::pair<Symbol, std::size_t>, std::pair<Symbol, std::size_t>> src;
    for (std::size_t r = 0; r < t.size(); ++r) {
      const Event& e = t.events()[r];
      if (!e.is_read())
        continue;
      std::pair<Symbol, std::size_t> s{Symbol{}, SIZE_MAX};
      for (std::size_t w = r; w-- > 0;)
        if (t.events()[w].is_write() && t.events()[w].loc == e.loc) {
          s = id[w];
          break;
        }
      src[id[r]] = s;
    }
    return src;
  };
  return names_of(a) == names_of(b);
}

} // namespace testsupport
