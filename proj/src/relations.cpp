#include "slicemon/relations.hpp"

#include "slicemon/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace slicemon {

DropSet Permutation::drops() const {
  DropSet out;
  for (std::size_t i = 0; i + 1 < pi_.size(); ++i)
    if (pi_[i] > pi_[i + 1])
      out.drops.push_back(i + 1);
  return out;
}

std::size_t Permutation::inversions() const {
  // Fenwick tree over values 1..n.
  std::vector<std::size_t> tree(pi_.size() + 1, 0);
  std::size_t inv = 0;
  for (std::size_t i = pi_.size(); i-- > 0;) {
    for (std::size_t v = pi_[i] - 1; v > 0; v -= v & (~v + 1))
      inv += tree[v];
    for (std::size_t v = pi_[i]; v < tree.size(); v += v & (~v + 1))
      ++tree[v];
  }
  return inv;
}

TraceIndex::TraceIndex(const Trace& trace) : events_(trace.begin(), trace.end()) {
  const std::size_t n = events_.size();
  for (const auto& e : events_)
    if (std::find(threads_.begin(), threads_.end(), e.thread) == threads_.end())
      threads_.push_back(e.thread);
  std::sort(threads_.begin(), threads_.end());

  thread_of_.resize(n);
  ordinal_.resize(n);
  std::vector<std::uint32_t> counts(threads_.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = static_cast<std::uint32_t>(
        std::lower_bound(threads_.begin(), threads_.end(), events_[i].thread) - threads_.begin());
    thread_of_[i] = t;
    ordinal_[i] = counts[t]++;
  }
  offsets_.assign(threads_.size() + 1, 0);
  for (std::size_t t = 0; t < threads_.size(); ++t)
    offsets_[t + 1] = offsets_[t] + counts[t];
  by_thread_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    by_thread_[offsets_[thread_of_[i]] + ordinal_[i]] = i + 1;
  rf_ = reads_from(trace).table();
}

namespace {

bool same_shape(const TraceIndex& a, const TraceIndex& b) {
  if (a.size() != b.size() || a.threads() != b.threads())
    return false;
  for (std::uint32_t t = 0; t < a.threads().size(); ++t)
    if (a.thread_size(t) != b.thread_size(t))
      return false;
  return true;
}

// Walks b and reports the source position in a of each event; returns false
// on the first label mismatch. Callers must check same_shape first.
template <class Fn> bool walk(const TraceIndex& a, const TraceIndex& b, Fn&& fn) {
  for (Pos i = 1; i <= b.size(); ++i) {
    Pos p = a.position(b.thread_of(i), b.ordinal(i));
    if (!(a.event(p) == b.event(i)))
      return false;
    fn(i, p);
  }
  return true;
}

bool rf_matches(const TraceIndex& a, const TraceIndex& b, Pos i, Pos p) {
  Pos sb = b.source(i);
  Pos sa = a.source(p);
  if (sb == 0 || sa == 0)
    return sb == sa;
  return a.thread_of(sa) == b.thread_of(sb) && a.ordinal(sa) == b.ordinal(sb);
}

} // namespace

bool rf_equivalent(const TraceIndex& a, const TraceIndex& b) {
  if (!same_shape(a, b))
    return false;
  bool ok = true;
  bool labels = walk(a, b, [&](Pos i, Pos p) { ok = ok && rf_matches(a, b, i, p); });
  return labels && ok;
}

bool rf_equivalent(const Trace& a, const Trace& b) {
  if (a.size() != b.size())
    return false;
  return rf_equivalent(TraceIndex(a), TraceIndex(b));
}

Permutation permutation_of(const Trace& a, const Trace& b) {
  TraceIndex ia(a), ib(b);
  std::vector<Pos> pi;
  pi.reserve(b.size());
  if (!same_shape(ia, ib) || !walk(ia, ib, [&](Pos, Pos p) { pi.push_back(p); }))
    throw NoPermutationError("traces differ in their per-thread event sequences");
  return Permutation(std::move(pi));
}

Extended drop_count(const TraceIndex& a, const TraceIndex& b) {
  if (!same_shape(a, b))
    return std::nullopt;
  bool ok = true;
  std::size_t drops = 0;
  Pos prev = 0;
  bool labels = walk(a, b, [&](Pos i, Pos p) {
    ok = ok && rf_matches(a, b, i, p);
    if (prev > p)
      ++drops;
    prev = p;
  });
  if (!labels || !ok)
    return std::nullopt;
  return drops;
}

Extended drop_count(const Trace& a, const Trace& b) {
  if (a.size() != b.size())
    return std::nullopt;
  return drop_count(TraceIndex(a), TraceIndex(b));
}

Extended slice_height(const Trace& a, const Trace& b) {
  if (a == b)
    return 0;
  return drop_count(a, b);
}

bool is_k_slice(const TraceIndex& a, const TraceIndex& b, std::size_t k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  auto d = drop_count(a, b);
  return d && *d <= k;
}

bool is_k_slice(const Trace& a, const Trace& b, std::size_t k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  auto d = drop_count(a, b);
  return d && *d <= k;
}

bool independent(const Event& a, const Event& b) noexcept {
  if (a.thread == b.thread)
    return false;
  if (a.is_access() && b.is_access() && a.loc == b.loc)
    return a.is_read() && b.is_read();
  return true;
}

bool trace_equivalent(const Trace& a, const Trace& b) {
  if (a.size() != b.size())
    return false;
  std::vector<Event> labels(a.begin(), a.end());
  std::sort(labels.begin(), labels.end());
  std::vector<Event> other(b.begin(), b.end());
  std::sort(other.begin(), other.end());
  if (labels != other)
    return false;
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto project = [](const Trace& t, const Event& x, const Event& y, std::vector<bool>& out) {
    out.clear();
    for (const auto& e : t)
      if (e == x)
        out.push_back(false);
      else if (e == y)
        out.push_back(true);
  };
  std::vector<bool> pa, pb;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (independent(labels[i], labels[j]))
        continue;
      project(a, labels[i], labels[j], pa);
      project(b, labels[i], labels[j], pb);
      if (pa != pb)
        return false;
    }
  return true;
}

Extended swap_distance(const Trace& a, const Trace& b) {
  if (!trace_equivalent(a, b))
    return std::nullopt;
  return permutation_of(a, b).inversions();
}

bool is_k_maz(const Trace& a, const Trace& b, std::size_t k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  auto d = swap_distance(a, b);
  return d && *d <= k;
}

} // namespace slicemon
