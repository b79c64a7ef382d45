#include "slicemon/frontier.hpp"

#include "slicemon/error.hpp"
#include "slicemon/relations.hpp"

#include <algorithm>
#include <unordered_map>

namespace slicemon {

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = k.size();
    for (auto v : k)
      h = (h ^ v) * 0x100000001b3ULL + (h >> 31);
    return h;
  }
};

// Reads-from structure of the input trace shared by all searches.
class Layout {
public:
  explicit Layout(const Trace& t) : trace_(t), index_(t), readers_(t.size() + 1) {
    std::unordered_map<Symbol, std::size_t> loc_ids;
    loc_of_.assign(t.size() + 1, 0);
    for (Pos p = 1; p <= t.size(); ++p) {
      const Event& e = t.at(p);
      if (!e.is_access())
        continue;
      auto [it, fresh] = loc_ids.emplace(e.loc, writes_.size());
      if (fresh)
        writes_.emplace_back();
      loc_of_[p] = it->second;
      if (e.is_write())
        writes_[it->second].push_back(p);
      else if (Pos s = index_.source(p))
        readers_[s].push_back(p);
    }
  }

  const TraceIndex& index() const noexcept { return index_; }

  Pos po_predecessor(Pos p) const {
    auto ord = index_.ordinal(p);
    return ord == 0 ? 0 : index_.position(index_.thread_of(p), ord - 1);
  }

  // Write-closure and read-source conditions for emitting `p` next.
  template <class InX> bool enabled(Pos p, InX&& in_x) const {
    const Event& e = trace_.at(p);
    if (e.is_write()) {
      for (Pos w : writes_[loc_of_[p]])
        if (in_x(w))
          for (Pos r : readers_[w])
            if (!in_x(r))
              return false;
    } else if (e.is_read()) {
      if (Pos s = index_.source(p))
        return in_x(s);
      for (Pos w : writes_[loc_of_[p]])
        if (in_x(w))
          return false;
    }
    return true;
  }

private:
  const Trace& trace_;
  TraceIndex index_;
  std::vector<std::size_t> loc_of_;
  std::vector<std::vector<Pos>> writes_;
  std::vector<std::vector<Pos>> readers_;
};

// Breadth-first search over frontiers. Every edge emits one event, so layer m
// holds the frontiers of size m and all nodes of layer n are complete. Each
// node carries the set of NFA states reachable by some path to it; nodes with
// an empty set are never created.
class LayeredSearch {
public:
  LayeredSearch(const Nfa& nfa, const std::vector<Label>& word, bool want_witness)
      : nfa_(nfa), word_(word), want_witness_(want_witness), words_per_set_((nfa.states() + 63) / 64) {}

  // expand(key, emit) calls emit(pos, successor_key) for every edge.
  template <class Expand> FrontierResult run(const Key& init, Expand&& expand) {
    FrontierResult result;
    nodes_.clear();
    std::vector<std::uint32_t> layer;
    {
      Node root{init, std::vector<std::uint64_t>(words_per_set_, 0), {}};
      for (auto q : nfa_.initial())
        add_state(root, q, {q, 0, 0, 0});
      if (nfa_.initial().empty())
        return result;
      nodes_.push_back(std::move(root));
      layer.push_back(0);
      result.nodes_explored = 1;
    }
    std::vector<State> succ;
    for (std::size_t m = 0; m < word_.size() && !layer.empty(); ++m) {
      std::unordered_map<Key, std::uint32_t, KeyHash> next_ids;
      std::vector<std::uint32_t> next_layer;
      for (auto u : layer) {
        const Key key = nodes_[u].key;
        expand(key, [&](Pos pos, Key&& to) {
          const Label l = word_[pos - 1];
          std::uint32_t v;
          auto it = next_ids.find(to);
          if (it == next_ids.end()) {
            bool any = false;
            for (auto q : states_of(nodes_[u]))
              if (!nfa_.successors(q, l).empty()) {
                any = true;
                break;
              }
            if (!any)
              return;
            v = static_cast<std::uint32_t>(nodes_.size());
            nodes_.push_back({std::move(to), std::vector<std::uint64_t>(words_per_set_, 0), {}});
            next_ids.emplace(nodes_[v].key, v);
            next_layer.push_back(v);
          } else {
            v = it->second;
          }
          for (auto q : states_of(nodes_[u]))
            for (auto r : nfa_.successors(q, l))
              add_state(nodes_[v], r, {r, u, q, static_cast<std::uint32_t>(pos)});
        });
      }
      result.nodes_explored += next_layer.size();
      if (!want_witness_)
        for (auto u : layer) {
          nodes_[u].bits = {};
          nodes_[u].recs = {};
        }
      layer = std::move(next_layer);
    }
    if (!word_.empty() && layer.empty())
      return result;
    for (auto v : layer)
      for (const auto& rec : nodes_[v].recs)
        if (nfa_.accepting(rec.state)) {
          result.verdict = true;
          if (want_witness_)
            result.witness = rebuild(v, rec.state);
          return result;
        }
    return result;
  }

  void set_trace(const Trace* t) { trace_ = t; }

private:
  struct Rec {
    State state;
    std::uint32_t from;
    State from_state;
    std::uint32_t pos; // 0 at the root
  };
  struct Node {
    Key key;
    std::vector<std::uint64_t> bits;
    std::vector<Rec> recs;
  };

  void add_state(Node& n, State q, Rec rec) {
    auto& w = n.bits[q / 64];
    const std::uint64_t bit = std::uint64_t{1} << (q % 64);
    if (w & bit)
      return;
    w |= bit;
    if (!want_witness_)
      rec.from = rec.from_state = rec.pos = 0;
    n.recs.push_back(rec);
  }

  static std::vector<State> states_of(const Node& n) {
    std::vector<State> out;
    out.reserve(n.recs.size());
    for (const auto& r : n.recs)
      out.push_back(r.state);
    return out;
  }

  Trace rebuild(std::uint32_t v, State q) const {
    std::vector<Event> rev;
    while (true) {
      const auto& recs = nodes_[v].recs;
      auto it = std::find_if(recs.begin(), recs.end(), [&](const Rec& r) { return r.state == q; });
      if (it->pos == 0)
        break;
      rev.push_back(trace_->at(it->pos));
      v = it->from;
      q = it->from_state;
    }
    std::reverse(rev.begin(), rev.end());
    return Trace(std::move(rev));
  }

  const Nfa& nfa_;
  const std::vector<Label>& word_;
  const Trace* trace_ = nullptr;
  bool want_witness_;
  std::size_t words_per_set_;
  std::vector<Node> nodes_;
};

} // namespace

std::size_t pre_frontier_node_bound(const Trace& t, unsigned k) {
  TraceIndex idx(t);
  std::size_t bound = (k + 1) * (t.size() + 1);
  for (std::uint32_t th = 0; th < idx.threads().size(); ++th)
    bound *= idx.thread_size(th) + 1;
  return bound;
}

FrontierResult frontier_pre(const Trace& t, const Nfa& spec, unsigned k, bool want_witness) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  const auto word = encode(spec.alphabet(), t);
  const Layout layout(t);
  const auto& idx = layout.index();
  const auto threads = static_cast<std::uint32_t>(idx.threads().size());

  LayeredSearch search(spec, word, want_witness);
  search.set_trace(&t);
  Key init(threads + 2, 0);
  return search.run(init, [&](const Key& key, auto&& emit) {
    auto in_x = [&](Pos q) { return key[idx.thread_of(q)] > idx.ordinal(q); };
    const Pos last = key[threads];
    const std::uint32_t drops = key[threads + 1];
    for (std::uint32_t th = 0; th < threads; ++th) {
      if (key[th] == idx.thread_size(th))
        continue;
      const Pos p = idx.position(th, key[th]);
      const std::uint32_t d = drops + (last > p ? 1 : 0);
      if (d > k || !layout.enabled(p, in_x))
        continue;
      Key to = key;
      ++to[th];
      to[threads] = static_cast<std::uint32_t>(p);
      to[threads + 1] = d;
      emit(p, std::move(to));
    }
  });
}

FrontierResult frontier_post_drops(const Trace& t, const Nfa& spec, unsigned k, bool want_witness) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  const auto word = encode(spec.alphabet(), t);
  const Layout layout(t);
  const auto& idx = layout.index();
  const auto threads = static_cast<std::uint32_t>(idx.threads().size());
  const std::size_t n = t.size();

  LayeredSearch search(spec, word, want_witness);
  search.set_trace(&t);
  Key init(threads + 1, 0);
  return search.run(init, [&](const Key& key, auto&& emit) {
    auto in_x = [&](Pos q) { return key[idx.thread_of(q)] > idx.ordinal(q); };
    const std::uint32_t drops = key[threads];
    for (std::uint32_t th = 0; th < threads; ++th) {
      if (key[th] == idx.thread_size(th))
        continue;
      const Pos p = idx.position(th, key[th]);
      const std::uint32_t d = drops + (p < n && in_x(p + 1) ? 1 : 0);
      if (d > k || !layout.enabled(p, in_x))
        continue;
      Key to = key;
      ++to[th];
      to[threads] = d;
      emit(p, std::move(to));
    }
  });
}

FrontierResult frontier_post(const Trace& t, const Nfa& spec, unsigned k, bool want_witness) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  const auto word = encode(spec.alphabet(), t);
  const Layout layout(t);
  const std::size_t n = t.size();
  const std::size_t blocks = k + 1;

  LayeredSearch search(spec, word, want_witness);
  search.set_trace(&t);
  FrontierResult total;

  // cuts[0] = 0 <= cuts[1] <= ... <= cuts[k] <= cuts[k+1] = n.
  std::vector<Pos> cuts(blocks + 1, 0);
  cuts[blocks] = n;
  std::vector<std::uint32_t> block_of(n + 1, 0);
  while (true) {
    for (std::size_t j = 0; j < blocks; ++j)
      for (Pos p = cuts[j] + 1; p <= cuts[j + 1]; ++p)
        block_of[p] = static_cast<std::uint32_t>(j);

    Key init(blocks, 0);
    auto res = search.run(init, [&](const Key& key, auto&& emit) {
      auto in_x = [&](Pos q) { return q <= cuts[block_of[q]] + key[block_of[q]]; };
      for (std::size_t j = 0; j < blocks; ++j) {
        if (cuts[j] + key[j] == cuts[j + 1])
          continue;
        const Pos p = cuts[j] + key[j] + 1;
        const Pos pred = layout.po_predecessor(p);
        if ((pred != 0 && !in_x(pred)) || !layout.enabled(p, in_x))
          continue;
        Key to = key;
        ++to[j];
        emit(p, std::move(to));
      }
    });
    total.nodes_explored += res.nodes_explored;
    if (res.verdict) {
      total.verdict = true;
      total.witness = std::move(res.witness);
      return total;
    }

    // Next non-decreasing cut vector in lexicographic order.
    std::size_t j = blocks - 1;
    while (j >= 1 && cuts[j] == n)
      --j;
    if (j == 0)
      break;
    ++cuts[j];
    for (std::size_t i = j + 1; i < blocks; ++i)
      cuts[i] = cuts[j];
  }
  return total;
}

} // namespace slicemon
