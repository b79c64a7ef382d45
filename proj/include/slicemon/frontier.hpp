#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

#include <cstddef>
#include <optional>

namespace slicemon {

struct FrontierResult {
  bool verdict = false;
  std::size_t nodes_explored = 0;
  /// A run accepted by the spec, related to the input as the search requires.
  std::optional<Trace> witness;
};

/// Is some rho in L with drop_count(t, rho) <= k? Searches frontiers
/// (emitted prefix per thread, position of the last emitted event, drops).
/// Throws AlphabetError for labels outside the spec alphabet.
FrontierResult frontier_pre(const Trace& t, const Nfa& spec, unsigned k, bool want_witness = true);

/// Is some rho in L with drop_count(rho, t) <= k? Tries every way of cutting
/// t into k+1 contiguous blocks (empty ones allowed) and searches frontiers
/// of block order plus program order.
FrontierResult frontier_post(const Trace& t, const Nfa& spec, unsigned k, bool want_witness = true);

/// Same question as frontier_post, but tracks drops directly: emitting the
/// event at t-position i costs a drop iff position i+1 is already emitted.
/// Polynomial in |t| for a fixed number of threads.
FrontierResult frontier_post_drops(const Trace& t, const Nfa& spec, unsigned k, bool want_witness = true);

/// (k+1) * (n+1) * prod_t (n_t + 1), the number of distinct pre-frontier nodes.
std::size_t pre_frontier_node_bound(const Trace& t, unsigned k);

} // namespace slicemon
