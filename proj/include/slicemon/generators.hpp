#pragma once

#include "slicemon/trace.hpp"

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace slicemon {

/// Threads T1, T2 with k+2 reads of x each: (all of T1 then T2, round robin).
std::pair<Trace, Trace> gen_seq_int(unsigned k);

struct NonTransitiveTriple {
  Trace sigma, rho, gamma;
};

/// Read-only traces over T1, T2 (2k+2 events each) with
/// drop_count(sigma, rho) = drop_count(rho, gamma) = k and
/// drop_count(sigma, gamma) = 2k.
NonTransitiveTriple gen_non_transitive(unsigned k);

/// Two-thread trace encoding the bitstring pair "a#b" (equal lengths >= 1).
/// Throws ArgumentError on malformed input.
Trace gen_slice_star_hardness_trace(std::string_view word);

/// Simple undirected graph on vertices 1..vertices.
struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Parses "1-2,2-3". Throws ArgumentError.
std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(std::string_view text);

/// Trace over threads t1..t(2c+2) that can be reordered so that
/// <t(2c+1), w x> is immediately followed by <t(2c+2), r x> iff the graph has
/// an independent set of size c. Lock sections become w/r pairs on a
/// dedicated location. Throws ArgumentError on a malformed graph or c == 0.
Trace gen_independent_set_trace(const Graph& graph, unsigned c);

} // namespace slicemon
