#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

namespace slicemon {

/// Accepts every word reachable from a word of `base` by at most one swap of
/// adjacent independent labels. Only reachable states are built.
Nfa single_swap_closure(const Nfa& base);

/// k-fold single_swap_closure of the spec: words within k swaps of L.
/// Throws ArgumentError when k == 0.
Nfa build_kmaz_nfa(const Dfa& spec, unsigned k);

/// Membership of `t` in the k-swap image of the spec's language.
bool kmaz_monitor_run(const Trace& t, const Dfa& spec, unsigned k);

} // namespace slicemon
