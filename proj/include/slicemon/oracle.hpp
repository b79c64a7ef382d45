#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace slicemon {

inline constexpr std::size_t default_oracle_bound = 12;

/// Calls `visit` on every trace rf-equivalent to `t`, each exactly once,
/// by interleaving the per-thread queues and pruning reads whose source would
/// change. Stops early when `visit` returns false. Throws BoundExceededError
/// when |t| > bound.
void enumerate_rf_reorderings(const Trace& t, const std::function<bool(const Trace&)>& visit,
                              std::size_t bound = default_oracle_bound);
std::vector<Trace> rf_reorderings(const Trace& t, std::size_t bound = default_oracle_bound);

/// Some rho in L with drop_count(t, rho) <= k.
bool oracle_pre(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound = default_oracle_bound);
/// Some rho in L with drop_count(rho, t) <= k.
bool oracle_post(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound = default_oracle_bound);

/// Traces reachable from t by at most k swaps of adjacent independent events.
std::vector<Trace> swap_ball(const Trace& t, unsigned k, std::size_t bound = default_oracle_bound);
/// Some member of swap_ball(t, k) is in L.
bool oracle_kmaz(const Trace& t, const Nfa& spec, unsigned k, std::size_t bound = default_oracle_bound);

/// Breadth-first search from a through single-slice moves (rf-equivalent
/// traces at drop count <= 1); true iff b is reached within max_steps moves.
bool slice_star_reachable(const Trace& a, const Trace& b, std::size_t max_steps,
                          std::size_t bound = default_oracle_bound);

/// Direct evaluation of the program-order and reads-from alignment conditions
/// over all event pairs.
bool lemma_consistency_check(const AnnotatedTrace& at);
/// The concatenation of slices is rf-equivalent to the erased trace.
bool definitional_consistency_check(const AnnotatedTrace& at);

} // namespace slicemon
