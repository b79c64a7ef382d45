#pragma once

#include "slicemon/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace slicemon {

/// A count that may be infinite (nullopt).
using Extended = std::optional<std::size_t>;

/// Positions of drops i (1-based) with pi[i] > pi[i+1].
struct DropSet {
  std::vector<Pos> drops;

  std::size_t size() const noexcept { return drops.size(); }
  friend bool operator==(const DropSet&, const DropSet&) = default;
};

/// pi[i] = position in the source trace of the i-th event of the target.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<Pos> pi) : pi_(std::move(pi)) {}

  std::size_t size() const noexcept { return pi_.size(); }
  /// 1-based access.
  Pos operator[](Pos i) const { return pi_[i - 1]; }
  const std::vector<Pos>& values() const noexcept { return pi_; }

  DropSet drops() const;
  std::size_t inversions() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<Pos> pi_;
};

/// Precomputed per-thread layout and reads-from table of a trace. Comparing
/// two indices needs no allocation, which the exhaustive suites rely on.
class TraceIndex {
public:
  explicit TraceIndex(const Trace& trace);

  std::size_t size() const noexcept { return events_.size(); }
  const Event& event(Pos pos) const { return events_[pos - 1]; }
  /// Threads sorted by symbol id.
  const std::vector<Symbol>& threads() const noexcept { return threads_; }
  std::uint32_t thread_of(Pos pos) const { return thread_of_[pos - 1]; }
  std::uint32_t ordinal(Pos pos) const { return ordinal_[pos - 1]; }
  /// Position of the `ord`-th (0-based) event of thread index `t`.
  Pos position(std::uint32_t t, std::uint32_t ord) const { return by_thread_[offsets_[t] + ord]; }
  std::uint32_t thread_size(std::uint32_t t) const { return offsets_[t + 1] - offsets_[t]; }
  /// Reads-from source of `pos`, 0 when none.
  Pos source(Pos pos) const { return rf_[pos - 1]; }

private:
  std::vector<Event> events_;
  std::vector<Symbol> threads_;
  std::vector<std::uint32_t> thread_of_;
  std::vector<std::uint32_t> ordinal_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Pos> by_thread_;
  std::vector<Pos> rf_;
};

/// Same length, identical per-thread label sequences, and matching reads-from.
bool rf_equivalent(const Trace& a, const Trace& b);
bool rf_equivalent(const TraceIndex& a, const TraceIndex& b);

/// The thread-monotone permutation from `a` to `b`. Throws NoPermutationError
/// unless the per-thread label sequences coincide.
Permutation permutation_of(const Trace& a, const Trace& b);

/// Number of drops of permutation_of(a, b); nullopt when not rf-equivalent.
Extended drop_count(const Trace& a, const Trace& b);
Extended drop_count(const TraceIndex& a, const TraceIndex& b);

/// 0 when a == b, otherwise drop_count(a, b).
Extended slice_height(const Trace& a, const Trace& b);

/// b is a k-slice reordering of a: rf-equivalent with at most k drops.
/// Throws ArgumentError when k == 0.
bool is_k_slice(const Trace& a, const Trace& b, std::size_t k);
bool is_k_slice(const TraceIndex& a, const TraceIndex& b, std::size_t k);

/// Different threads and no conflict on a shared location.
bool independent(const Event& a, const Event& b) noexcept;

/// Mazurkiewicz equivalence via projections onto every dependent label pair.
bool trace_equivalent(const Trace& a, const Trace& b);

/// Inversions of permutation_of(a, b); nullopt when not trace equivalent.
Extended swap_distance(const Trace& a, const Trace& b);

/// swap_distance(a, b) <= k. Throws ArgumentError when k == 0.
bool is_k_maz(const Trace& a, const Trace& b, std::size_t k);

} // namespace slicemon
