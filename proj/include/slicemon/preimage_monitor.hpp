#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace slicemon {

/// Largest supported slice bound; slice sets are 64-bit masks.
inline constexpr unsigned max_monitor_k = 62;

/// State of the slice-consistency automaton, or the rejecting sink.
/// Per thread: largest slice used so far. Per location: slice of the last
/// write, slices holding some write, and slices where a write is forbidden.
/// Bit i of a mask stands for slice i.
struct CnstState {
  bool bottom = false;
  std::vector<std::uint8_t> t2s;
  std::vector<std::uint8_t> last_w;
  std::vector<std::uint64_t> seen_w;
  std::vector<std::uint64_t> forbidden_w;

  friend bool operator==(const CnstState&, const CnstState&) = default;
};

/// Checks that an annotated trace's slices concatenate to an rf-equivalent run.
class SliceConsistencyDfa {
public:
  /// Throws ArgumentError unless 1 <= k <= max_monitor_k.
  SliceConsistencyDfa(const LabelAlphabet& alphabet, unsigned k);

  unsigned k() const noexcept { return k_; }
  CnstState initial() const;
  /// Stepping the sink yields the sink. Throws ArgumentError when the slice
  /// is outside 1..k+1.
  CnstState step(const CnstState& p, Label a, unsigned slice) const;
  CnstState step(const CnstState& p, const Event& e, unsigned slice) const;
  /// In-place variant; returns false when the result is the sink.
  bool advance(CnstState& p, Label a, unsigned slice) const;
  /// Lowest slice any future event can be placed in: every thread's current
  /// slice is a lower bound for its later events.
  unsigned floor(const CnstState& p) const;
  /// Clears bits that no event placed at or above `floor` can observe.
  void forget_below(CnstState& p, unsigned floor) const;

  /// True iff the run over `at` never reaches the sink. The trace's k must
  /// match.
  bool accepts(const AnnotatedTrace& at) const;

  const LabelAlphabet& alphabet() const noexcept { return alphabet_; }

private:
  struct Info {
    std::uint32_t thread;
    std::uint32_t loc; // meaningful for accesses only
    Op op;
  };

  LabelAlphabet alphabet_;
  unsigned k_;
  std::size_t threads_ = 0;
  std::size_t locs_ = 0;
  std::vector<Info> info_;
};

/// Run of the consistency automaton over the annotated trace's own labels.
bool cnst_accepts(const AnnotatedTrace& at);

/// table(i, p) for slices i = 1..k+1 and spec states p.
struct MembState {
  std::vector<State> table;

  friend bool operator==(const MembState&, const MembState&) = default;
};

/// Simulates the spec DFA on each slice separately, from every start state.
class MembershipDfa {
public:
  MembershipDfa(Dfa spec, unsigned k);

  unsigned k() const noexcept { return k_; }
  const Dfa& spec() const noexcept { return spec_; }
  MembState initial() const;
  State at(const MembState& m, unsigned slice, State p) const { return m.table[(slice - 1) * spec_.states() + p]; }
  MembState step(const MembState& m, Label a, unsigned slice) const;
  MembState step(const MembState& m, const Event& e, unsigned slice) const;
  void advance(MembState& m, Label a, unsigned slice) const;
  /// Collapses the frozen slices below `floor` into slice 1 as a constant
  /// row; slices 2..floor-1 become the identity.
  void forget_below(MembState& m, unsigned floor) const;
  /// Chains slice 1 .. k+1 starting from the spec's initial state.
  bool accepting(const MembState& m) const;

private:
  Dfa spec_;
  unsigned k_;
};

struct MonitorStats {
  std::size_t max_states = 0;
  std::size_t steps = 0;
};

/// Streaming membership test for the pre-image of L under k-slice
/// reorderings: subset simulation of the consistency x membership product
/// with the slice annotation guessed per event.
class PreimageMonitor {
public:
  struct Product {
    CnstState cnst;
    MembState memb;
    friend bool operator==(const Product&, const Product&) = default;
  };

  PreimageMonitor(Dfa spec, unsigned k);
  PreimageMonitor(const Nfa& spec, unsigned k) : PreimageMonitor(determinize(spec), k) {}

  /// Throws AlphabetError for labels outside the spec alphabet.
  void step(const Event& e);
  void step(Label a);
  void run(const Trace& t);
  bool verdict() const;
  void reset();

  const std::vector<Product>& states() const noexcept { return states_; }
  const MonitorStats& stats() const noexcept { return stats_; }
  const LabelAlphabet& alphabet() const noexcept { return memb_.spec().alphabet(); }

private:
  SliceConsistencyDfa cnst_;
  MembershipDfa memb_;
  std::vector<Product> states_;
  MonitorStats stats_;
};

/// One-shot verdict and statistics.
struct MonitorResult {
  bool verdict;
  MonitorStats stats;
};
MonitorResult monitor_preimage(const Nfa& spec, const Trace& t, unsigned k);

} // namespace slicemon
