#pragma once

#include "slicemon/trace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slicemon {

using State = std::uint32_t;
using Label = std::uint32_t;

/// Finite, ordered set of event labels. Ordering is by name so that state
/// numbering of derived automata is reproducible.
class LabelAlphabet {
public:
  /// Throws ArgumentError on an empty list or duplicate labels.
  explicit LabelAlphabet(std::vector<Event> labels);
  /// Sorts and deduplicates; still requires at least one label.
  static LabelAlphabet from_labels(std::vector<Event> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const Event& label(Label id) const { return labels_[id]; }
  const std::vector<Event>& labels() const noexcept { return labels_; }

  std::optional<Label> find(const Event& e) const;
  /// Throws AlphabetError when `e` is not a member.
  Label index(const Event& e) const;
  bool contains(const Event& e) const { return find(e).has_value(); }

  friend bool operator==(const LabelAlphabet& a, const LabelAlphabet& b) { return a.labels_ == b.labels_; }

private:
  std::vector<Event> labels_;
  std::unordered_map<Event, Label> index_;
};

/// Labels of `traces` plus `extra`; for every thread seen, Begin/End labels
/// are added when `with_boundaries` is set.
LabelAlphabet infer_alphabet(std::span<const Trace> traces, std::span<const Event> extra = {},
                             bool with_boundaries = false);

class Nfa {
public:
  Nfa(LabelAlphabet alphabet, std::size_t states);

  const LabelAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t states() const noexcept { return states_; }
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  std::vector<State> accepting_states() const;
  const std::vector<State>& successors(State q, Label a) const { return delta_[q * alphabet_.size() + a]; }
  std::size_t transition_count() const noexcept;

  void add_initial(State q);
  void set_accepting(State q, bool on = true);
  void add_transition(State from, Label a, State to);
  void add_transition(State from, const Event& a, State to) { add_transition(from, alphabet_.index(a), to); }
  /// Transition on every label.
  void add_loop_all(State from, State to);

private:
  void check_state(State q) const;

  LabelAlphabet alphabet_;
  std::size_t states_;
  std::vector<State> initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<State>> delta_;
};

/// Complete deterministic automaton.
class Dfa {
public:
  Dfa(LabelAlphabet alphabet, std::size_t states, State initial);

  const LabelAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t states() const noexcept { return states_; }
  State initial() const noexcept { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  State next(State q, Label a) const { return delta_[q * alphabet_.size() + a]; }

  void set_accepting(State q, bool on = true);
  void set_transition(State from, Label a, State to);

  /// States from which an accepting state is reachable.
  std::size_t live_states() const;

private:
  LabelAlphabet alphabet_;
  std::size_t states_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

/// Throw AlphabetError on labels outside the automaton's alphabet.
bool accepts(const Nfa& a, const Trace& t);
bool accepts(const Dfa& a, const Trace& t);

/// Subset construction over reachable subsets; the empty subset acts as sink.
Dfa determinize(const Nfa& a);

/// Label ids of the events of `t`; throws AlphabetError.
std::vector<Label> encode(const LabelAlphabet& alphabet, const Trace& t);

/// Σ* a b Σ* over all conflicting pairs (a, b) on a shared location.
Nfa spec_race(const LabelAlphabet& alphabet);
/// Σ* beta Σ* alpha Σ*.
Nfa spec_order_violation(const Event& alpha, const Event& beta, const LabelAlphabet& alphabet);
/// Sequences of single-thread transactions <t,b> Σ_t* <t,e>.
Nfa spec_serial(const LabelAlphabet& alphabet);
/// Σ* a1 Σ* ... Σ* ad Σ*.
Nfa spec_pattern(const std::vector<Event>& seq, const LabelAlphabet& alphabet);
/// Σ* a b Σ* with a immediately followed by b.
Nfa spec_adjacent(const Event& a, const Event& b, const LabelAlphabet& alphabet);

/// JSON NFA format: {"alphabet": ["T1 w x", ...], "states": N, "initial": [..],
/// "accepting": [..], "transitions": [[src, "T1 w x" | "*", dst], ...]}.
/// Throws ParseError.
Nfa parse_nfa_json(std::string_view text);
std::string format_nfa_json(const Nfa& nfa);

} // namespace slicemon
