#pragma once

#include "slicemon/automata.hpp"
#include "slicemon/trace.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slicemon {

/// A specification named on the command line:
///   race | serial | ov(ALPHA;BETA) | pattern(A1;...;Ad) | adjacent(A;B)
///   | file:PATH | PATH
/// where labels are written as in trace files ("T1 w x").
class SpecSelector {
public:
  enum class Kind { Race, Serial, OrderViolation, Pattern, Adjacent, File };

  /// Throws ArgumentError on malformed text.
  static SpecSelector parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Event>& labels() const noexcept { return labels_; }
  const std::string& path() const noexcept { return path_; }

  /// Builds the automaton. Built-in specs range over the labels of `traces`
  /// plus their own parameters (and Begin/End for every thread for serial);
  /// file specs use the file's alphabet. Throws ParseError for bad files.
  Nfa build(std::span<const Trace> traces) const;

private:
  Kind kind_ = Kind::Race;
  std::vector<Event> labels_;
  std::string path_;
};

} // namespace slicemon
