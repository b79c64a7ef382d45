#pragma once

#include "slicemon/symbol.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slicemon {

/// 1-based position of an event inside a trace.
using Pos = std::size_t;

enum class Op : std::uint8_t { Read, Write, Begin, End };

char op_char(Op op) noexcept;

/// A (thread, operation, location) label. Begin/End carry no location.
struct Event {
  Symbol thread;
  Op op = Op::Read;
  Symbol loc;

  /// Validating constructor: identifiers must be well formed and `loc` must be
  /// present exactly for reads and writes. Throws ArgumentError.
  static Event make(std::string_view thread, Op op, std::string_view loc = {});
  static Event read(std::string_view thread, std::string_view loc) { return make(thread, Op::Read, loc); }
  static Event write(std::string_view thread, std::string_view loc) { return make(thread, Op::Write, loc); }
  static Event begin(std::string_view thread) { return make(thread, Op::Begin); }
  static Event end(std::string_view thread) { return make(thread, Op::End); }

  /// Parses "T1 w x" / "T1 b". Throws ParseError (line 0).
  static Event parse(std::string_view text);

  bool is_read() const noexcept { return op == Op::Read; }
  bool is_write() const noexcept { return op == Op::Write; }
  bool is_access() const noexcept { return op == Op::Read || op == Op::Write; }

  std::string to_string() const;

  friend bool operator==(const Event&, const Event&) noexcept = default;
  friend auto operator<=>(const Event&, const Event&) noexcept = default;
};

/// Orders labels by their names (thread, op, location); stable across runs,
/// unlike the interning-id order of operator<.
bool label_name_less(const Event& a, const Event& b);

/// A finite sequence of events. Positions are 1-based.
class Trace {
public:
  Trace() = default;
  explicit Trace(std::vector<Event> events) : events_(std::move(events)) {}
  Trace(std::initializer_list<Event> events) : events_(events) {}

  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  /// Event at 1-based position `pos`; throws ArgumentError when out of range.
  const Event& at(Pos pos) const;

  std::span<const Event> events() const noexcept { return events_; }
  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  /// Threads in order of first appearance.
  std::vector<Symbol> threads() const;

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace& a, const Trace& b) { return a.events_ <=> b.events_; }

private:
  std::vector<Event> events_;
};

/// Partial map read-position -> write-position (both 1-based).
class RfMap {
public:
  RfMap() = default;
  explicit RfMap(std::vector<Pos> source) : source_(std::move(source)) {}

  /// Source of the read at `read`, absent for orphan reads and non-reads.
  std::optional<Pos> source(Pos read) const {
    if (read == 0 || read > source_.size() || source_[read - 1] == 0)
      return std::nullopt;
    return source_[read - 1];
  }
  /// Number of mapped (read, write) pairs.
  std::size_t mapped() const noexcept;
  std::vector<std::pair<Pos, Pos>> pairs() const;
  /// Raw table: entry i is the 1-based source of position i+1, or 0.
  const std::vector<Pos>& table() const noexcept { return source_; }

  friend bool operator==(const RfMap&, const RfMap&) = default;

private:
  std::vector<Pos> source_;
};

struct AnnotatedEvent {
  Event event;
  unsigned slice = 1;

  friend bool operator==(const AnnotatedEvent&, const AnnotatedEvent&) = default;
};

/// A trace whose events carry slice indices in 1..k+1.
class AnnotatedTrace {
public:
  /// Throws ArgumentError if k == 0 or some slice lies outside 1..k+1.
  AnnotatedTrace(std::vector<AnnotatedEvent> events, unsigned k);

  unsigned k() const noexcept { return k_; }
  std::size_t size() const noexcept { return events_.size(); }
  std::span<const AnnotatedEvent> events() const noexcept { return events_; }

  /// The trace with annotations erased.
  Trace erased() const;
  /// Subsequence of events annotated with `slice`.
  Trace projection(unsigned slice) const;
  /// projection(1) · projection(2) · ... · projection(k+1).
  Trace concatenation() const;

  friend bool operator==(const AnnotatedTrace&, const AnnotatedTrace&) = default;

private:
  std::vector<AnnotatedEvent> events_;
  unsigned k_;
};

/// Parses the one-event-per-line trace format. Throws ParseError.
Trace parse_trace(std::string_view text);
std::string format_trace(const Trace& trace);

/// Same format with a trailing "@SLICE" field on every event line. When `k` is
/// absent it is taken as max(1, largest slice - 1).
AnnotatedTrace parse_annotated_trace(std::string_view text, std::optional<unsigned> k = std::nullopt);
std::string format_annotated_trace(const AnnotatedTrace& trace);

/// Last-write-before-read map; orphan reads are unmapped.
RfMap reads_from(const Trace& trace);

/// Largest position before `pos` in the same thread. Throws ArgumentError if
/// `pos` is not in 1..n.
std::optional<Pos> po_predecessor(const Trace& trace, Pos pos);

} // namespace slicemon

template <> struct std::hash<slicemon::Event> {
  std::size_t operator()(const slicemon::Event& e) const noexcept {
    return (std::size_t{e.thread.id()} * 0x9E3779B97F4A7C15ULL) ^ (std::size_t{e.loc.id()} << 3) ^
           static_cast<std::size_t>(e.op);
  }
};

template <> struct std::hash<slicemon::Trace> {
  std::size_t operator()(const slicemon::Trace& t) const noexcept {
    std::size_t h = t.size();
    for (const auto& e : t)
      h = h * 1000003ULL ^ std::hash<slicemon::Event>{}(e);
    return h;
  }
};
