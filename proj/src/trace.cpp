#include "slicemon/trace.hpp"

#include "slicemon/error.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace slicemon {

char op_char(Op op) noexcept {
  switch (op) {
  case Op::Read:
    return 'r';
  case Op::Write:
    return 'w';
  case Op::Begin:
    return 'b';
  case Op::End:
    return 'e';
  }
  return '?';
}

Event Event::make(std::string_view thread, Op op, std::string_view loc) {
  if (!Symbol::valid_identifier(thread))
    throw ArgumentError("invalid thread identifier '" + std::string(thread) + "'");
  bool access = op == Op::Read || op == Op::Write;
  if (access && !Symbol::valid_identifier(loc))
    throw ArgumentError("invalid location identifier '" + std::string(loc) + "'");
  if (!access && !loc.empty())
    throw ArgumentError("begin/end events carry no location");
  return Event{Symbol::intern(thread), op, access ? Symbol::intern(loc) : Symbol{}};
}

std::string Event::to_string() const {
  std::string s(thread.name());
  s += ' ';
  s += op_char(op);
  if (is_access()) {
    s += ' ';
    s += loc.name();
  }
  return s;
}

bool label_name_less(const Event& a, const Event& b) {
  if (a.thread != b.thread)
    return a.thread.name() < b.thread.name();
  if (a.op != b.op)
    return a.op < b.op;
  return a.loc.name() < b.loc.name();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t')
      ++i;
    if (i > start)
      fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

// Calls fn(line_number, fields) for every non-blank, non-comment line.
template <class Fn> void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#')
      continue;
    fn(line_no, fields);
  }
}

Event event_from_fields(std::size_t line_no, std::span<const std::string_view> fields) {
  if (fields.size() < 2)
    throw ParseError(line_no, "expected 'THREAD OP [LOC]'");
  if (fields[1].size() != 1)
    throw ParseError(line_no, "unknown operation '" + std::string(fields[1]) + "'");
  Op op;
  switch (fields[1][0]) {
  case 'r':
    op = Op::Read;
    break;
  case 'w':
    op = Op::Write;
    break;
  case 'b':
    op = Op::Begin;
    break;
  case 'e':
    op = Op::End;
    break;
  default:
    throw ParseError(line_no, "unknown operation '" + std::string(fields[1]) + "'");
  }
  bool access = op == Op::Read || op == Op::Write;
  if (access && fields.size() != 3)
    throw ParseError(line_no, "read/write events need exactly one location");
  if (!access && fields.size() != 2)
    throw ParseError(line_no, "begin/end events carry no location");
  if (!Symbol::valid_identifier(fields[0]))
    throw ParseError(line_no, "invalid thread identifier '" + std::string(fields[0]) + "'");
  if (access && !Symbol::valid_identifier(fields[2]))
    throw ParseError(line_no, "invalid location identifier '" + std::string(fields[2]) + "'");
  return Event{Symbol::intern(fields[0]), op, access ? Symbol::intern(fields[2]) : Symbol{}};
}

} // namespace

Event Event::parse(std::string_view text) {
  auto fields = split_fields(text);
  return event_from_fields(0, fields);
}

const Event& Trace::at(Pos pos) const {
  if (pos == 0 || pos > events_.size())
    throw ArgumentError("position " + std::to_string(pos) + " out of range 1.." +
                        std::to_string(events_.size()));
  return events_[pos - 1];
}

std::vector<Symbol> Trace::threads() const {
  std::vector<Symbol> out;
  for (const auto& e : events_)
    if (std::find(out.begin(), out.end(), e.thread) == out.end())
      out.push_back(e.thread);
  return out;
}

std::size_t RfMap::mapped() const noexcept {
  return static_cast<std::size_t>(std::count_if(source_.begin(), source_.end(), [](Pos p) { return p != 0; }));
}

std::vector<std::pair<Pos, Pos>> RfMap::pairs() const {
  std::vector<std::pair<Pos, Pos>> out;
  for (std::size_t i = 0; i < source_.size(); ++i)
    if (source_[i] != 0)
      out.emplace_back(i + 1, source_[i]);
  return out;
}

AnnotatedTrace::AnnotatedTrace(std::vector<AnnotatedEvent> events, unsigned k)
    : events_(std::move(events)), k_(k) {
  if (k_ == 0)
    throw ArgumentError("slice bound k must be positive");
  for (const auto& ae : events_)
    if (ae.slice < 1 || ae.slice > k_ + 1)
      throw ArgumentError("slice annotation " + std::to_string(ae.slice) + " outside 1.." +
                          std::to_string(k_ + 1));
}

Trace AnnotatedTrace::erased() const {
  std::vector<Event> out;
  out.reserve(events_.size());
  for (const auto& ae : events_)
    out.push_back(ae.event);
  return Trace(std::move(out));
}

Trace AnnotatedTrace::projection(unsigned slice) const {
  std::vector<Event> out;
  for (const auto& ae : events_)
    if (ae.slice == slice)
      out.push_back(ae.event);
  return Trace(std::move(out));
}

Trace AnnotatedTrace::concatenation() const {
  std::vector<Event> out;
  out.reserve(events_.size());
  for (unsigned s = 1; s <= k_ + 1; ++s)
    for (const auto& ae : events_)
      if (ae.slice == s)
        out.push_back(ae.event);
  return Trace(std::move(out));
}

Trace parse_trace(std::string_view text) {
  std::vector<Event> events;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    events.push_back(event_from_fields(line_no, fields));
  });
  return Trace(std::move(events));
}

std::string format_trace(const Trace& trace) {
  std::string out;
  for (const auto& e : trace) {
    out += e.to_string();
    out += '\n';
  }
  return out;
}

AnnotatedTrace parse_annotated_trace(std::string_view text, std::optional<unsigned> k) {
  std::vector<AnnotatedEvent> events;
  unsigned max_slice = 0;
  for_each_record(text, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
    if (fields.size() < 3 || fields.back().front() != '@')
      throw ParseError(line_no, "expected trailing '@SLICE' field");
    auto tag = fields.back().substr(1);
    unsigned slice = 0;
    auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), slice);
    if (ec != std::errc{} || ptr != tag.data() + tag.size() || slice == 0)
      throw ParseError(line_no, "slice must be an integer >= 1");
    auto ev = event_from_fields(line_no, std::span(fields).first(fields.size() - 1));
    max_slice = std::max(max_slice, slice);
    events.push_back({ev, slice});
  });
  unsigned kk = k.value_or(std::max(1u, max_slice > 0 ? max_slice - 1 : 1u));
  if (max_slice > kk + 1)
    throw ParseError(0, "slice " + std::to_string(max_slice) + " exceeds k+1 = " + std::to_string(kk + 1));
  return AnnotatedTrace(std::move(events), kk);
}

std::string format_annotated_trace(const AnnotatedTrace& trace) {
  std::string out;
  for (const auto& ae : trace.events()) {
    out += ae.event.to_string();
    out += " @";
    out += std::to_string(ae.slice);
    out += '\n';
  }
  return out;
}

RfMap reads_from(const Trace& trace) {
  std::vector<Pos> source(trace.size(), 0);
  std::unordered_map<Symbol, Pos> last_write;
  Pos pos = 0;
  for (const auto& e : trace) {
    ++pos;
    if (e.op == Op::Write) {
      last_write[e.loc] = pos;
    } else if (e.op == Op::Read) {
      if (auto it = last_write.find(e.loc); it != last_write.end())
        source[pos - 1] = it->second;
    }
  }
  return RfMap(std::move(source));
}

std::optional<Pos> po_predecessor(const Trace& trace, Pos pos) {
  const auto& e = trace.at(pos);
  for (Pos p = pos - 1; p >= 1; --p)
    if (trace.at(p).thread == e.thread)
      return p;
  return std::nullopt;
}

} // namespace slicemon
