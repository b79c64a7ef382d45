#include "slicemon/spec_selector.hpp"

#include "slicemon/error.hpp"

#include <fstream>
#include <sstream>

namespace slicemon {

namespace {

std::vector<Event> parse_label_list(std::string_view body) {
  std::vector<Event> out;
  while (true) {
    auto semi = body.find(';');
    auto item = body.substr(0, semi);
    try {
      out.push_back(Event::parse(item));
    } catch (const Error&) {
      throw ArgumentError("bad label '" + std::string(item) + "' in spec");
    }
    if (semi == std::string_view::npos)
      break;
    body.remove_prefix(semi + 1);
  }
  return out;
}

} // namespace

SpecSelector SpecSelector::parse(std::string_view text) {
  SpecSelector s;
  if (text == "race") {
    s.kind_ = Kind::Race;
    return s;
  }
  if (text == "serial") {
    s.kind_ = Kind::Serial;
    return s;
  }
  struct Builtin {
    std::string_view name;
    Kind kind;
    std::size_t arity; // 0 = any positive number
  };
  static constexpr Builtin builtins[] = {
      {"ov", Kind::OrderViolation, 2}, {"pattern", Kind::Pattern, 0}, {"adjacent", Kind::Adjacent, 2}};
  for (const auto& b : builtins) {
    if (text.size() > b.name.size() + 1 && text.substr(0, b.name.size()) == b.name &&
        text[b.name.size()] == '(') {
      if (text.back() != ')')
        throw ArgumentError("missing ')' in spec '" + std::string(text) + "'");
      s.kind_ = b.kind;
      s.labels_ = parse_label_list(text.substr(b.name.size() + 1, text.size() - b.name.size() - 2));
      if (b.arity != 0 && s.labels_.size() != b.arity)
        throw ArgumentError(std::string(b.name) + " takes " + std::to_string(b.arity) + " labels");
      return s;
    }
  }
  if (text.starts_with("file:"))
    text.remove_prefix(5);
  if (text.empty())
    throw ArgumentError("empty spec");
  s.kind_ = Kind::File;
  s.path_ = std::string(text);
  return s;
}

Nfa SpecSelector::build(std::span<const Trace> traces) const {
  if (kind_ == Kind::File) {
    std::ifstream in(path_);
    if (!in)
      throw ArgumentError("cannot open spec file '" + path_ + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_nfa_json(buf.str());
  }
  const auto alphabet = infer_alphabet(traces, labels_, kind_ == Kind::Serial);
  switch (kind_) {
  case Kind::Race:
    return spec_race(alphabet);
  case Kind::Serial:
    return spec_serial(alphabet);
  case Kind::OrderViolation:
    return spec_order_violation(labels_[0], labels_[1], alphabet);
  case Kind::Pattern:
    return spec_pattern(labels_, alphabet);
  case Kind::Adjacent:
    return spec_adjacent(labels_[0], labels_[1], alphabet);
  case Kind::File:
    break;
  }
  throw ArgumentError("unknown spec kind");
}

} // namespace slicemon
