#include "slicemon/automata.hpp"

#include "slicemon/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace slicemon {

LabelAlphabet::LabelAlphabet(std::vector<Event> labels) : labels_(std::move(labels)) {
  if (labels_.empty())
    throw ArgumentError("alphabet must not be empty");
  for (Label i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], i).second)
      throw ArgumentError("duplicate alphabet label '" + labels_[i].to_string() + "'");
}

LabelAlphabet LabelAlphabet::from_labels(std::vector<Event> labels) {
  std::sort(labels.begin(), labels.end(), label_name_less);
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return LabelAlphabet(std::move(labels));
}

std::optional<Label> LabelAlphabet::find(const Event& e) const {
  auto it = index_.find(e);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

Label LabelAlphabet::index(const Event& e) const {
  auto it = index_.find(e);
  if (it == index_.end())
    throw AlphabetError("label '" + e.to_string() + "' is not in the alphabet");
  return it->second;
}

LabelAlphabet infer_alphabet(std::span<const Trace> traces, std::span<const Event> extra, bool with_boundaries) {
  std::vector<Event> labels(extra.begin(), extra.end());
  for (const auto& t : traces)
    labels.insert(labels.end(), t.begin(), t.end());
  if (with_boundaries) {
    std::vector<Symbol> threads;
    for (const auto& e : labels)
      threads.push_back(e.thread);
    for (auto t : threads) {
      labels.push_back(Event{t, Op::Begin, {}});
      labels.push_back(Event{t, Op::End, {}});
    }
  }
  return LabelAlphabet::from_labels(std::move(labels));
}

Nfa::Nfa(LabelAlphabet alphabet, std::size_t states)
    : alphabet_(std::move(alphabet)), states_(states), accepting_(states, false),
      delta_(states * alphabet_.size()) {}

void Nfa::check_state(State q) const {
  if (q >= states_)
    throw ArgumentError("state " + std::to_string(q) + " out of range");
}

std::vector<State> Nfa::accepting_states() const {
  std::vector<State> out;
  for (State q = 0; q < states_; ++q)
    if (accepting_[q])
      out.push_back(q);
  return out;
}

std::size_t Nfa::transition_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : delta_)
    n += d.size();
  return n;
}

void Nfa::add_initial(State q) {
  check_state(q);
  auto it = std::lower_bound(initial_.begin(), initial_.end(), q);
  if (it == initial_.end() || *it != q)
    initial_.insert(it, q);
}

void Nfa::set_accepting(State q, bool on) {
  check_state(q);
  accepting_[q] = on;
}

void Nfa::add_transition(State from, Label a, State to) {
  check_state(from);
  check_state(to);
  if (a >= alphabet_.size())
    throw ArgumentError("label id out of range");
  auto& succ = delta_[from * alphabet_.size() + a];
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to)
    succ.insert(it, to);
}

void Nfa::add_loop_all(State from, State to) {
  for (Label a = 0; a < alphabet_.size(); ++a)
    add_transition(from, a, to);
}

Dfa::Dfa(LabelAlphabet alphabet, std::size_t states, State initial)
    : alphabet_(std::move(alphabet)), states_(states), initial_(initial), accepting_(states, false),
      delta_(states * alphabet_.size(), 0) {
  if (initial >= states)
    throw ArgumentError("initial state out of range");
}

void Dfa::set_accepting(State q, bool on) {
  if (q >= states_)
    throw ArgumentError("state out of range");
  accepting_[q] = on;
}

void Dfa::set_transition(State from, Label a, State to) {
  if (from >= states_ || to >= states_ || a >= alphabet_.size())
    throw ArgumentError("transition out of range");
  delta_[from * alphabet_.size() + a] = to;
}

std::size_t Dfa::live_states() const {
  std::vector<bool> live(accepting_);
  bool changed = true;
  while (changed) {
    changed = false;
    for (State q = 0; q < states_; ++q) {
      if (live[q])
        continue;
      for (Label a = 0; a < alphabet_.size(); ++a)
        if (live[next(q, a)]) {
          live[q] = true;
          changed = true;
          break;
        }
    }
  }
  return static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
}

std::vector<Label> encode(const LabelAlphabet& alphabet, const Trace& t) {
  std::vector<Label> out;
  out.reserve(t.size());
  for (const auto& e : t)
    out.push_back(alphabet.index(e));
  return out;
}

bool accepts(const Nfa& a, const Trace& t) {
  auto word = encode(a.alphabet(), t);
  std::vector<bool> cur(a.states(), false), nxt(a.states());
  for (auto q : a.initial())
    cur[q] = true;
  for (auto l : word) {
    std::fill(nxt.begin(), nxt.end(), false);
    for (State q = 0; q < a.states(); ++q)
      if (cur[q])
        for (auto r : a.successors(q, l))
          nxt[r] = true;
    cur.swap(nxt);
  }
  for (State q = 0; q < a.states(); ++q)
    if (cur[q] && a.accepting(q))
      return true;
  return false;
}

bool accepts(const Dfa& a, const Trace& t) {
  State q = a.initial();
  for (auto l : encode(a.alphabet(), t))
    q = a.next(q, l);
  return a.accepting(q);
}

Dfa determinize(const Nfa& a) {
  const std::size_t sigma = a.alphabet().size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<std::vector<State>> table;
  std::deque<State> work;

  auto intern = [&](std::vector<State> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<State>(subsets.size()));
    if (fresh) {
      subsets.push_back(std::move(s));
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(a.initial());
  std::vector<bool> mark(a.states());
  while (!work.empty()) {
    State id = work.front();
    work.pop_front();
    if (table.size() <= id)
      table.resize(id + 1);
    table[id].resize(sigma);
    for (Label l = 0; l < sigma; ++l) {
      std::fill(mark.begin(), mark.end(), false);
      for (auto q : subsets[id])
        for (auto r : a.successors(q, l))
          mark[r] = true;
      std::vector<State> next;
      for (State r = 0; r < a.states(); ++r)
        if (mark[r])
          next.push_back(r);
      table[id][l] = intern(std::move(next));
    }
  }

  Dfa d(a.alphabet(), subsets.size(), 0);
  for (State id = 0; id < subsets.size(); ++id) {
    for (Label l = 0; l < sigma; ++l)
      d.set_transition(id, l, table[id][l]);
    d.set_accepting(id, std::any_of(subsets[id].begin(), subsets[id].end(), [&](State q) { return a.accepting(q); }));
  }
  return d;
}

Nfa spec_race(const LabelAlphabet& alphabet) {
  std::vector<Label> access;
  for (Label l = 0; l < alphabet.size(); ++l)
    if (alphabet.label(l).is_access())
      access.push_back(l);
  const State accept = static_cast<State>(access.size() + 1);
  Nfa nfa(alphabet, access.size() + 2);
  nfa.add_initial(0);
  nfa.set_accepting(accept);
  nfa.add_loop_all(0, 0);
  nfa.add_loop_all(accept, accept);
  for (std::size_t i = 0; i < access.size(); ++i) {
    const Event& a = alphabet.label(access[i]);
    const State pending = static_cast<State>(i + 1);
    nfa.add_transition(0, access[i], pending);
    for (auto m : access) {
      const Event& b = alphabet.label(m);
      if (a.thread != b.thread && a.loc == b.loc && !(a.is_read() && b.is_read()))
        nfa.add_transition(pending, m, accept);
    }
  }
  return nfa;
}

Nfa spec_pattern(const std::vector<Event>& seq, const LabelAlphabet& alphabet) {
  if (seq.empty())
    throw ArgumentError("pattern must have at least one label");
  Nfa nfa(alphabet, seq.size() + 1);
  nfa.add_initial(0);
  nfa.set_accepting(static_cast<State>(seq.size()));
  for (State q = 0; q <= seq.size(); ++q)
    nfa.add_loop_all(q, q);
  for (State q = 0; q < seq.size(); ++q)
    nfa.add_transition(q, seq[q], q + 1);
  return nfa;
}

Nfa spec_order_violation(const Event& alpha, const Event& beta, const LabelAlphabet& alphabet) {
  return spec_pattern({beta, alpha}, alphabet);
}

Nfa spec_adjacent(const Event& a, const Event& b, const LabelAlphabet& alphabet) {
  Nfa nfa(alphabet, 3);
  nfa.add_initial(0);
  nfa.set_accepting(2);
  nfa.add_loop_all(0, 0);
  nfa.add_loop_all(2, 2);
  nfa.add_transition(0, a, 1);
  nfa.add_transition(1, b, 2);
  return nfa;
}

Nfa spec_serial(const LabelAlphabet& alphabet) {
  std::vector<Symbol> threads;
  for (const auto& e : alphabet.labels())
    if (std::find(threads.begin(), threads.end(), e.thread) == threads.end())
      threads.push_back(e.thread);
  std::sort(threads.begin(), threads.end(), [](Symbol a, Symbol b) { return a.name() < b.name(); });

  Nfa nfa(alphabet, threads.size() + 1);
  nfa.add_initial(0);
  nfa.set_accepting(0);
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const Event b{threads[i], Op::Begin, {}}, e{threads[i], Op::End, {}};
    if (!alphabet.contains(b) || !alphabet.contains(e))
      throw ArgumentError("alphabet lacks begin/end labels for thread '" + std::string(threads[i].name()) + "'");
    const State q = static_cast<State>(i + 1);
    nfa.add_transition(0, b, q);
    nfa.add_transition(q, e, 0);
    for (Label l = 0; l < alphabet.size(); ++l) {
      const Event& x = alphabet.label(l);
      if (x.thread == threads[i] && x.is_access())
        nfa.add_transition(q, l, q);
    }
  }
  return nfa;
}

namespace {

Event parse_label(const std::string& s) {
  try {
    return Event::parse(s);
  } catch (const Error& e) {
    throw ParseError(0, "bad label '" + s + "'");
  }
}

} // namespace

Nfa parse_nfa_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<Event> labels;
    for (const auto& s : j.at("alphabet"))
      labels.push_back(parse_label(s.get<std::string>()));
    LabelAlphabet alphabet(std::move(labels));
    auto states = j.at("states").get<std::size_t>();
    Nfa nfa(std::move(alphabet), states);
    for (const auto& q : j.at("initial"))
      nfa.add_initial(q.get<State>());
    for (const auto& q : j.at("accepting"))
      nfa.set_accepting(q.get<State>());
    for (const auto& tr : j.at("transitions")) {
      if (!tr.is_array() || tr.size() != 3)
        throw ParseError(0, "transition must be [src, label, dst]");
      auto src = tr[0].get<State>();
      auto dst = tr[2].get<State>();
      auto lab = tr[1].get<std::string>();
      if (lab == "*")
        nfa.add_loop_all(src, dst);
      else if (auto id = nfa.alphabet().find(parse_label(lab)))
        nfa.add_transition(src, *id, dst);
      else
        throw ParseError(0, "transition label '" + lab + "' is not in the alphabet");
    }
    return nfa;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed NFA: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(0, std::string("malformed NFA: ") + e.what());
  }
}

std::string format_nfa_json(const Nfa& nfa) {
  nlohmann::json j;
  j["alphabet"] = nlohmann::json::array();
  for (const auto& l : nfa.alphabet().labels())
    j["alphabet"].push_back(l.to_string());
  j["states"] = nfa.states();
  j["initial"] = nfa.initial();
  j["accepting"] = nfa.accepting_states();
  j["transitions"] = nlohmann::json::array();
  for (State q = 0; q < nfa.states(); ++q)
    for (Label l = 0; l < nfa.alphabet().size(); ++l)
      for (auto r : nfa.successors(q, l))
        j["transitions"].push_back({q, nfa.alphabet().label(l).to_string(), r});
  return j.dump(2) + "\n";
}

} // namespace slicemon
