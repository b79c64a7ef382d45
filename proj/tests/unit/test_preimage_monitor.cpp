#include "doctest.h"

#include "slicemon/error.hpp"
#include "slicemon/oracle.hpp"
#include "slicemon/preimage_monitor.hpp"
#include "slicemon/relations.hpp"
#include "support/test_support.hpp"

using namespace slicemon;
using testsupport::T;

namespace {

const Event a_ev = Event::read("A", "x"), b_ev = Event::read("B", "x"), c_ev = Event::read("C", "x");

// a* b+ c+ over three read-only threads.
Nfa abc_spec() {
  Nfa nfa(LabelAlphabet::from_labels({a_ev, b_ev, c_ev}), 3);
  nfa.add_initial(0);
  nfa.set_accepting(2);
  nfa.add_transition(0, a_ev, 0);
  nfa.add_transition(0, b_ev, 1);
  nfa.add_transition(1, b_ev, 1);
  nfa.add_transition(1, c_ev, 2);
  nfa.add_transition(2, c_ev, 2);
  return nfa;
}

Trace word(std::string_view s) {
  std::vector<Event> ev;
  for (char ch : s)
    ev.push_back(ch == 'a' ? a_ev : ch == 'b' ? b_ev : c_ev);
  return Trace(ev);
}

State run_dfa(const Dfa& d, State p, const Trace& t) {
  for (const auto& e : t)
    p = d.next(p, d.alphabet().index(e));
  return p;
}

} // namespace

TEST_CASE("consistency automaton steps") {
  auto sigma = LabelAlphabet::from_labels({Event::write("T1", "x"), Event::read("T2", "x"), Event::write("T3", "x")});
  SliceConsistencyDfa cnst(sigma, 2);
  auto wx = Event::write("T1", "x"), rx = Event::read("T2", "x"), wx3 = Event::write("T3", "x");

  auto q = cnst.step(cnst.initial(), wx, 1);
  REQUIRE_FALSE(q.bottom);
  CHECK(q.last_w[0] == 1);
  CHECK(q.seen_w[0] == (std::uint64_t{1} << 1));

  CHECK(cnst.step(cnst.step(cnst.initial(), wx, 2), rx, 1).bottom);

  auto two = cnst.step(cnst.step(cnst.initial(), wx, 2), wx3, 1);
  REQUIRE_FALSE(two.bottom);
  CHECK(two.last_w[0] == 1);
  CHECK(two.seen_w[0] == 0b110);
  CHECK(cnst.step(two, rx, 2).bottom);
  CHECK_FALSE(cnst.step(two, rx, 1).bottom);

  // Going back to an earlier slice within a thread is inconsistent.
  CHECK(cnst.step(cnst.step(cnst.initial(), wx, 2), wx, 1).bottom);
  CnstState sink;
  sink.bottom = true;
  CHECK(cnst.step(sink, wx, 1).bottom);
  CHECK_THROWS_AS(cnst.step(cnst.initial(), wx, 4), ArgumentError);
  CHECK_THROWS_AS(SliceConsistencyDfa(sigma, 0), ArgumentError);
  CHECK_THROWS_AS(SliceConsistencyDfa(sigma, max_monitor_k + 1), ArgumentError);
}

TEST_CASE("consistency automaton agrees with the definitional check (exhaustive n <= 4)") {
  auto labels = testsupport::universe(2, 2, true);
  for (unsigned k = 1; k <= 2; ++k)
    for (std::size_t n = 0; n <= 4; ++n)
      testsupport::for_each_word(labels, n, [&](const Trace& t) {
        std::vector<unsigned> slice(n, 1);
        while (true) {
          std::vector<AnnotatedEvent> ev;
          for (std::size_t i = 0; i < n; ++i)
            ev.push_back({t.events()[i], slice[i]});
          AnnotatedTrace at(ev, k);
          REQUIRE(cnst_accepts(at) == definitional_consistency_check(at));
          std::size_t i = n;
          while (i > 0 && ++slice[i - 1] == k + 2)
            slice[--i] = 1;
          if (i == 0)
            break;
        }
      });
}

TEST_CASE("consistency sink is absorbing along prefixes") {
  std::mt19937_64 rng(29);
  auto labels = testsupport::universe(3, 2, true);
  auto sigma = LabelAlphabet::from_labels(labels);
  for (int it = 0; it < 2000; ++it) {
    const unsigned k = 1 + rng() % 3;
    SliceConsistencyDfa cnst(sigma, k);
    auto at = testsupport::random_annotation(rng, testsupport::random_trace(rng, labels, rng() % 9), k);
    auto q = cnst.initial();
    bool dead = false;
    for (const auto& e : at.events()) {
      q = cnst.step(q, e.event, e.slice);
      CHECK((!dead || q.bottom));
      dead = q.bottom;
    }
    CHECK(cnst.accepts(at) == !dead);
  }
}

TEST_CASE("membership automaton") {
  auto dfa = determinize(abc_spec());
  MembershipDfa memb(dfa, 2);
  auto m0 = memb.initial();
  for (unsigned i = 1; i <= 3; ++i)
    for (State p = 0; p < dfa.states(); ++p)
      CHECK(memb.at(m0, i, p) == p);
  CHECK_FALSE(memb.accepting(m0));

  auto m1 = memb.step(m0, b_ev, 2);
  for (unsigned i = 1; i <= 3; ++i)
    for (State p = 0; p < dfa.states(); ++p)
      CHECK(memb.at(m1, i, p) == (i == 2 ? dfa.next(p, dfa.alphabet().index(b_ev)) : p));

  auto t = word("abbc");
  auto m = memb.initial();
  for (const auto& e : t)
    memb.advance(m, dfa.alphabet().index(e), 1);
  for (State p = 0; p < dfa.states(); ++p)
    CHECK(memb.at(m, 1, p) == run_dfa(dfa, p, t));
  CHECK(memb.accepting(m));

  Nfa eps(dfa.alphabet(), 1);
  eps.add_initial(0);
  eps.set_accepting(0);
  CHECK(MembershipDfa(determinize(eps), 3).accepting(MembershipDfa(determinize(eps), 3).initial()));
}

TEST_CASE("membership rows equal the spec run on each slice projection") {
  auto dfa = determinize(abc_spec());
  std::mt19937_64 rng(31);
  std::vector<Event> labels{a_ev, b_ev, c_ev};
  for (int it = 0; it < 1000; ++it) {
    const unsigned k = 1 + rng() % 3;
    MembershipDfa memb(dfa, k);
    auto at = testsupport::random_annotation(rng, testsupport::random_trace(rng, labels, rng() % 10), k);
    auto m = memb.initial();
    for (const auto& e : at.events())
      m = memb.step(m, e.event, e.slice);
    for (unsigned i = 1; i <= k + 1; ++i)
      for (State p = 0; p < dfa.states(); ++p)
        REQUIRE(memb.at(m, i, p) == run_dfa(dfa, p, at.projection(i)));
    CHECK(memb.accepting(m) == accepts(dfa, at.concatenation()));
  }
}

TEST_CASE("annotating abbaacbc towards aaabbbcc") {
  auto sigma = word("abbaacbc");
  std::vector<AnnotatedEvent> ev;
  for (const auto& e : sigma)
    ev.push_back({e, e == a_ev ? 1u : e == b_ev ? 2u : 3u});
  AnnotatedTrace at(ev, 2);
  CHECK(at.concatenation() == word("aaabbbcc"));
  CHECK(cnst_accepts(at));

  auto dfa = determinize(abc_spec());
  MembershipDfa memb(dfa, 2);
  auto m = memb.initial();
  for (const auto& e : at.events())
    m = memb.step(m, e.event, e.slice);
  CHECK(memb.accepting(m));

  CHECK(monitor_preimage(abc_spec(), sigma, 2).verdict);
  CHECK_FALSE(monitor_preimage(abc_spec(), sigma, 1).verdict);
  CHECK(drop_count(sigma, word("aaabbbcc")) == 2u);
}

TEST_CASE("pre-image monitor examples") {
  auto sigmaA = T("T1 w x\nT2 r x\nT1 w y");
  auto alphabet = infer_alphabet(std::span(&sigmaA, 1));
  // w(y) must come before r(x).
  auto ov = spec_order_violation(Event::read("T2", "x"), Event::write("T1", "y"), alphabet);
  CHECK_FALSE(accepts(ov, sigmaA));
  auto r = monitor_preimage(ov, sigmaA, 1);
  CHECK(r.verdict);
  CHECK(r.stats.steps == 3);
  CHECK(oracle_pre(sigmaA, ov, 1));

  PreimageMonitor m(ov, 3);
  CHECK(m.states().size() == 1);
  m.step(sigmaA.at(1));
  CHECK(m.states().size() <= 4);
  CHECK_THROWS_AS(m.step(Event::write("T9", "x")), AlphabetError);

  Nfa eps(alphabet, 1);
  eps.add_initial(0);
  eps.set_accepting(0);
  auto empty = monitor_preimage(eps, Trace{}, 1);
  CHECK(empty.verdict);
  CHECK(empty.stats.steps == 0);
  CHECK(empty.stats.max_states == 1);

  auto race = spec_race(alphabet);
  auto racy = T("T1 w x\nT2 r x");
  for (unsigned k = 1; k <= 4; ++k)
    CHECK(monitor_preimage(race, racy, k).verdict);

  m.reset();
  CHECK(m.stats().steps == 0);
  m.run(sigmaA);
  CHECK(m.verdict());
}

TEST_CASE("monitor agrees with the brute-force oracle on random inputs") {
  std::mt19937_64 rng(37);
  auto labels = testsupport::universe(2, 2);
  for (int it = 0; it < 600; ++it) {
    auto t = testsupport::random_trace(rng, labels, 1 + rng() % 7);
    auto alphabet = infer_alphabet(std::span(&t, 1));
    const unsigned k = 1 + rng() % 3;
    Nfa spec = it % 2 ? spec_race(alphabet)
                      : spec_pattern({t.at(t.size()), t.at(1)}, alphabet);
    REQUIRE(monitor_preimage(spec, t, k).verdict == oracle_pre(t, spec, k));
  }
}
