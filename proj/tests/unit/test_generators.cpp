#include "doctest.h"

#include "slicemon/automata.hpp"
#include "slicemon/error.hpp"
#include "slicemon/frontier.hpp"
#include "slicemon/generators.hpp"
#include "slicemon/oracle.hpp"
#include "slicemon/relations.hpp"
#include "support/test_support.hpp"

#include <set>

using namespace slicemon;

namespace {

Nfa adjacent_spec(const Trace& t, unsigned c) {
  auto a = Event::write("t" + std::to_string(2 * c + 1), "x");
  auto b = Event::read("t" + std::to_string(2 * c + 2), "x");
  return spec_adjacent(a, b, infer_alphabet(std::span(&t, 1)));
}

} // namespace

TEST_CASE("gen_seq_int shape and drop counts") {
  auto [seq, inter] = gen_seq_int(1);
  CHECK(seq == testsupport::T("T1 r x\nT1 r x\nT1 r x\nT2 r x\nT2 r x\nT2 r x"));
  CHECK(inter == testsupport::T("T1 r x\nT2 r x\nT1 r x\nT2 r x\nT1 r x\nT2 r x"));
  for (unsigned k = 1; k <= 6; ++k) {
    auto [s, i] = gen_seq_int(k);
    CHECK(s.size() == 2 * (k + 2));
    CHECK(drop_count(s, i) == k + 1);
    CHECK(drop_count(i, s) == 1u);
  }
  CHECK_THROWS_AS(gen_seq_int(0), ArgumentError);
}

TEST_CASE("gen_non_transitive drop counts") {
  for (unsigned k = 1; k <= 5; ++k) {
    auto tr = gen_non_transitive(k);
    CHECK(rf_equivalent(tr.sigma, tr.rho));
    CHECK(rf_equivalent(tr.rho, tr.gamma));
    CHECK(drop_count(tr.sigma, tr.rho) == k);
    CHECK(drop_count(tr.rho, tr.gamma) == k);
    CHECK(drop_count(tr.sigma, tr.gamma) == 2 * k);
    CHECK(is_k_slice(tr.sigma, tr.rho, k));
    CHECK(is_k_slice(tr.rho, tr.gamma, k));
    CHECK_FALSE(is_k_slice(tr.sigma, tr.gamma, k));
  }
}

TEST_CASE("gen_slice_star_hardness_trace") {
  auto t00 = gen_slice_star_hardness_trace("0#0");
  auto t01 = gen_slice_star_hardness_trace("0#1");
  CHECK(t00.size() == 10);
  CHECK(t01.size() == 10);
  std::set<std::string> locs;
  for (const auto& e : t00)
    if (!e.loc.empty())
      locs.insert(std::string(e.loc.name()));
  CHECK(locs == std::set<std::string>{"c", "u", "x0", "x1"});
  CHECK(t01 != t00);

  CHECK(gen_slice_star_hardness_trace("10#10").size() == 16);
  CHECK(gen_slice_star_hardness_trace("101#011").size() == 22);

  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned bits = 0; bits < (1u << (2 * n)); ++bits) {
      std::string w;
      for (std::size_t i = 0; i < 2 * n; ++i) {
        if (i == n)
          w += '#';
        w += (bits >> i & 1) ? '1' : '0';
      }
      auto t = gen_slice_star_hardness_trace(w);
      auto rf = reads_from(t);
      std::size_t reads = 0;
      for (const auto& e : t)
        reads += e.is_read();
      CHECK(rf.mapped() == reads);
    }

  for (auto bad : {"", "0#", "#1", "01#1", "0#2", "0-1", "0#1#0"})
    CHECK_THROWS_AS(gen_slice_star_hardness_trace(bad), ArgumentError);
}

TEST_CASE("parse_edge_list") {
  using E = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(parse_edge_list("") == E{});
  CHECK(parse_edge_list("1-2,2-3") == E{{1, 2}, {2, 3}});
  CHECK(parse_edge_list(" 3-1 ") == E{{3, 1}});
  for (auto bad : {"1", "1-", "-2", "a-b", "1-2,", "1-2-3"})
    CHECK_THROWS_AS(parse_edge_list(bad), ArgumentError);
}

TEST_CASE("gen_independent_set_trace shape and validation") {
  Graph k3{3, {{1, 2}, {2, 3}, {1, 3}}};
  auto t = gen_independent_set_trace(k3, 1);
  std::set<std::string> threads;
  for (const auto& e : t)
    threads.insert(std::string(e.thread.name()));
  CHECK(threads == std::set<std::string>{"t1", "t2", "t3", "t4"});
  CHECK(t.size() <= 20 * (k3.vertices + k3.edges.size()));
  CHECK(gen_independent_set_trace({3, {{1, 2}, {2, 3}}}, 2).size() == 52);

  CHECK_THROWS_AS(gen_independent_set_trace(k3, 0), ArgumentError);
  CHECK_THROWS_AS(gen_independent_set_trace({2, {{1, 3}}}, 1), ArgumentError);
  CHECK_THROWS_AS(gen_independent_set_trace({2, {{1, 1}}}, 1), ArgumentError);
  CHECK_THROWS_AS(gen_independent_set_trace({0, {}}, 1), ArgumentError);
}

TEST_CASE("independent set reduction: single vertex") {
  Graph g{1, {}};
  auto t = gen_independent_set_trace(g, 1);
  auto spec = adjacent_spec(t, 1);
  CHECK_FALSE(accepts(spec, t));
  CHECK_FALSE(oracle_post(t, spec, 1, t.size()));
  CHECK(oracle_post(t, spec, 2, t.size()));
  CHECK(frontier_post(t, spec, 2).verdict);
  CHECK(frontier_post_drops(t, spec, 2).verdict);
  CHECK_FALSE(frontier_post_drops(t, spec, 1).verdict);
  CHECK(oracle_post(t, spec, static_cast<unsigned>(t.size()), t.size()));
}

TEST_CASE("independent set reduction: YES and NO instances") {
  const unsigned k = 3 * 2 + 2;
  Graph p3{3, {{1, 2}, {2, 3}}};
  Graph two_k2{4, {{1, 2}, {3, 4}}};
  Graph k3{3, {{1, 2}, {2, 3}, {1, 3}}};
  Graph p2{2, {{1, 2}}};
  for (const auto& g : {p3, two_k2}) {
    auto t = gen_independent_set_trace(g, 2);
    auto r = frontier_post_drops(t, adjacent_spec(t, 2), k);
    REQUIRE(r.verdict);
    REQUIRE(r.witness);
    CHECK(accepts(adjacent_spec(t, 2), *r.witness));
    CHECK(drop_count(*r.witness, t) <= k);
  }
  for (const auto& g : {k3, p2}) {
    auto t = gen_independent_set_trace(g, 2);
    CHECK_FALSE(frontier_post_drops(t, adjacent_spec(t, 2), static_cast<unsigned>(t.size()), false).verdict);
  }
  // Frozen from frontier_post_drops: P3 first becomes reachable at k = 3.
  auto t = gen_independent_set_trace(p3, 2);
  CHECK_FALSE(frontier_post_drops(t, adjacent_spec(t, 2), 2, false).verdict);
  CHECK(frontier_post_drops(t, adjacent_spec(t, 2), 3, false).verdict);
}
