#include "slicemon/generators.hpp"

#include "slicemon/error.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <string>

namespace slicemon {

std::pair<Trace, Trace> gen_seq_int(unsigned k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  const Event a = Event::read("T1", "x");
  const Event b = Event::read("T2", "x");
  std::vector<Event> seq, inter;
  for (unsigned i = 0; i < k + 2; ++i)
    seq.push_back(a);
  for (unsigned i = 0; i < k + 2; ++i)
    seq.push_back(b);
  for (unsigned i = 0; i < k + 2; ++i) {
    inter.push_back(a);
    inter.push_back(b);
  }
  return {Trace(std::move(seq)), Trace(std::move(inter))};
}

NonTransitiveTriple gen_non_transitive(unsigned k) {
  if (k == 0)
    throw ArgumentError("k must be positive");
  const Event a = Event::read("T1", "x");
  const Event b = Event::read("T2", "x");
  const unsigned m = 2 * k + 2;
  std::vector<Event> sigma, rho, gamma;
  for (unsigned i = 0; i < m; ++i)
    sigma.push_back(a);
  for (unsigned i = 0; i < m; ++i)
    sigma.push_back(b);
  for (unsigned c = 0; c < k + 1; ++c)
    rho.insert(rho.end(), {a, a, b, b});
  for (unsigned c = 0; c < k; ++c)
    gamma.insert(gamma.end(), {a, b, a, b});
  gamma.insert(gamma.end(), {a, a, b, b});
  return {Trace(std::move(sigma)), Trace(std::move(rho)), Trace(std::move(gamma))};
}

Trace gen_slice_star_hardness_trace(std::string_view word) {
  auto hash = word.find('#');
  if (hash == std::string_view::npos)
    throw ArgumentError("expected bitstrings of the form a#b");
  auto a = word.substr(0, hash);
  auto b = word.substr(hash + 1);
  auto bits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
  };
  if (!bits(a) || !bits(b) || a.size() != b.size())
    throw ArgumentError("expected two non-empty bitstrings of equal length around '#'");

  auto x = [](char bit) { return std::string("x") + bit; };
  auto y = [](char bit) { return std::string("y") + bit; };
  auto flip = [](char bit) { return bit == '0' ? '1' : '0'; };
  std::vector<Event> ev;
  ev.push_back(Event::write("t1", x(flip(a[0]))));
  ev.push_back(Event::write("t1", "c"));
  ev.push_back(Event::write("t1", x(a[0])));
  for (std::size_t i = 1; i < a.size(); ++i) {
    ev.push_back(Event::write("t1", y(a[i])));
    ev.push_back(Event::read("t1", "c"));
    ev.push_back(Event::write("t1", "c"));
    ev.push_back(Event::read("t1", y(a[i])));
  }
  ev.push_back(Event::write("t1", "u"));
  ev.push_back(Event::read("t1", "c"));
  ev.push_back(Event::read("t1", "u"));
  ev.push_back(Event::read("t2", x(b[0])));
  ev.push_back(Event::write("t2", "c"));
  for (std::size_t i = 1; i < b.size(); ++i) {
    ev.push_back(Event::write("t2", y(b[i])));
    ev.push_back(Event::write("t2", "c"));
  }
  ev.push_back(Event::write("t2", "u"));
  ev.push_back(Event::read("t2", "u"));
  return Trace(std::move(ev));
}

std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(std::string_view text) {
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    return first == std::string_view::npos ? std::string_view{} : s.substr(first, s.find_last_not_of(" \t") - first + 1);
  };
  auto fail = [&](std::string_view item) { throw ArgumentError("malformed edge '" + std::string(item) + "'"); };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (trim(text).empty())
    return edges;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const auto dash = item.find('-');
    if (dash == std::string_view::npos)
      fail(item);
    std::size_t ends[2];
    std::string_view parts[2] = {item.substr(0, dash), item.substr(dash + 1)};
    for (int i = 0; i < 2; ++i) {
      auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), ends[i]);
      if (parts[i].empty() || ec != std::errc{} || ptr != parts[i].data() + parts[i].size())
        fail(item);
    }
    edges.emplace_back(ends[0], ends[1]);
    if (comma == std::string_view::npos)
      return edges;
    start = comma + 1;
  }
}

Trace gen_independent_set_trace(const Graph& graph, unsigned c) {
  if (c == 0)
    throw ArgumentError("c must be positive");
  const std::size_t n = graph.vertices;
  if (n == 0)
    throw ArgumentError("graph needs at least one vertex");
  std::vector<std::vector<std::size_t>> adj(n + 1);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : graph.edges) {
    if (u < 1 || v < 1 || u > n || v > n)
      throw ArgumentError("edge endpoint out of range");
    if (u == v)
      throw ArgumentError("self loops are not allowed");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw ArgumentError("duplicate edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj)
    std::sort(nb.begin(), nb.end());

  auto thread = [](std::size_t i) { return "t" + std::to_string(i); };
  auto edge_lock = [](std::size_t u, std::size_t v) {
    return "e" + std::to_string(std::min(u, v)) + "_" + std::to_string(std::max(u, v));
  };
  auto idx = [](const char* base, std::size_t i) { return base + std::to_string(i); };

  std::vector<Event> ev;
  ev.push_back(Event::write(thread(2 * c + 1), "x"));

  for (std::size_t i = 1; i <= c; ++i) {
    const std::string main = thread(i), aux = thread(c + i);
    const std::string y = idx("y", i), z = idx("z", i), s = idx("s", i), lock = idx("l", i);
    auto acquire_vertex = [&](std::size_t j) {
      for (auto v : adj[j])
        ev.push_back(Event::write(main, edge_lock(j, v)));
    };
    auto release_vertex = [&](std::size_t j) {
      for (auto it = adj[j].rbegin(); it != adj[j].rend(); ++it)
        ev.push_back(Event::read(main, edge_lock(j, *it)));
    };

    // Vertex 1 opens with w(s_i); the last vertex closes with r(x).
    acquire_vertex(1);
    ev.push_back(Event::write(main, s));
    for (std::size_t j = 1; j < n; ++j) {
      ev.push_back(Event::write(aux, lock));
      ev.push_back(Event::write(aux, z));
      ev.push_back(Event::read(main, z));
      release_vertex(j);
      acquire_vertex(j + 1);
      ev.push_back(Event::write(main, y));
      ev.push_back(Event::read(aux, y));
      ev.push_back(Event::read(aux, lock));
    }
    ev.push_back(Event::read(main, "x"));
    release_vertex(n);
  }

  const std::string last = thread(2 * c + 2);
  for (std::size_t i = 1; i <= c; ++i)
    ev.push_back(Event::read(last, idx("s", i)));
  for (std::size_t i = 1; i <= c; ++i)
    ev.push_back(Event::write(last, idx("l", i)));
  ev.push_back(Event::read(last, "x"));
  for (std::size_t i = c; i >= 1; --i)
    ev.push_back(Event::read(last, idx("l", i)));
  return Trace(std::move(ev));
}

} // namespace slicemon
