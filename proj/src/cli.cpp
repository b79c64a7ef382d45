#include "slicemon/cli.hpp"

#include "slicemon/error.hpp"
#include "slicemon/frontier.hpp"
#include "slicemon/generators.hpp"
#include "slicemon/kmaz_monitor.hpp"
#include "slicemon/oracle.hpp"
#include "slicemon/preimage_monitor.hpp"
#include "slicemon/relations.hpp"
#include "slicemon/spec_selector.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace slicemon::cli {

namespace {

using json = nlohmann::ordered_json;

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ArgumentError("cannot open trace file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_trace(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

json extended(const Extended& v) { return v ? json(*v) : json(nullptr); }

json events_json(const Trace& t) {
  json arr = json::array();
  for (const auto& e : t)
    arr.push_back(e.to_string());
  return arr;
}

json frontier_json(const FrontierResult& r) {
  json j{{"verdict", r.verdict}, {"nodes_explored", r.nodes_explored}};
  if (r.witness)
    j["witness"] = events_json(*r.witness);
  return j;
}

struct Options {
  std::string trace, other, spec = "race", family, word, edges, out_dir, method = "cuts";
  unsigned k = 1, c = 1;
  std::size_t vertices = 0, reps = 1, max_steps = 4, bound = default_oracle_bound;
  bool no_witness = false;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predictive monitoring of concurrent traces under k-slice reorderings", "slicemon"};
  app.require_subcommand(1);
  Options o;
  std::function<json()> action;

  auto add_k = [&](CLI::App* sub) { sub->add_option("--k", o.k, "Slice or swap bound")->check(CLI::PositiveNumber); };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec, "race | serial | ov(A;B) | pattern(A;..) | adjacent(A;B) | file:PATH");
  };
  auto add_bound = [&](CLI::App* sub) { sub->add_option("--bound", o.bound, "Oracle trace length limit"); };
  auto spec_for = [&](const std::vector<Trace>& traces) { return SpecSelector::parse(o.spec).build(traces); };

  auto* height = app.add_subcommand("height", "Drop count and slice height from A to B");
  height->add_option("a", o.trace)->required();
  height->add_option("b", o.other)->required();
  height->callback([&] {
    action = [&] {
      auto a = load_trace(o.trace), b = load_trace(o.other);
      return json{{"rf_equivalent", rf_equivalent(a, b)},
                  {"drop_count", extended(drop_count(a, b))},
                  {"slice_height", extended(slice_height(a, b))}};
    };
  });

  auto* compare = app.add_subcommand("compare", "All pairwise relations between A and B");
  compare->add_option("a", o.trace)->required();
  compare->add_option("b", o.other)->required();
  compare->callback([&] {
    action = [&] {
      auto a = load_trace(o.trace), b = load_trace(o.other);
      return json{{"rf_equivalent", rf_equivalent(a, b)},
                  {"trace_equivalent", trace_equivalent(a, b)},
                  {"swap_distance", extended(swap_distance(a, b))},
                  {"drop_count_ab", extended(drop_count(a, b))},
                  {"drop_count_ba", extended(drop_count(b, a))},
                  {"slice_height", extended(slice_height(a, b))}};
    };
  });

  auto* monitor = app.add_subcommand("monitor", "Streaming pre-image monitor");
  monitor->add_option("trace", o.trace)->required();
  add_k(monitor);
  add_spec(monitor);
  monitor->callback([&] {
    action = [&] {
      auto t = load_trace(o.trace);
      auto r = monitor_preimage(spec_for({t}), t, o.k);
      return json{{"verdict", r.verdict}, {"max_states", r.stats.max_states}, {"steps", r.stats.steps}};
    };
  });

  auto* kmaz = app.add_subcommand("kmaz-monitor", "Membership modulo at most k independent swaps");
  kmaz->add_option("trace", o.trace)->required();
  add_k(kmaz);
  add_spec(kmaz);
  kmaz->callback([&] {
    action = [&] {
      auto t = load_trace(o.trace);
      auto nfa = build_kmaz_nfa(determinize(spec_for({t})), o.k);
      return json{{"verdict", accepts(nfa, t)}, {"nfa_states", nfa.states()}};
    };
  });

  auto* fpre = app.add_subcommand("frontier-pre", "Offline pre-image search");
  fpre->add_option("trace", o.trace)->required();
  add_k(fpre);
  add_spec(fpre);
  fpre->add_flag("--no-witness", o.no_witness, "Skip witness reconstruction");
  fpre->callback([&] {
    action = [&] {
      auto t = load_trace(o.trace);
      return frontier_json(frontier_pre(t, spec_for({t}), o.k, !o.no_witness));
    };
  });

  auto* fpost = app.add_subcommand("frontier-post", "Offline post-image search");
  fpost->add_option("trace", o.trace)->required();
  add_k(fpost);
  add_spec(fpost);
  fpost->add_flag("--no-witness", o.no_witness, "Skip witness reconstruction");
  fpost->add_option("--method", o.method, "cuts (enumerate cut points) or drops")
      ->check(CLI::IsMember({"cuts", "drops"}));
  fpost->callback([&] {
    action = [&] {
      auto t = load_trace(o.trace);
      auto spec = spec_for({t});
      auto r = o.method == "drops" ? frontier_post_drops(t, spec, o.k, !o.no_witness)
                                   : frontier_post(t, spec, o.k, !o.no_witness);
      return frontier_json(r);
    };
  });

  auto add_oracle = [&](const char* name, const char* help, bool (*fn)(const Trace&, const Nfa&, unsigned, std::size_t)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("trace", o.trace)->required();
    add_k(sub);
    add_spec(sub);
    add_bound(sub);
    sub->callback([&, fn] {
      action = [&, fn] {
        auto t = load_trace(o.trace);
        return json{{"verdict", fn(t, spec_for({t}), o.k, o.bound)}};
      };
    });
  };
  add_oracle("oracle-pre", "Brute-force pre-image membership", oracle_pre);
  add_oracle("oracle-post", "Brute-force post-image membership", oracle_post);
  add_oracle("oracle-kmaz", "Brute-force swap-ball membership", oracle_kmaz);

  auto* star = app.add_subcommand("slice-star", "Bounded search for repeated single-slice moves from A to B");
  star->add_option("a", o.trace)->required();
  star->add_option("b", o.other)->required();
  star->add_option("--max-steps", o.max_steps, "Number of moves");
  add_bound(star);
  star->callback([&] {
    action = [&] {
      auto a = load_trace(o.trace), b = load_trace(o.other);
      return json{{"reachable", slice_star_reachable(a, b, o.max_steps, o.bound)}};
    };
  });

  auto* gen = app.add_subcommand("gen", "Generate witness and hardness traces");
  gen->add_option("--family", o.family, "seqint | nontrans | slicestar | indepset")
      ->required()
      ->check(CLI::IsMember({"seqint", "nontrans", "slicestar", "indepset"}));
  add_k(gen);
  gen->add_option("--word", o.word, "Bitstring pair a#b (slicestar)");
  gen->add_option("--vertices", o.vertices, "Vertex count (indepset)");
  gen->add_option("--edges", o.edges, "Edges as 1-2,2-3 (indepset)");
  gen->add_option("--c", o.c, "Independent set size (indepset)")->check(CLI::PositiveNumber);
  gen->add_option("--out", o.out_dir, "Write NAME.trace files here instead of inlining them");
  gen->callback([&] {
    action = [&] {
      std::vector<std::pair<std::string, Trace>> traces;
      if (o.family == "seqint") {
        auto [seq, inter] = gen_seq_int(o.k);
        traces = {{"seq", seq}, {"int", inter}};
      } else if (o.family == "nontrans") {
        auto tr = gen_non_transitive(o.k);
        traces = {{"sigma", tr.sigma}, {"rho", tr.rho}, {"gamma", tr.gamma}};
      } else if (o.family == "slicestar") {
        traces = {{"sigma", gen_slice_star_hardness_trace(o.word)}};
      } else {
        traces = {{"sigma", gen_independent_set_trace({o.vertices, parse_edge_list(o.edges)}, o.c)}};
      }
      json list = json::array();
      for (const auto& [name, t] : traces) {
        json item{{"name", name}, {"events", t.size()}};
        if (o.out_dir.empty()) {
          item["trace"] = format_trace(t);
        } else {
          std::filesystem::create_directories(o.out_dir);
          auto path = std::filesystem::path(o.out_dir) / (name + ".trace");
          std::ofstream f(path);
          f << format_trace(t);
          if (!f)
            throw ArgumentError("cannot write '" + path.string() + "'");
          item["path"] = path.string();
        }
        list.push_back(item);
      }
      return json{{"family", o.family}, {"traces", list}};
    };
  });

  auto* bench = app.add_subcommand("bench", "Stream a pattern repeated --reps times through the monitor");
  bench->add_option("trace", o.trace)->required();
  add_k(bench);
  add_spec(bench);
  bench->add_option("--reps", o.reps, "Repetitions")->check(CLI::PositiveNumber);
  bench->callback([&] {
    action = [&] {
      auto t = load_trace(o.trace);
      if (t.empty())
        return json{{"reps", o.reps}, {"steps", 0}, {"max_states", 1}, {"wall_ms", 0.0}};
      PreimageMonitor m(spec_for({t}), o.k);
      const auto word = encode(m.alphabet(), t);
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t r = 0; r < o.reps; ++r)
        for (auto a : word)
          m.step(a);
      const std::chrono::duration<double, std::milli> wall = std::chrono::steady_clock::now() - start;
      return json{{"reps", o.reps},
                  {"steps", m.stats().steps},
                  {"max_states", m.stats().max_states},
                  {"verdict", m.verdict()},
                  {"wall_ms", wall.count()}};
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    out << action().dump() << "\n";
    return Ok;
  } catch (const BoundExceededError& e) {
    err << "error: " << e.what() << "\n";
    return Bound;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return Parse;
  } catch (const AlphabetError& e) {
    err << "error: " << e.what() << "\n";
    return Parse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
}

} // namespace slicemon::cli
