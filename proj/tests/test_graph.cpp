#include <doctest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qpagerank/error.hpp"
#include "qpagerank/generators.hpp"
#include "qpagerank/graph.hpp"
#include "qpagerank/graph_io.hpp"

using namespace qpr;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("construction normalizes arcs") {
    DirectedGraph g(3, {{2, 0}, {0, 1}, {2, 0}, {1, 2}});
    CHECK(g.node_count() == 3);
    CHECK(g.arc_count() == 3);
    CHECK(g.has_arc(2, 0));
    CHECK_FALSE(g.has_arc(0, 2));
    CHECK(g.out_degree(2) == 1);
    CHECK(g.label(1) == "1");
  }

  TEST_CASE("construction errors") {
    CHECK(kind_of([] { DirectedGraph(0, {}); }) == ErrorKind::NoNodes);
    CHECK(kind_of([] { DirectedGraph(2, {{0, 2}}); }) == ErrorKind::OutOfRange);
    CHECK(kind_of([] { DirectedGraph(2, {{1, 1}}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { DirectedGraph(2, {}, {"a"}); }) == ErrorKind::DimensionMismatch);
  }

  TEST_CASE("out degree on benchmarks") {
    const auto a = benchmark_graph(Benchmark::Fig1a);
    CHECK(out_degree(a, 0) == 1);
    CHECK(out_degree(a, 1) == 0);
    CHECK(out_degree(benchmark_graph(Benchmark::Fig1d), 0) == 3);
  }

  TEST_CASE("remove_nodes on the 4-cycle gives a path") {
    const auto c = benchmark_graph(Benchmark::Fig1c);
    const NodeId victim[] = {0};
    const ReducedGraph r = remove_nodes(c, victim);
    CHECK(r.graph == DirectedGraph(3, {{0, 1}, {1, 2}}));
    CHECK(r.original_index == std::vector<NodeId>{1, 2, 3});
    CHECK(remove_nodes(c, {}).graph == c);
    const NodeId all[] = {0, 1, 2, 3};
    CHECK(kind_of([&] { remove_nodes(c, all); }) == ErrorKind::NoNodes);
    const NodeId bad[] = {7};
    CHECK(kind_of([&] { remove_nodes(c, bad); }) == ErrorKind::OutOfRange);
  }

  TEST_CASE("remove_nodes keeps survivor arcs exactly") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto g = generate_scale_free(32, seed);
      std::mt19937_64 rng(seed);
      std::vector<NodeId> victims;
      for (int i = 0; i < 5; ++i) victims.push_back(static_cast<NodeId>(rng() % 32));
      const ReducedGraph r = remove_nodes(g, victims);
      const std::set<NodeId> dead(victims.begin(), victims.end());
      CHECK(r.graph.node_count() == 32 - dead.size());
      std::set<std::pair<NodeId, NodeId>> expected, got;
      for (const Arc& a : g.arcs())
        if (!dead.count(a.src) && !dead.count(a.dst)) expected.insert({a.src, a.dst});
      for (const Arc& a : r.graph.arcs()) got.insert({r.original_index[a.src], r.original_index[a.dst]});
      CHECK(got == expected);
    }
  }

  TEST_CASE("complete digraph") {
    const auto k = complete_digraph(5);
    CHECK(k.arc_count() == 20);
  }
}

TEST_SUITE("io") {
  TEST_CASE("edge list examples") {
    const auto g = parse_edge_list("0 1\n");
    CHECK(g == benchmark_graph(Benchmark::Fig1a));
    CHECK(kind_of([] { parse_edge_list(""); }) == ErrorKind::NoNodes);
    CHECK(kind_of([] { parse_edge_list("# only a comment\n"); }) == ErrorKind::NoNodes);
    const auto ab = parse_edge_list("a b\nb a\n");
    CHECK(ab.node_count() == 2);
    CHECK(ab.has_arc(0, 1));
    CHECK(ab.has_arc(1, 0));
    CHECK(ab.labels() == std::vector<std::string>{"a", "b"});
  }

  TEST_CASE("edge list errors carry line numbers") {
    try {
      parse_edge_list("0 1\n1 2 3\n");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.kind() == ErrorKind::Parse);
    }
    CHECK(kind_of([] { parse_edge_list("0 0\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_edge_list("0 2\n"); }) == ErrorKind::Parse);
  }

  TEST_CASE("pajek examples") {
    const auto g = parse_pajek("*Vertices 2\n1 \"home\"\n2 \"page\"\n*Arcs\n1 2\n");
    CHECK(g.node_count() == 2);
    CHECK(g.has_arc(0, 1));
    CHECK(g.labels() == std::vector<std::string>{"home", "page"});
    CHECK(kind_of([] { parse_pajek("*Vertices 2\n*Arcs\n3 1\n"); }) == ErrorKind::UndeclaredVertex);
    CHECK(kind_of([] { parse_pajek("*Arcs\n1 2\n"); }) == ErrorKind::MissingHeader);
    CHECK(kind_of([] { parse_pajek("1 2\n"); }) == ErrorKind::MissingHeader);
    CHECK(kind_of([] { parse_pajek("*Vertices 0\n"); }) == ErrorKind::NoNodes);
    CHECK(kind_of([] { parse_pajek("*Vertices 2\n1 \"a\"\n1 \"b\"\n"); }) == ErrorKind::DuplicateVertex);
    CHECK(kind_of([] { parse_pajek("*Vertices 2\n*Edges\n1 2\n"); }) == ErrorKind::Parse);
    const auto w = parse_pajek("%c\n*Network x\n*Vertices 3\n*Arcs\n1 2 0.5\n2 3\n");
    CHECK(w.arc_count() == 2);
    CHECK_FALSE(w.has_labels());
  }

  TEST_CASE("round trips") {
    std::vector<DirectedGraph> graphs{generate_binary_tree(1), generate_binary_tree(4), generate_hierarchical(3),
                                      benchmark_graph(Benchmark::Fig2b), parse_edge_list("x y\ny z\n")};
    for (std::uint64_t s = 0; s < 10; ++s) graphs.push_back(generate_scale_free(50, s));
    for (const auto& g : graphs) {
      CHECK(parse_pajek(to_pajek(g)) == g);
      if (!g.has_labels()) CHECK(parse_edge_list(to_edge_list(g)) == g);
    }
  }

  TEST_CASE("canonical edge list is sorted") {
    const auto g = DirectedGraph(3, {{2, 0}, {0, 2}, {0, 1}});
    CHECK(to_edge_list(g) == "# nodes 3\n0 1\n0 2\n2 0\n");
  }

  TEST_CASE("load_graph missing file") {
    CHECK(kind_of([] { load_graph("/nonexistent/graph.txt"); }) == ErrorKind::Io);
  }

  TEST_CASE("graph hash") {
    CHECK(graph_hash(generate_scale_free(40, 3)) == graph_hash(generate_scale_free(40, 3)));
    CHECK(graph_hash(generate_scale_free(40, 3)) != graph_hash(generate_scale_free(40, 4)));
    CHECK(graph_hash_hex(generate_binary_tree(2)).size() == 16);
  }
}

TEST_SUITE("generators") {
  TEST_CASE("scale-free is deterministic and simple") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
      const auto a = generate_scale_free(128, seed);
      const auto b = generate_scale_free(128, seed);
      CHECK(to_edge_list(a) == to_edge_list(b));
      CHECK(a.node_count() == 128);
      for (const Arc& arc : a.arcs()) CHECK(arc.src != arc.dst);
    }
    CHECK(to_edge_list(generate_scale_free(128, 1)) != to_edge_list(generate_scale_free(128, 2)));
    const auto tiny = generate_scale_free(3, 5);
    CHECK(tiny.node_count() == 3);
  }

  TEST_CASE("scale-free has dominant hubs") {
    const auto g = generate_scale_free(256, 7);
    std::vector<int> indeg(g.node_count(), 0);
    for (const Arc& a : g.arcs()) ++indeg[a.dst];
    const int max_in = *std::max_element(indeg.begin(), indeg.end());
    CHECK(max_in > 20);
  }

  TEST_CASE("scale-free parameter validation") {
    ScaleFreeMix bad;
    bad.new_source = 0.5;
    CHECK(kind_of([&] { generate_scale_free(10, 0, bad); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { generate_scale_free(2, 0); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("hierarchical sizes") {
    const auto g1 = generate_hierarchical(1);
    CHECK(g1 == DirectedGraph(3, {{0, 1}, {1, 2}, {2, 0}}));
    std::size_t expected = 3;
    for (unsigned n = 1; n <= 6; ++n, expected *= 3) CHECK(generate_hierarchical(n).node_count() == expected);
    const auto toward = generate_hierarchical(3, RootOrientation::TowardRoot);
    const auto away = generate_hierarchical(3, RootOrientation::AwayFromRoot);
    CHECK(toward.arc_count() == away.arc_count());
    std::size_t into_root = 0;
    for (const Arc& a : toward.arcs()) into_root += a.dst == 0;
    CHECK(into_root > 1);
  }

  TEST_CASE("binary trees") {
    for (unsigned levels = 1; levels <= 8; ++levels) {
      const auto t = generate_binary_tree(levels);
      CHECK(t.node_count() == (std::size_t{1} << levels) - 1);
      CHECK(t.arc_count() == t.node_count() - 1);
      CHECK(t.out_degree(0) == 0);
    }
    CHECK(generate_binary_tree(2) == DirectedGraph(3, {{1, 0}, {2, 0}}));
  }

  TEST_CASE("benchmarks") {
    CHECK(benchmark_graph(Benchmark::Fig1a) == DirectedGraph(2, {{0, 1}}));
    CHECK(benchmark_graph(Benchmark::Fig1b) == benchmark_graph(Benchmark::Fig1a));
    CHECK(benchmark_graph(Benchmark::Fig1c) == DirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    CHECK(benchmark_graph(Benchmark::Fig1d) ==
          DirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 3}, {2, 3}, {3, 2}}));
    CHECK(benchmark_graph(Benchmark::Fig2b).node_count() == 7);
    CHECK(parse_benchmark("fig1d") == Benchmark::Fig1d);
    CHECK(kind_of([] { parse_benchmark("fig9"); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("generator specs") {
    const auto p = parse_generator_spec("scalefree:64", 3);
    CHECK(generate(p) == generate_scale_free(64, 3));
    CHECK(generate(parse_generator_spec("tree:3", 0)).node_count() == 7);
    CHECK(generate(parse_generator_spec("hierarchical:2", 0)).node_count() == 9);
    CHECK(kind_of([] { parse_generator_spec("ring:5", 0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { parse_generator_spec("tree", 0); }) == ErrorKind::InvalidArgument);
  }
}
