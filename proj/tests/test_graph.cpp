#include <sstream>

#include "align/graph.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace align;
using namespace align::testing;

TEST_CASE("builder rejects self-loops, duplicates and bad endpoints") {
  GraphBuilder b(4);
  b.add_edge(0, 1);
  CHECK_THROWS_AS(b.add_edge(2, 2), ParseError);
  CHECK_THROWS_AS(b.add_edge(1, 0), ParseError);
  CHECK_THROWS_AS(b.add_edge(0, 4), DimensionError);
  Graph g = b.build();
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("density") {
  CHECK(GraphBuilder(5).build().density() == 0.0);
  GraphBuilder full(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) full.add_edge(i, j);
  CHECK(full.build().density() == 1.0);

  GraphBuilder b(4);
  b.add_edge(0, 1).add_edge(0, 2).add_edge(0, 3);
  CHECK(b.build().density() == doctest::Approx(0.5));

  GraphBuilder tiny(1);
  CHECK_THROWS_AS(tiny.build().density(), UndefinedError);
}

TEST_CASE("permutation validation and inverse") {
  Permutation p(std::vector<int>{2, 0, 1});
  p.validate();
  CHECK_FALSE(p.is_identity());
  Permutation inv = p.inverse();
  for (int i = 0; i < 3; ++i) CHECK(inv(p(i)) == i);

  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0, 1}).validate(), DimensionError);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 3, 1}).validate(), DimensionError);
  CHECK(Permutation::identity(4).is_identity());
}

TEST_CASE("edge list round trip and errors") {
  Rng rng(7);
  Graph g = random_graph(23, 0.3, rng);
  std::stringstream ss;
  write_edge_list(ss, g);
  Graph back = read_edge_list(ss);
  CHECK(back.n() == g.n());
  CHECK(back.edge_count() == g.edge_count());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) CHECK(back.has_edge(i, j) == g.has_edge(i, j));

  auto parse = [](const char* text) {
    std::stringstream in(text);
    return read_edge_list(in);
  };
  CHECK_THROWS_AS(parse("3\n1 2\n"), ParseError);        // missing header keyword
  CHECK_THROWS_AS(parse("n 3\n1 1\n"), ParseError);      // self-loop
  CHECK_THROWS_AS(parse("n 3\n2 1\n"), ParseError);      // wrong endpoint order
  CHECK_THROWS_AS(parse("n 3\n1 2\n1 2\n"), ParseError); // duplicate
  CHECK_THROWS_AS(parse("n 3\n1 4\n"), ParseError);      // out of range
  CHECK_THROWS_AS(parse("n 3\n1 x\n"), ParseError);      // junk token
}

TEST_CASE("pair file round trip") {
  Rng rng(9);
  Graph g = random_graph(10, 0.4, rng);
  Graph h = random_graph(10, 0.4, rng);
  SeededPair pair(g, h, 3);
  std::stringstream ss;
  write_pair(ss, pair);
  SeededPair back = read_pair(ss);
  CHECK(back.seeds == 3);
  CHECK(back.ambiguous() == 7);
  CHECK(back.g.edge_count() == g.edge_count());
  CHECK(back.h.edge_count() == h.edge_count());

  CHECK_THROWS_AS(SeededPair(random_graph(4, 0.5, rng), random_graph(5, 0.5, rng), 1),
                  DimensionError);
  CHECK_THROWS_AS(SeededPair(g, h, 11), DimensionError);
}

TEST_CASE("permutation file format") {
  Permutation p(std::vector<int>{1, 2, 0});
  std::stringstream ss;
  write_permutation(ss, p);
  CHECK(ss.str() == "2\n3\n1\n");
  Permutation back = read_permutation(ss, 3);
  CHECK(back.image == p.image);

  std::stringstream bad("1\n1\n2\n");
  CHECK_THROWS_AS(read_permutation(bad, 3), DimensionError);
  std::stringstream wrong_len("1\n2\n");
  CHECK_THROWS_AS(read_permutation(wrong_len, 3), DimensionError);
}
