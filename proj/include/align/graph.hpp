#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "align/errors.hpp"

namespace align {

inline long long pair_count(int n) {
  return static_cast<long long>(n) * (n - 1) / 2;
}

class GraphBuilder;

// Undirected simple graph on vertices 0..n-1, stored as dense symmetric bit
// rows (one cache-friendly row of n bits per vertex). Immutable once built;
// safe to share read-only across threads.
class Graph {
 public:
  int n() const { return n_; }
  long long edge_count() const { return edges_; }
  size_t words_per_row() const { return words_; }

  bool has_edge(int i, int j) const {
    return (bits_[static_cast<size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }

  const uint64_t* row(int i) const { return bits_.data() + static_cast<size_t>(i) * words_; }

  // e / C(n,2); requires n >= 2
  double density() const;

 private:
  friend class GraphBuilder;
  friend Graph permuted(const Graph&, const struct Permutation&);
  Graph() = default;

  int n_ = 0;
  long long edges_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

// Accumulates edges, then freezes into an immutable Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n);

  // 0-based endpoints; self-loops and duplicates are rejected
  GraphBuilder& add_edge(int i, int j);

  bool has_edge(int i, int j) const;
  int n() const { return g_.n_; }

  Graph build();

 private:
  Graph g_;
  bool built_ = false;
};

Graph complement(const Graph& g);

// Bijection on 0..n-1; image[i] is where vertex i goes.
struct Permutation {
  std::vector<int> image;

  Permutation() = default;
  explicit Permutation(std::vector<int> img) : image(std::move(img)) {}

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i]; }
  bool is_identity() const;
  Permutation inverse() const;

  // throws DimensionError unless image is a bijection on [0, n)
  void validate() const;
};

// Two graphs on the same vertex set with the first `seeds` vertices matched
// to themselves; the remaining m = n - seeds vertices are ambiguous.
struct SeededPair {
  Graph g;
  Graph h;
  int seeds = 0;

  SeededPair(Graph g_in, Graph h_in, int s);

  int n() const { return g.n(); }
  int ambiguous() const { return g.n() - seeds; }
};

// Extends a permutation of the ambiguous block (0-based within the block)
// to the full vertex set, identity on seeds.
Permutation extend_with_seeds(const Permutation& phi_amb, int seeds);

// --- text formats (1-based vertices externally) ---

// "n <N>" header, then one "i j" line per edge with i < j
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

// one image value per line
Permutation read_permutation(std::istream& in, int expected_n);
Permutation read_permutation_file(const std::string& path, int expected_n);
void write_permutation(std::ostream& out, const Permutation& phi);

// "n <N>" / "s <S>" header, then "g i j" and "h i j" edge lines
SeededPair read_pair(std::istream& in);
SeededPair read_pair_file(const std::string& path);
void write_pair(std::ostream& out, const SeededPair& pair);
void write_pair_file(const std::string& path, const SeededPair& pair);

}  // namespace align
