#include "align/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace align {

double Graph::density() const {
  if (n_ < 2) throw UndefinedError("density undefined for n < 2");
  return static_cast<double>(edges_) / static_cast<double>(pair_count(n_));
}

GraphBuilder::GraphBuilder(int n) {
  if (n < 1) throw DimensionError("graph needs at least one vertex");
  g_.n_ = n;
  g_.words_ = static_cast<size_t>((n + 63) / 64);
  g_.bits_.assign(static_cast<size_t>(n) * g_.words_, 0);
}

GraphBuilder& GraphBuilder::add_edge(int i, int j) {
  if (built_) throw std::logic_error("builder already frozen");
  if (i < 0 || j < 0 || i >= g_.n_ || j >= g_.n_)
    throw DimensionError("edge endpoint out of range");
  if (i == j) throw ParseError("self-loop rejected");
  if (has_edge(i, j)) throw ParseError("duplicate edge rejected");
  g_.bits_[static_cast<size_t>(i) * g_.words_ + (j >> 6)] |= uint64_t{1} << (j & 63);
  g_.bits_[static_cast<size_t>(j) * g_.words_ + (i >> 6)] |= uint64_t{1} << (i & 63);
  ++g_.edges_;
  return *this;
}

bool GraphBuilder::has_edge(int i, int j) const { return g_.has_edge(i, j); }

Graph GraphBuilder::build() {
  built_ = true;
  return std::move(g_);
}

Graph complement(const Graph& g) {
  GraphBuilder b(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (!g.has_edge(i, j)) b.add_edge(i, j);
  return b.build();
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image[static_cast<size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<size_t>(image[static_cast<size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

void Permutation::validate() const {
  const int n = size();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : image) {
    if (v < 0 || v >= n) throw DimensionError("permutation image out of range");
    if (seen[static_cast<size_t>(v)]) throw DimensionError("permutation image repeats a value");
    seen[static_cast<size_t>(v)] = 1;
  }
}

SeededPair::SeededPair(Graph g_in, Graph h_in, int s)
    : g(std::move(g_in)), h(std::move(h_in)), seeds(s) {
  if (g.n() != h.n()) throw DimensionError("paired graphs must share the vertex set");
  if (s < 0 || s > g.n()) throw DimensionError("seed count out of range");
}

Permutation extend_with_seeds(const Permutation& phi_amb, int seeds) {
  const int m = phi_amb.size();
  std::vector<int> img(static_cast<size_t>(seeds + m));
  for (int i = 0; i < seeds; ++i) img[static_cast<size_t>(i)] = i;
  for (int a = 0; a < m; ++a) img[static_cast<size_t>(seeds + a)] = seeds + phi_amb(a);
  return Permutation(std::move(img));
}

// ---- text formats ----

namespace {

[[noreturn]] void bad_line(const std::string& what, int lineno) {
  std::ostringstream msg;
  msg << what << " (line " << lineno << ")";
  throw ParseError(msg.str());
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string tok;
  int n = 0;
  if (!(in >> tok) || tok != "n" || !(in >> n) || n < 1)
    throw ParseError("edge list must start with 'n <count>'");
  GraphBuilder b(n);
  int lineno = 1;
  long long i, j;
  while (in >> i) {
    ++lineno;
    if (!(in >> j)) bad_line("edge line needs two endpoints", lineno);
    if (i < 1 || j < 1 || i > n || j > n) bad_line("vertex out of range", lineno);
    if (i >= j) bad_line("edges must satisfy i < j", lineno);
    try {
      b.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1));
    } catch (const ParseError& e) {
      bad_line(e.what(), lineno);
    }
  }
  if (!in.eof() && in.fail()) throw ParseError("malformed edge list token");
  return b.build();
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << "\n";
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.has_edge(i, j)) out << i + 1 << " " << j + 1 << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_edge_list(out, g);
}

Permutation read_permutation(std::istream& in, int expected_n) {
  std::vector<int> img;
  long long v;
  while (in >> v) {
    if (v < 1 || v > expected_n) throw ParseError("permutation value out of range");
    img.push_back(static_cast<int>(v - 1));
  }
  if (!in.eof() && in.fail()) throw ParseError("malformed permutation token");
  if (static_cast<int>(img.size()) != expected_n)
    throw DimensionError("permutation length does not match the graph");
  Permutation p(std::move(img));
  p.validate();
  return p;
}

Permutation read_permutation_file(const std::string& path, int expected_n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_permutation(in, expected_n);
}

void write_permutation(std::ostream& out, const Permutation& phi) {
  for (int v : phi.image) out << v + 1 << "\n";
}

SeededPair read_pair(std::istream& in) {
  std::string tok;
  int n = 0, s = 0;
  if (!(in >> tok) || tok != "n" || !(in >> n) || n < 1)
    throw ParseError("pair file must start with 'n <count>'");
  if (!(in >> tok) || tok != "s" || !(in >> s))
    throw ParseError("pair file needs 's <seeds>' after the vertex count");
  GraphBuilder bg(n), bh(n);
  int lineno = 2;
  while (in >> tok) {
    ++lineno;
    long long i, j;
    if ((tok != "g" && tok != "h") || !(in >> i >> j))
      bad_line("expected 'g i j' or 'h i j'", lineno);
    if (i < 1 || j < 1 || i > n || j > n || i >= j) bad_line("bad edge endpoints", lineno);
    try {
      (tok == "g" ? bg : bh).add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1));
    } catch (const ParseError& e) {
      bad_line(e.what(), lineno);
    }
  }
  if (!in.eof() && in.fail()) throw ParseError("malformed pair file token");
  return SeededPair(bg.build(), bh.build(), s);
}

SeededPair read_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_pair(in);
}

void write_pair(std::ostream& out, const SeededPair& pair) {
  out << "n " << pair.n() << "\n";
  out << "s " << pair.seeds << "\n";
  for (int i = 0; i < pair.n(); ++i)
    for (int j = i + 1; j < pair.n(); ++j)
      if (pair.g.has_edge(i, j)) out << "g " << i + 1 << " " << j + 1 << "\n";
  for (int i = 0; i < pair.n(); ++i)
    for (int j = i + 1; j < pair.n(); ++j)
      if (pair.h.has_edge(i, j)) out << "h " << i + 1 << " " << j + 1 << "\n";
}

void write_pair_file(const std::string& path, const SeededPair& pair) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_pair(out, pair);
}

}  // namespace align
