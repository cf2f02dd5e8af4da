#include "align/kernels.hpp"

#include <bit>
#include <cstring>

namespace align {

namespace {

// xor-popcount of two bit rows
inline long long row_diff(const uint64_t* a, const uint64_t* b, size_t words) {
  long long c = 0;
  for (size_t w = 0; w < words; ++w) c += std::popcount(a[w] ^ b[w]);
  return c;
}

// xor-popcount restricted to the first `prefix` bits
inline long long row_diff_prefix(const uint64_t* a, const uint64_t* b, int prefix) {
  long long c = 0;
  int full = prefix >> 6;
  for (int w = 0; w < full; ++w) c += std::popcount(a[w] ^ b[w]);
  int rem = prefix & 63;
  if (rem) c += std::popcount((a[full] ^ b[full]) & ((uint64_t{1} << rem) - 1));
  return c;
}

void check_same_n(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw DimensionError("graphs must share the vertex count");
}

}  // namespace

long long disagreements_identity(const Graph& g, const Graph& h) {
  check_same_n(g, h);
  const int n = g.n();
  const size_t words = g.words_per_row();
  long long total = 0;
  // each unordered pair is seen from both endpoints; diagonals are zero
#pragma omp parallel for reduction(+ : total) schedule(static) if (n >= 512)
  for (int i = 0; i < n; ++i) total += row_diff(g.row(i), h.row(i), words);
  return total / 2;
}

long long disagreements(const Graph& g, const Graph& h, const Permutation& phi) {
  check_same_n(g, h);
  if (phi.size() != g.n()) throw DimensionError("permutation length must equal n");
  if (phi.is_identity()) return disagreements_identity(g, h);
  // general bijection: the column scatter defeats word-level xor, so this is
  // the pair loop with rows split across threads
  const int n = g.n();
  const int* img = phi.image.data();
  long long total = 0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 32) if (n >= 256)
  for (int i = 0; i < n; ++i) {
    const uint64_t* grow = g.row(i);
    const uint64_t* hrow = h.row(img[i]);
    long long local = 0;
    for (int j = i + 1; j < n; ++j) {
      int pj = img[j];
      uint64_t ge = (grow[j >> 6] >> (j & 63)) & 1u;
      uint64_t he = (hrow[pj >> 6] >> (pj & 63)) & 1u;
      local += ge != he;
    }
    total += local;
  }
  return total;
}

long long disagreements_reference(const Graph& g, const Graph& h, const Permutation& phi) {
  check_same_n(g, h);
  if (phi.size() != g.n()) throw DimensionError("permutation length must equal n");
  const int n = g.n();
  long long total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(i, j) != h.has_edge(phi(i), phi(j))) ++total;
  return total;
}

Graph permuted(const Graph& h, const Permutation& phi) {
  if (phi.size() != h.n()) throw DimensionError("permutation length must equal n");
  const int n = h.n();
  Graph out;
  out.n_ = n;
  out.words_ = h.words_;
  out.edges_ = h.edges_;  // relabeling preserves the edge count
  out.bits_.assign(static_cast<size_t>(n) * h.words_, 0);
  const int* img = phi.image.data();
  // the per-row gather is light; parallelism only pays on large graphs
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (int i = 0; i < n; ++i) {
    const uint64_t* src = h.row(img[i]);
    uint64_t* dst = out.bits_.data() + static_cast<size_t>(i) * out.words_;
    for (int j = 0; j < n; ++j) {
      int pj = img[j];
      uint64_t bit = (src[pj >> 6] >> (pj & 63)) & uint64_t{1};
      dst[j >> 6] |= bit << (j & 63);
    }
  }
  return out;
}

SeedSplit seed_split_disagreements(const SeededPair& pair, const Permutation& phi_amb) {
  const int s = pair.seeds;
  const int m = pair.ambiguous();
  if (phi_amb.size() != m) throw DimensionError("ambiguous permutation length must equal m");
  const Graph& g = pair.g;
  const Graph& h = pair.h;
  SeedSplit out;

  long long ss2 = 0;
  for (int i = 0; i < s; ++i) ss2 += row_diff_prefix(g.row(i), h.row(i), s);
  out.seed_seed = ss2 / 2;

  for (int a = 0; a < m; ++a)
    out.seed_amb += row_diff_prefix(g.row(s + a), h.row(s + phi_amb(a)), s);

  // ambiguous block with h columns relabeled through phi_amb
  long long aa2 = 0;
  for (int a = 0; a < m; ++a) {
    const uint64_t* grow = g.row(s + a);
    const uint64_t* hrow = h.row(s + phi_amb(a));
    for (int b = 0; b < m; ++b) {
      if (b == a) continue;
      int gj = s + b, hj = s + phi_amb(b);
      bool ge = (grow[gj >> 6] >> (gj & 63)) & 1u;
      bool he = (hrow[hj >> 6] >> (hj & 63)) & 1u;
      aa2 += ge != he;
    }
  }
  out.amb_amb = aa2 / 2;
  return out;
}

SeedSplit seed_split_disagreements_reference(const SeededPair& pair,
                                             const Permutation& phi_amb) {
  const int s = pair.seeds;
  const int m = pair.ambiguous();
  if (phi_amb.size() != m) throw DimensionError("ambiguous permutation length must equal m");
  Permutation full = extend_with_seeds(phi_amb, s);
  SeedSplit out;
  const int n = pair.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (pair.g.has_edge(i, j) == pair.h.has_edge(full(i), full(j))) continue;
      if (j < s)
        ++out.seed_seed;
      else if (i < s)
        ++out.seed_amb;
      else
        ++out.amb_amb;
    }
  return out;
}

BitMatrix::BitMatrix(int r, int c)
    : rows(r), cols(c), words(static_cast<size_t>((c + 63) / 64)),
      bits(static_cast<size_t>(r) * words, 0) {}

BitMatrix BitMatrix::from_block(const Graph& g, int r0, int c0, int nr, int nc) {
  BitMatrix b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      if (g.has_edge(r0 + i, c0 + j)) b.set(i, j);
  return b;
}

void bit_dense_mul(const BitMatrix& a, const double* x, int k, double* out) {
#pragma omp parallel for schedule(static) if (a.rows >= 64)
  for (int i = 0; i < a.rows; ++i) {
    double* dst = out + static_cast<size_t>(i) * k;
    std::memset(dst, 0, sizeof(double) * static_cast<size_t>(k));
    const uint64_t* row = a.row(i);
    for (size_t w = 0; w < a.words; ++w) {
      uint64_t bitsw = row[w];
      while (bitsw) {
        int kk = static_cast<int>(w * 64) + std::countr_zero(bitsw);
        bitsw &= bitsw - 1;
        const double* src = x + static_cast<size_t>(kk) * k;
        for (int j = 0; j < k; ++j) dst[j] += src[j];
      }
    }
  }
}

void bit_dense_mul_reference(const BitMatrix& a, const double* x, int k, double* out) {
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < k; ++j) {
      double acc = 0;
      for (int kk = 0; kk < a.cols; ++kk)
        if (a.get(i, kk)) acc += x[static_cast<size_t>(kk) * k + j];
      out[static_cast<size_t>(i) * k + j] = acc;
    }
}

void dense_bit_mul(const double* x, int r, const BitMatrix& b, double* out) {
  const int k = b.cols;
#pragma omp parallel for schedule(static) if (r >= 64)
  for (int i = 0; i < r; ++i) {
    double* dst = out + static_cast<size_t>(i) * k;
    std::memset(dst, 0, sizeof(double) * static_cast<size_t>(k));
    const double* src = x + static_cast<size_t>(i) * b.rows;
    for (int c = 0; c < b.rows; ++c) {
      double coef = src[c];
      if (coef == 0.0) continue;
      const uint64_t* row = b.row(c);
      for (size_t w = 0; w < b.words; ++w) {
        uint64_t bitsw = row[w];
        while (bitsw) {
          int j = static_cast<int>(w * 64) + std::countr_zero(bitsw);
          bitsw &= bitsw - 1;
          dst[j] += coef;
        }
      }
    }
  }
}

void dense_bit_mul_reference(const double* x, int r, const BitMatrix& b, double* out) {
  const int k = b.cols;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) {
      double acc = 0;
      for (int c = 0; c < b.rows; ++c)
        if (b.get(c, j)) acc += x[static_cast<size_t>(i) * b.rows + c];
      out[static_cast<size_t>(i) * k + j] = acc;
    }
}

}  // namespace align
