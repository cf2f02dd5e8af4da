#pragma once

#include <cstdint>
#include <vector>

#include "align/graph.hpp"

namespace align {

// Number of unordered pairs {i,j} with g adjacency != h adjacency under phi
// (edge of g mapped to a non-edge of h or vice versa). Bit-parallel
// XOR/popcount kernel, OpenMP over rows for large n.
long long disagreements(const Graph& g, const Graph& h, const Permutation& phi);

// Identity-bijection fast path.
long long disagreements_identity(const Graph& g, const Graph& h);

// Plain O(n^2) pair loop; serial reference the bit kernels are tested against.
long long disagreements_reference(const Graph& g, const Graph& h, const Permutation& phi);

// h relabeled by phi: result[i][j] = h[phi(i)][phi(j)]
Graph permuted(const Graph& h, const Permutation& phi);

struct SeedSplit {
  long long seed_seed = 0;
  long long seed_amb = 0;
  long long amb_amb = 0;
  long long total() const { return seed_seed + seed_amb + amb_amb; }
};

// Disagreements split by pair type (both seeds / seed-ambiguous / both
// ambiguous) under the extension of phi_amb that fixes every seed.
SeedSplit seed_split_disagreements(const SeededPair& pair, const Permutation& phi_amb);
SeedSplit seed_split_disagreements_reference(const SeededPair& pair, const Permutation& phi_amb);

// Dense 0/1 matrix as packed bit rows; adjacency blocks of the matchers.
struct BitMatrix {
  int rows = 0;
  int cols = 0;
  size_t words = 0;
  std::vector<uint64_t> bits;

  BitMatrix() = default;
  BitMatrix(int r, int c);

  bool get(int i, int j) const {
    return (bits[static_cast<size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(int i, int j) {
    bits[static_cast<size_t>(i) * words + (j >> 6)] |= uint64_t{1} << (j & 63);
  }
  const uint64_t* row(int i) const { return bits.data() + static_cast<size_t>(i) * words; }

  // nr x nc block of g's adjacency matrix starting at (r0, c0)
  static BitMatrix from_block(const Graph& g, int r0, int c0, int nr, int nc);
};

// out = a * x, a bits (r x c), x dense row-major (c x k), out (r x k).
// Each output row is accumulated in fixed column order by a single thread,
// so results are bitwise reproducible for any thread count.
void bit_dense_mul(const BitMatrix& a, const double* x, int k, double* out);
void bit_dense_mul_reference(const BitMatrix& a, const double* x, int k, double* out);

// out = x * b, x dense row-major (r x c), b bits (c x k), out (r x k)
void dense_bit_mul(const double* x, int r, const BitMatrix& b, double* out);
void dense_bit_mul_reference(const double* x, int r, const BitMatrix& b, double* out);

}  // namespace align
