#pragma once

#include <span>
#include <vector>

#include "align/graph.hpp"

namespace align {

// Dense square matrix of finite reals, row-major.
struct SquareMatrix {
  int m = 0;
  std::vector<double> a;

  SquareMatrix() = default;
  explicit SquareMatrix(int order) : m(order), a(static_cast<size_t>(order) * order, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
};

struct LapResult {
  Permutation perm;
  double value = 0;
};

// Exact linear assignment via shortest augmenting paths (Jonker-Volgenant
// class, O(m^3)). Integer-valued inputs take an epsilon-free int64 path.
// Among all optimal assignments the lexicographically smallest permutation
// is returned, which makes downstream tie handling deterministic (and
// identity-favoring whenever the identity is optimal).
//
// A solver instance owns its scratch buffers; use one instance per worker.
class LapSolver {
 public:
  // maximize sum_i profit[i, sigma(i)]
  LapResult solve_max(const SquareMatrix& profit);
  // minimize sum_i cost[i, sigma(i)]
  LapResult solve_min(const SquareMatrix& cost);

  // int64 cost matrix, minimization; exact. Returns optimal value and fills
  // row_to_col (no lexicographic refinement; used by bound computations that
  // only need the value).
  long long solve_min_value(int m, const long long* cost);

 private:
  template <class T>
  void run_core(int m, const T* cost);
  template <class T>
  std::vector<int> lexicographic_refine(int m, const T* cost, T eps);

  // core outputs
  std::vector<int> row_to_col_, col_to_row_;
  std::vector<double> u_d_, v_d_;
  std::vector<long long> u_i_, v_i_;

  // scratch
  std::vector<double> dist_d_;
  std::vector<long long> dist_i_, icost_;
  std::vector<int> pred_, remaining_;
  std::vector<char> scanned_rows_, scanned_cols_, visited_;
};

LapResult solve_lap_max(const SquareMatrix& profit);

// Admissible completion bound for a partially assigned matching: the exact
// assignment optimum of the residual cost matrix restricted to the still
// free rows and columns. Zero when nothing is left to assign.
double lap_lower_bound(const SquareMatrix& cost,
                       std::span<const int> free_rows,
                       std::span<const int> free_cols);

}  // namespace align
