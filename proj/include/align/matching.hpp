#pragma once

#include <vector>

#include "align/graph.hpp"
#include "align/kernels.hpp"

namespace align {

// Nonnegative square matrix with unit row and column sums (within tol);
// the relaxation iterate of the Frank-Wolfe matcher.
struct DoublyStochastic {
  int m = 0;
  std::vector<double> a;

  DoublyStochastic() = default;
  explicit DoublyStochastic(int order)
      : m(order), a(static_cast<size_t>(order) * order, 0.0) {}

  static DoublyStochastic barycenter(int order);
  static DoublyStochastic from_permutation(const Permutation& p);

  double& at(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }

  bool is_valid(double tol = 1e-9) const;
};

struct WorkCounters {
  long long fw_iterations = 0;
  long long bnb_nodes = 0;
  long long lap_calls = 0;
};

struct MatchResult {
  Permutation phi_amb;       // permutation of the ambiguous block
  long long objective = 0;   // disagreements of the seed-extended bijection
  WorkCounters work;
  double wall_time_s = 0;
  bool tie_break_identity_first = true;  // documented tie policy of the solvers
};

struct SgmConfig {
  int max_iter = 30;
  double tol = 1e-6;  // relative objective improvement threshold
  enum class Init { Barycenter, Identity } init = Init::Barycenter;
  bool validate_iterates = false;            // check the doubly stochastic invariant
  std::vector<double>* objective_trace = nullptr;  // relaxation values per iteration
};

// Frank-Wolfe ascent on the quadratic relaxation of seeded matching:
// maximize f(D) = tr(D' A12' B12) + tr(D' A21 B21') + tr(D' A22' D B22)
// over doubly stochastic D, one assignment solve per iteration on the
// gradient, exact line search, final projection to a permutation.
MatchResult sgm_match(const SeededPair& pair, const SgmConfig& cfg = {});

struct ExactConfig {
  bool use_sgm_incumbent = true;
  int max_ambiguous = 14;  // hard cap; the search is factorial beyond this
  SgmConfig sgm;
};

// Depth-first branch and bound over assignments of the ambiguous vertices in
// index order. Children are ordered by incremental cost (identity branch
// first on ties); a node is pruned only when its bound strictly exceeds the
// incumbent, so the returned optimum is the first one in exploration order
// and matchability is deterministic. The bound is accumulated cost plus the
// assignment optimum of the residual seed-ambiguous cost matrix.
MatchResult exact_match(const SeededPair& pair, const ExactConfig& cfg = {});

// True when the ambiguous block is mapped identically, i.e. the matcher
// recovered the natural alignment.
bool is_matchable(const MatchResult& result);

}  // namespace align
