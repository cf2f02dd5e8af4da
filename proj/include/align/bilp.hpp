#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "align/graph.hpp"

namespace align {

// Binary integer linear program for seeded matching in standard equality
// form: minimize the artificial-variable sum subject to [M|E] x = b with
// x binary. The variable vector is [vec P | e | f] (column-major vec of the
// m x m assignment block, then the plus/minus artificials); M stacks the
// A22/B22 commutation block, the two seed-adjacency blocks and the row/column
// sum constraints, in that order. E is [I | -I] over the first m^2 + 2ms rows
// and zero on the 2m assignment rows.
struct BilpModel {
  int m = 0;
  int s = 0;

  // M rows as sparse (column, coefficient) lists over the first m^2 columns
  std::vector<std::vector<std::pair<int, int>>> m_rows;
  std::vector<int> rhs;

  int artificial_rows() const { return m * m + 2 * m * s; }
  int rows() const { return m * m + 2 * m * s + 2 * m; }
  int p_vars() const { return m * m; }
  int var_count() const { return 3 * m * m + 4 * m * s; }

  // vec-P index of assignment entry P[r][c] (column-major)
  int p_index(int r, int c) const { return c * m + r; }

  // Full binary solution vector for the permutation: vec P plus the unique
  // artificial values absorbing each residual. Throws if the permutation is
  // not a bijection of the ambiguous block.
  std::vector<int> encode(const Permutation& phi_amb) const;

  // Encode an arbitrary binary m x m block (row-major). Returns false when
  // no binary artificial assignment can satisfy the constraints.
  bool encode_binary_pblock(std::span<const int> pblock, std::vector<int>& x_out) const;

  bool is_feasible(std::span<const int> x) const;

  // sum of the artificial variables
  long long objective_value(std::span<const int> x) const;
};

BilpModel build_bilp(const SeededPair& pair);

// LP text format (CPLEX-style): objective, equality constraints, binary
// section. Lets an external MILP solver replicate the exact matching runs.
void write_lp(std::ostream& out, const BilpModel& model);
void write_lp_file(const std::string& path, const BilpModel& model);

}  // namespace align
