#include "align/bilp.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "align/kernels.hpp"

namespace align {

BilpModel build_bilp(const SeededPair& pair) {
  const int m = pair.ambiguous();
  const int s = pair.seeds;
  if (m < 1) throw DimensionError("standard form needs at least one ambiguous vertex");

  BilpModel model;
  model.m = m;
  model.s = s;
  model.m_rows.resize(static_cast<size_t>(model.rows()));
  model.rhs.assign(static_cast<size_t>(model.rows()), 0);

  BitMatrix a22 = BitMatrix::from_block(pair.g, s, s, m, m);
  BitMatrix b22 = BitMatrix::from_block(pair.h, s, s, m, m);
  BitMatrix a12 = BitMatrix::from_block(pair.g, 0, s, s, m);
  BitMatrix b12 = BitMatrix::from_block(pair.h, 0, s, s, m);
  BitMatrix a21 = BitMatrix::from_block(pair.g, s, 0, m, s);
  BitMatrix b21 = BitMatrix::from_block(pair.h, s, 0, m, s);

  // commutation block: vec(A22 P - P B22) = (I (x) A22 - B22' (x) I) vec P
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) {
      auto& row = model.m_rows[static_cast<size_t>(c * m + r)];
      for (int rp = 0; rp < m; ++rp)
        if (a22.get(r, rp)) row.emplace_back(c * m + rp, 1);
      for (int cp = 0; cp < m; ++cp)
        if (b22.get(cp, c)) row.emplace_back(cp * m + r, -1);
    }

  // vec(A12 P) = (I (x) A12) vec P, pinned to vec B12
  int base = m * m;
  for (int c = 0; c < m; ++c)
    for (int k = 0; k < s; ++k) {
      auto& row = model.m_rows[static_cast<size_t>(base + c * s + k)];
      for (int rp = 0; rp < m; ++rp)
        if (a12.get(k, rp)) row.emplace_back(c * m + rp, 1);
      model.rhs[static_cast<size_t>(base + c * s + k)] = b12.get(k, c) ? 1 : 0;
    }

  // vec(P B21) = (B21' (x) I) vec P, pinned to vec A21
  base = m * m + m * s;
  for (int k = 0; k < s; ++k)
    for (int r = 0; r < m; ++r) {
      auto& row = model.m_rows[static_cast<size_t>(base + k * m + r)];
      for (int cp = 0; cp < m; ++cp)
        if (b21.get(cp, k)) row.emplace_back(cp * m + r, 1);
      model.rhs[static_cast<size_t>(base + k * m + r)] = a21.get(r, k) ? 1 : 0;
    }

  // assignment rows: column sums then row sums of P, all equal to one
  base = m * m + 2 * m * s;
  for (int c = 0; c < m; ++c) {
    auto& row = model.m_rows[static_cast<size_t>(base + c)];
    for (int rp = 0; rp < m; ++rp) row.emplace_back(c * m + rp, 1);
    model.rhs[static_cast<size_t>(base + c)] = 1;
  }
  base += m;
  for (int r = 0; r < m; ++r) {
    auto& row = model.m_rows[static_cast<size_t>(base + r)];
    for (int cp = 0; cp < m; ++cp) row.emplace_back(cp * m + r, 1);
    model.rhs[static_cast<size_t>(base + r)] = 1;
  }
  return model;
}

bool BilpModel::encode_binary_pblock(std::span<const int> pblock,
                                     std::vector<int>& x_out) const {
  if (static_cast<int>(pblock.size()) != m * m)
    throw DimensionError("assignment block must have m*m entries");
  x_out.assign(static_cast<size_t>(var_count()), 0);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (pblock[static_cast<size_t>(r) * m + c]) x_out[static_cast<size_t>(p_index(r, c))] = 1;

  const int art = artificial_rows();
  for (int row = 0; row < rows(); ++row) {
    long long lhs = 0;
    for (auto [col, coef] : m_rows[static_cast<size_t>(row)])
      lhs += static_cast<long long>(coef) * x_out[static_cast<size_t>(col)];
    long long resid = rhs[static_cast<size_t>(row)] - lhs;
    if (row < art) {
      if (resid < -1 || resid > 1) return false;
      if (resid > 0) x_out[static_cast<size_t>(m * m + row)] = 1;
      if (resid < 0) x_out[static_cast<size_t>(m * m + art + row)] = 1;
    } else if (resid != 0) {
      return false;
    }
  }
  return true;
}

std::vector<int> BilpModel::encode(const Permutation& phi_amb) const {
  if (phi_amb.size() != m) throw DimensionError("permutation length must equal m");
  phi_amb.validate();
  std::vector<int> pblock(static_cast<size_t>(m) * m, 0);
  for (int r = 0; r < m; ++r) pblock[static_cast<size_t>(r) * m + phi_amb(r)] = 1;
  std::vector<int> x;
  if (!encode_binary_pblock(pblock, x))
    throw std::logic_error("permutation encoding unexpectedly infeasible");
  return x;
}

bool BilpModel::is_feasible(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != var_count()) return false;
  for (int v : x)
    if (v != 0 && v != 1) return false;
  const int art = artificial_rows();
  for (int row = 0; row < rows(); ++row) {
    long long lhs = 0;
    for (auto [col, coef] : m_rows[static_cast<size_t>(row)])
      lhs += static_cast<long long>(coef) * x[static_cast<size_t>(col)];
    if (row < art)
      lhs += x[static_cast<size_t>(m * m + row)] - x[static_cast<size_t>(m * m + art + row)];
    if (lhs != rhs[static_cast<size_t>(row)]) return false;
  }
  return true;
}

long long BilpModel::objective_value(std::span<const int> x) const {
  long long total = 0;
  for (int k = m * m; k < var_count(); ++k) total += x[static_cast<size_t>(k)];
  return total;
}

namespace {

// wraps long constraint/objective lines the way LP readers expect
class LpLineWriter {
 public:
  LpLineWriter(std::ostream& out, int terms_per_line) : out_(out), limit_(terms_per_line) {}
  void term(const std::string& t) {
    if (count_ > 0 && count_ % limit_ == 0) out_ << "\n ";
    out_ << " " << t;
    ++count_;
  }
  void end() { out_ << "\n"; }

 private:
  std::ostream& out_;
  int limit_;
  int count_ = 0;
};

std::string p_name(int m, int vec_index) {
  int r = vec_index % m, c = vec_index / m;
  return "p_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
}

}  // namespace

void write_lp(std::ostream& out, const BilpModel& model) {
  const int art = model.artificial_rows();
  out << "\\ seeded graph matching as a binary program: m=" << model.m
      << " ambiguous, s=" << model.s << " seeds\n";
  out << "\\ variables: p_r_c assignment block, e_k / f_k artificial pair per"
         " absolute-value row\n";
  out << "Minimize\n obj:";
  {
    LpLineWriter w(out, 10);
    for (int k = 0; k < art; ++k) {
      w.term((k == 0 ? "e_" : "+ e_") + std::to_string(k + 1));
      w.term("+ f_" + std::to_string(k + 1));
    }
    w.end();
  }
  out << "Subject To\n";
  for (int row = 0; row < model.rows(); ++row) {
    out << " c" << row + 1 << ":";
    LpLineWriter w(out, 10);
    bool first = true;
    for (auto [col, coef] : model.m_rows[static_cast<size_t>(row)]) {
      std::string sign = coef >= 0 ? (first ? "" : "+ ") : "- ";
      w.term(sign + p_name(model.m, col));
      first = false;
    }
    if (row < art) {
      w.term(std::string(first ? "" : "+ ") + "e_" + std::to_string(row + 1));
      w.term("- f_" + std::to_string(row + 1));
    }
    w.term("= " + std::to_string(model.rhs[static_cast<size_t>(row)]));
    w.end();
  }
  out << "Binary\n";
  {
    LpLineWriter w(out, 12);
    for (int k = 0; k < model.p_vars(); ++k) w.term(p_name(model.m, k));
    for (int k = 0; k < art; ++k) {
      w.term("e_" + std::to_string(k + 1));
      w.term("f_" + std::to_string(k + 1));
    }
    w.end();
  }
  out << "End\n";
}

void write_lp_file(const std::string& path, const BilpModel& model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_lp(out, model);
}

}  // namespace align
