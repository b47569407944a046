#include "agr/lattice.hpp"

#include <algorithm>

#include "agr/errors.hpp"

namespace agr {

namespace {

std::vector<int> pivot_columns(const IntMat& basis) {
  std::vector<int> cols;
  cols.reserve(basis.size());
  for (const IntVec& row : basis) {
    int c = 0;
    while (c < static_cast<int>(row.size()) && row[c] == 0) ++c;
    cols.push_back(c);
  }
  return cols;
}

}  // namespace

LatticeGroup::LatticeGroup(int ambient_dim, IntMat hnf_basis)
    : ambient_dim_(ambient_dim), basis_(std::move(hnf_basis)),
      pivot_cols_(pivot_columns(basis_)) {
  if (ambient_dim_ <= 0) throw invalid_input("LatticeGroup: ambient dimension must be positive");
  for (const IntVec& row : basis_) {
    if (static_cast<int>(row.size()) != ambient_dim_)
      throw invalid_input("LatticeGroup: basis row has wrong dimension");
  }
}

bool LatticeGroup::contains(const IntVec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim_)
    throw invalid_input("LatticeGroup::contains: dimension mismatch");
  IntVec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    int c = pivot_cols_[i];
    if (r[c] == 0) continue;
    if (r[c] % basis_[i][c] != 0) return false;
    Int q = r[c] / basis_[i][c];
    for (int j = c; j < ambient_dim_; ++j) r[j] -= q * basis_[i][j];
  }
  return is_zero(r);
}

LatticeGroup hnf(const IntMat& rows, int ambient_dim) {
  if (ambient_dim <= 0) throw invalid_input("hnf: ambient dimension must be positive");
  for (const IntVec& row : rows) {
    if (static_cast<int>(row.size()) != ambient_dim)
      throw invalid_input("hnf: row has wrong dimension");
  }
  IntMat m = rows;
  int nrows = static_cast<int>(m.size());
  int r = 0;  // next pivot row
  for (int col = 0; col < ambient_dim && r < nrows; ++col) {
    // Gcd out the column below row r with elementary row operations.
    while (true) {
      int best = -1;
      for (int i = r; i < nrows; ++i) {
        if (m[i][col] == 0) continue;
        if (best < 0 || abs(m[i][col]) < abs(m[best][col])) best = i;
      }
      if (best < 0) break;  // column is zero from row r down
      std::swap(m[r], m[best]);
      bool cleared = true;
      for (int i = r + 1; i < nrows; ++i) {
        if (m[i][col] == 0) continue;
        Int q = floor_div(m[i][col], m[r][col]);
        for (int j = 0; j < ambient_dim; ++j) m[i][j] -= q * m[r][j];
        if (m[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (m[r][col] == 0) continue;
    if (m[r][col] < 0) {
      for (int j = 0; j < ambient_dim; ++j) m[r][j] = -m[r][j];
    }
    // Reduce the entries above the pivot into [0, pivot).
    for (int i = 0; i < r; ++i) {
      if (m[i][col] == 0) continue;
      Int q = floor_div(m[i][col], m[r][col]);
      if (q == 0) continue;
      for (int j = 0; j < ambient_dim; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return LatticeGroup(ambient_dim, std::move(m));
}

LatticeGroup hnf(const IntMat& rows) {
  if (rows.empty()) throw invalid_input("hnf: need at least one row to infer the dimension");
  return hnf(rows, static_cast<int>(rows.front().size()));
}

bool group_contains(const LatticeGroup& g, const IntVec& v) { return g.contains(v); }

namespace {

bool solve_rec(const IntMat& gens, const std::vector<Int>& gen_weights,
               const std::function<bool(const IntVec&)>& prune, std::size_t idx,
               IntVec& remainder, Int remainder_weight, IntVec& coeffs) {
  if (is_zero(remainder)) {
    // Later coefficients stay zero: the all-zero tail is lexicographically
    // minimal among completions.
    for (std::size_t j = idx; j < coeffs.size(); ++j) coeffs[j] = 0;
    return true;
  }
  if (idx == gens.size()) return false;
  if (remainder_weight <= 0) return false;
  if (prune && !prune(remainder)) return false;
  Int bound = remainder_weight / gen_weights[idx];
  IntVec saved = remainder;
  for (Int a = 0; a <= bound; ++a) {
    if (a > 0) {
      for (std::size_t j = 0; j < remainder.size(); ++j) remainder[j] -= gens[idx][j];
    }
    coeffs[idx] = a;
    if (solve_rec(gens, gen_weights, prune, idx + 1, remainder,
                  remainder_weight - a * gen_weights[idx], coeffs)) {
      return true;
    }
  }
  remainder = saved;
  return false;
}

}  // namespace

std::optional<IntVec> solve_nonneg_integer(
    const IntMat& gens, const IntVec& v, const IntVec& weight,
    const std::function<bool(const IntVec&)>& prune) {
  if (gens.empty()) throw invalid_input("solve_nonneg_integer: empty generator list");
  const std::size_t dim = v.size();
  if (weight.size() != dim) throw invalid_input("solve_nonneg_integer: weight dimension mismatch");
  std::vector<Int> gen_weights;
  gen_weights.reserve(gens.size());
  for (const IntVec& g : gens) {
    if (g.size() != dim) throw invalid_input("solve_nonneg_integer: generator dimension mismatch");
    Int w = dot(weight, g);
    if (w <= 0) throw invalid_input("solve_nonneg_integer: weight must be strictly positive on generators");
    gen_weights.push_back(w);
  }
  Int vw = dot(weight, v);
  if (vw < 0) return std::nullopt;
  IntVec remainder = v;
  IntVec coeffs(gens.size());
  if (solve_rec(gens, gen_weights, prune, 0, remainder, vw, coeffs)) return coeffs;
  return std::nullopt;
}

}  // namespace agr
