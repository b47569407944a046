#pragma once

// Integer lattice arithmetic: Hermite normal form, subgroup membership, and
// bounded nonnegative integer solving.  These are the kernels every higher
// layer (cones, monoids, ideals) reduces to.

#include <functional>
#include <optional>

#include "agr/bigint.hpp"

namespace agr {

/// A finitely generated subgroup of Z^d, stored by its canonical row-style
/// Hermite normal form: pivots positive, pivot columns strictly increasing,
/// entries above each pivot reduced into [0, pivot).
class LatticeGroup {
 public:
  LatticeGroup(int ambient_dim, IntMat hnf_basis);

  int ambient_dim() const { return ambient_dim_; }
  const IntMat& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.size()); }

  /// True iff v is an integer combination of the basis rows, decided by
  /// back-substitution along pivot columns.
  bool contains(const IntVec& v) const;

  bool operator==(const LatticeGroup& other) const = default;

 private:
  int ambient_dim_;
  IntMat basis_;       // canonical HNF rows
  std::vector<int> pivot_cols_;
};

/// Canonical Hermite normal form of the row span of `rows`.  All rows must
/// share the (positive) ambient dimension; zero rows are dropped.  The
/// result is unique per subgroup, so equal groups compare equal.
LatticeGroup hnf(const IntMat& rows, int ambient_dim);

/// Convenience overload that takes the dimension from the first row.
LatticeGroup hnf(const IntMat& rows);

bool group_contains(const LatticeGroup& g, const IntVec& v);

/// Searches for nonnegative integers a_i with sum a_i * gens[i] = v.
///
/// `weight` must be strictly positive on every generator; it bounds each
/// coefficient by (weight . v) / (weight . gens[i]), which makes the search
/// finite.  The search enumerates coefficient vectors in lexicographic order
/// and returns the first (hence lexicographically smallest) solution, or
/// nullopt.  `prune`, when given, must be monotone-safe: it may only return
/// false for remainders that cannot be a nonnegative combination of the
/// generators (a cone membership test is the canonical choice).
std::optional<IntVec> solve_nonneg_integer(
    const IntMat& gens, const IntVec& v, const IntVec& weight,
    const std::function<bool(const IntVec&)>& prune = {});

}  // namespace agr
