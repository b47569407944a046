#pragma once

// Finitely generated submonoids of Z^d ("affine monoids") with pointed
// rational cone, together with the decision procedures for normality,
// seminormality and weak normality.  Negative answers always come with a
// machine-checkable certificate; bounded searches that find nothing report
// the bound they exhausted instead of claiming a proof.

#include <memory>
#include <optional>
#include <set>

#include "agr/bigint.hpp"
#include "agr/cone.hpp"
#include "agr/lattice.hpp"

namespace agr {

// A refutation witness.  Which fields are meaningful depends on the kind:
//   NotNormal:                vector_a = point of group(S) ∩ cone(S) outside S
//   NotSeminormal:            vector_a = v with 2v,3v in S but v outside S
//   NotWeaklyNormal:          vector_a = v outside S with 2v,3v in S or p·v in S,
//                             scalar_n = characteristic p (0 means "2,3 rule only")
//   NotIntegrallyClosedPower: vector_a = a, scalar_n = n with a integral over
//                             the n-th ideal power but not a member of it
//   GrNilpotent:              vector_a = a, scalar_n = k with ord(k·a) > k·ord(a)
//   GrNonAdditive:            vector_a = a, vector_b = b with
//                             ord(a+b) > ord(a) + ord(b)
struct Certificate {
  enum class Kind {
    NotNormal,
    NotSeminormal,
    NotWeaklyNormal,
    NotIntegrallyClosedPower,
    GrNilpotent,
    GrNonAdditive,
  };

  Kind kind;
  IntVec vector_a;
  IntVec vector_b;  // empty unless the kind uses a second vector
  Int scalar_n = 0;

  bool operator==(const Certificate&) const = default;
};

// Outcome of a decision procedure.  `Holds` and `FailsWithWitness` are exact
// statements; `UnknownUpToBound` means a complete search of the region of
// weight at most `bound` found no witness.
struct Verdict {
  enum class Status { Holds, FailsWithWitness, UnknownUpToBound };

  Status status;
  std::optional<Certificate> certificate;
  std::optional<Int> bound;

  static Verdict holds();
  static Verdict fails(Certificate c);
  static Verdict unknown(Int searched_bound);

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::FailsWithWitness; }
  bool is_unknown() const { return status == Status::UnknownUpToBound; }
};

// An affine monoid given by generators.  The generator list is canonicalized
// (zero vectors dropped, duplicates merged, lexicographically sorted) and the
// cone is required to be pointed; non-pointed input throws unsupported_input.
//
// The weight functional (sum of all facet normals) is strictly positive on
// every nonzero element of the cone and is the grading used by all bounded
// searches.  Membership queries are memoized; copies share the cache.
class AffineMonoid {
 public:
  AffineMonoid(IntMat generators, int ambient_dim);
  explicit AffineMonoid(IntMat generators);

  int ambient_dim() const;
  const IntMat& generators() const;
  const LatticeGroup& group() const;
  const RationalCone& cone() const;
  const IntVec& weight() const;
  Int weight_of(const IntVec& v) const;

  bool operator==(const AffineMonoid& other) const;

 private:
  struct State;
  static std::shared_ptr<State> make_state(IntMat generators, int ambient_dim);
  std::shared_ptr<State> state_;

  friend bool monoid_contains(const AffineMonoid&, const IntVec&);
  friend const IntMat& zonotope_holes(const AffineMonoid&);
  friend Verdict is_normal(const AffineMonoid&);
  friend Verdict is_seminormal(const AffineMonoid&, const Int&);
  friend Verdict is_weakly_normal(const AffineMonoid&, const Int&, const Int&);
  friend IntMat region_lattice_points(const AffineMonoid&, const Int&);
  friend std::set<IntVec> region_members(const AffineMonoid&, const IntMat&);
};

// Exact membership test: is v a nonnegative integer combination of the
// generators?
bool monoid_contains(const AffineMonoid& S, const IntVec& v);

// The direct sum S ⊕ N: every generator gains a trailing 0 coordinate and a
// fresh free generator (0,...,0,1) is added.
AffineMonoid adjoin_free_generator(const AffineMonoid& S);

// The points of group(S) ∩ cone(S) inside the bounding box of the generator
// zonotope (cut by the total generator weight) that are NOT members, in lex
// order.  The saturation equals S + these points as a module, so the list is
// empty iff S is normal, and every saturation element is a member plus one
// of these holes.  Cached on the monoid.
const IntMat& zonotope_holes(const AffineMonoid& S);

// Exact normality test: S is normal iff it contains every point of
// group(S) ∩ cone(S), which reduces to its zonotope hole list being empty;
// on failure the lexicographically first hole is the NotNormal certificate.
Verdict is_normal(const AffineMonoid& S);

// Seminormality: every v in group(S) ∩ cone(S) with 2v and 3v in S must lie
// in S.  Normal monoids are reported Holds.  Otherwise the region of weight
// at most `search_bound` is scanned in (weight, lex) order for a violating v;
// if none exists the result is UnknownUpToBound.
Verdict is_seminormal(const AffineMonoid& S, const Int& search_bound);

// Weak normality in characteristic p: on top of the seminormality rule, in
// characteristic p > 0 an element v of group(S) ∩ cone(S) with p·v in S must
// already lie in S.  p must be 0 or a prime; characteristic 0 coincides with
// seminormality.  Bounded search semantics as in is_seminormal.
Verdict is_weakly_normal(const AffineMonoid& S, const Int& characteristic,
                         const Int& search_bound);

// All points of group(S) ∩ cone(S) with weight at most W, in lex order.  The
// scan box is the coordinate hull of {0} ∪ {W·r / (w·r) : r extreme ray}, so
// the listing is complete for the weight-W slice of the cone.
IntMat region_lattice_points(const AffineMonoid& S, const Int& W);

// The subset of `region` (a complete weight-bounded listing as produced by
// region_lattice_points) that belongs to S, decided by one pass in weight
// order: a nonzero point is a member iff subtracting a generator lands on a
// smaller member.
std::set<IntVec> region_members(const AffineMonoid& S, const IntMat& region);

// Independent closure iteration used to cross-check is_seminormal: starting
// from the members of the weight-≤-bound region, repeatedly adjoin any region
// point v whose doubles and triples 2v, 3v are already present, until nothing
// changes.  Returns the adjoined points in (weight, lex) order; the list is
// empty exactly when the region gives no obstruction to seminormality.
IntMat seminormal_fixpoint_oracle(const AffineMonoid& S, const Int& search_bound);

// Re-checks a monoid-level certificate (NotNormal, NotSeminormal,
// NotWeaklyNormal) from scratch against S.  Returns true iff every claimed
// condition really holds.  Ideal-level kinds throw invalid_input here.
bool verify_certificate(const AffineMonoid& S, const Certificate& c);

}  // namespace agr
