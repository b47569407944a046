#pragma once

// Monomial ideals in an affine monoid ring, their powers and integral
// closures.  The central device is the "blowup monoid" of the ideal: the
// submonoid of Z^{d+1} generated by (s, 0) for the monoid generators s and
// (b, 1) for the ideal generators b.  A monomial lies in the n-th ideal power
// exactly when its lift to grade n lies in that monoid, and in the integral
// closure of the n-th power exactly when the lift lies in the monoid's cone.

#include <memory>
#include <optional>

#include "agr/bigint.hpp"
#include "agr/cone.hpp"
#include "agr/monoid.hpp"

namespace agr {

// A nonzero proper monomial ideal of K[S], given by generators that must be
// nonzero members of S.  The generator list is canonicalized (sorted,
// deduplicated); copies share all caches.
class MonomialIdeal {
 public:
  MonomialIdeal(AffineMonoid monoid, IntMat ideal_generators);

  const AffineMonoid& monoid() const;
  const IntMat& generators() const;

  // The graded blowup monoid in Z^{d+1} and its cone.  The last coordinate
  // counts how many ideal generators a decomposition uses.
  const AffineMonoid& blowup_monoid() const;
  const RationalCone& blowup_cone() const;

  bool operator==(const MonomialIdeal& other) const;

 private:
  struct State;
  std::shared_ptr<State> state_;

  friend Verdict is_normal_ideal(const MonomialIdeal&, const Int&);
  friend Int ord(const MonomialIdeal&, const IntVec&);
};

// Membership in the n-th power of the ideal (n >= 0; the 0-th power is the
// whole ring, so membership means membership in S).
bool power_membership(const MonomialIdeal& I, const IntVec& a, const Int& n);

// The order of a with respect to I: the largest n with a in I^n.  Requires
// a in S; finite because the ideal is proper and the monoid is pointed.
Int ord(const MonomialIdeal& I, const IntVec& a);

// Membership of a in the integral closure of I^n inside K[S]: true iff a is
// in S and the grade-n lift of a lies in the blowup cone.
bool integral_closure_contains(const MonomialIdeal& I, const IntVec& a, const Int& n);

// The asymptotic order of a: lim ord(k a) / k, computed exactly as the
// largest rational q with (a, q) in the blowup cone.  Requires a to lie in
// the cone of S.
Rational asymptotic_ord(const MonomialIdeal& I, const IntVec& a);

// Decides whether every power of I is integrally closed.  Holds is exact
// (the blowup monoid is normal).  Otherwise powers 1..power_bound are
// scanned for a member of the closure of I^n missing from I^n, in
// (n, weight, lex) order; a hit yields a NotIntegrallyClosedPower
// certificate, and exhaustion yields UnknownUpToBound(power_bound).
Verdict is_normal_ideal(const MonomialIdeal& I, const Int& power_bound);

// Re-checks ideal-level certificates from scratch:
//   NotIntegrallyClosedPower — vector_a in closure(I^n) but not in I^n,
//   GrNilpotent             — ord(k a) > k ord(a),
//   GrNonAdditive           — ord(a + b) > ord(a) + ord(b).
// Monoid-level kinds throw invalid_input here.
bool verify_certificate(const MonomialIdeal& I, const Certificate& c);

}  // namespace agr
