#pragma once

// The graded rings attached to a monomial ideal I of K[S]: the Rees-type
// monoids (blowup with or without the inverse grade generator) and the
// associated graded ring G = ⊕ I^n / I^{n+1}.
//
// G is modeled combinatorially through the order function: the class of x^a
// in degree ord(a) survives, and products x^a · x^b vanish exactly when
// ord(a+b) exceeds ord(a) + ord(b).  Reducedness, additivity of ord, and
// (weak/semi)normality of G are probed on that model.  Positive answers are
// only claimed when a finite argument covers all elements; otherwise bounded
// searches return witnesses or an explicit bound.

#include <functional>
#include <memory>

#include "agr/bigint.hpp"
#include "agr/ideal.hpp"
#include "agr/monoid.hpp"

namespace agr {

enum class ReesVariant {
  Plus,      // generated by (s, 0) and (b, 1)
  Extended,  // additionally contains (0, ..., 0, -1)
};

// The graded monoid of the chosen Rees-type algebra inside Z^{d+1}.
AffineMonoid rees_monoid(const MonomialIdeal& I, ReesVariant variant);

// The combinatorial model of the associated graded ring of an ideal.  An
// optional override replaces the order function wholesale; it exists so the
// fuzz harness can inject deliberately inconsistent graded data and confirm
// that the implication checks surface the corruption.  Copies share state,
// including the record of any non-additivity witness discovered so far.
class GradedModel {
 public:
  explicit GradedModel(MonomialIdeal ideal);
  GradedModel(MonomialIdeal ideal, std::function<Int(const IntVec&)> ord_override);

  const MonomialIdeal& ideal() const;
  const AffineMonoid& base() const;
  bool has_override() const;

  // ord of a member of S, via the override when one is installed.
  Int ord_of(const IntVec& a) const;

  // The non-additivity witness recorded by gr_additive, if any.
  std::optional<Certificate> recorded_non_additivity() const;

 private:
  struct State;
  std::shared_ptr<State> state_;

  friend Verdict gr_additive(const GradedModel&, const Int&);
};

// Is G reduced?  Fails with a GrNilpotent certificate when some member a of
// the weight-≤ elem_bound region and multiplier k ≤ mult_bound satisfy
// ord(k a) > k ord(a).  Holds is exact: the blowup monoid is normal and every
// asymptotic-order facet with a full-dimensional linearity chamber takes
// integer values on the member lattice.  Everything else is
// UnknownUpToBound(elem_bound).  With an override installed no Holds claim is
// made.
Verdict gr_reduced(const GradedModel& G, const Int& elem_bound, const Int& mult_bound);

// Is ord additive (ord(a+b) = ord(a) + ord(b) for members)?  Fails with a
// GrNonAdditive certificate found by a complete pair scan over the region of
// weight at most elem_bound.  Holds is claimed only in the provable split
// case: the ideal is generated by a single monoid generator that is linearly
// independent of the other generators, which forces ord to be linear.
// Otherwise UnknownUpToBound(elem_bound).
Verdict gr_additive(const GradedModel& G, const Int& elem_bound);

// The graded monoid ⟨(s, ord(s))⟩ in Z^{d+1}.  This models G faithfully only
// when ord is additive; the call therefore throws invalid_state when a
// non-additivity witness has already been recorded on this model.
AffineMonoid gr_as_monoid(const GradedModel& G);

// Is G seminormal (characteristic 0) or weakly normal (characteristic p)?
// Pipeline: a reducedness witness refutes immediately; delegation to the
// monoid model of G is attempted when no non-additivity witness exists, and
// any delegated witness is re-validated against the exact order conditions;
// a direct search for order-compatible witnesses runs regardless.  Holds is
// claimed only when the monoid delegation holds, the split case proves
// additivity, and reducedness holds.  Bounded searches otherwise end in
// UnknownUpToBound(search_bound).
Verdict gr_seminormal(const GradedModel& G, const Int& characteristic,
                      const Int& search_bound);

// For the provable split case, cross-checks the linear model of ord: builds
// an integer functional ψ vanishing on the non-ideal generators with
// ψ·g = c > 0 on the ideal generator, and verifies c·ord(a) = ψ·a on every
// member of the weight-≤ probe_bound region.  Throws unsupported_input when
// the ideal is not split-principal.
bool principal_gr_iso_check(const GradedModel& G, const Int& probe_bound);

// Re-checks graded certificates against the model (so an installed override
// is respected): GrNilpotent and GrNonAdditive via ord_of, NotSeminormal and
// NotWeaklyNormal via the exact order conditions for graded witnesses, and
// NotIntegrallyClosedPower by delegation to the underlying ideal.  The
// NotWeaklyNormal zero-divisor probe uses the region of weight at most four
// times the largest generator weight.
bool verify_certificate(const GradedModel& G, const Certificate& c);

}  // namespace agr
