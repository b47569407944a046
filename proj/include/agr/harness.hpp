#pragma once

// Randomized cross-checking of the implications between graded-side and
// base-side decisions, with certificate transport on disagreement, plus a
// targeted search over non-normal bases.
//
// Each check names a proved implication between bounded verdicts:
//   T1  graded ring seminormal        ⇒ both Rees rings and the base ring
//                                       seminormal
//   T2  graded ring weakly normal     ⇒ both Rees rings and the base ring
//                                       weakly normal (characteristic p)
//   T3  graded ring reduced           ⇒ every ideal power integrally closed
//   T4  base normal and ideal normal  ⇒ the ideal stays normal after
//                                       adjoining a free variable
//   T5  base seminormal               ⇒ seminormal after adjoining a free
//                                       variable
//   T6  base normal                   ⇒ normal after adjoining a free
//                                       variable
//
// A hypothesis that fails makes the check VACUOUS.  A hypothesis with no
// witness (exact Holds or a bounded search that found nothing) together with
// a witness-free conclusion is CONFIRMED.  A conclusion witness against such
// a hypothesis is a CONFLICT; the witness is transported into the hypothesis
// search (dropping the grade coordinate where needed) and the hypothesis is
// re-searched at doubled bounds, twice.  A CONFLICT that survives escalation
// is a presumed implementation bug: the implications are theorems, so a true
// counterexample is not an admissible outcome.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agr/bigint.hpp"
#include "agr/ideal.hpp"
#include "agr/monoid.hpp"
#include "agr/rees.hpp"

namespace agr {

enum class InstanceProfile { Tiny, Small };

struct InstanceBounds {
  Int search_bound;  // witness searches (B)
  Int mult_bound;    // nilpotency multipliers (K)
  Int power_bound;   // ideal power scans (N)

  bool operator==(const InstanceBounds&) const = default;
};

// Default bounds for a monoid: B = 4 · max generator weight, K = 8, N = 6.
InstanceBounds default_bounds(const AffineMonoid& S);

// A generated test case: an ideal (which carries its monoid), a
// characteristic, and the bounds all checks run with.  Regenerable from the
// seed alone.
struct Instance {
  std::uint64_t seed = 0;
  MonomialIdeal ideal;
  Int characteristic;
  InstanceBounds bounds;

  const AffineMonoid& monoid() const { return ideal.monoid(); }
};

// Deterministic instance generation.  Profiles cap the ambient dimension at
// 2 (Tiny) or 3 (Small); coordinates stay in [0, 4], with at most 5 monoid
// generators and 4 ideal generators, and the characteristic is one of
// {0, 2, 3, 5}.  Degenerate draws are resampled a bounded number of times.
Instance generate_instance(std::uint64_t seed, InstanceProfile profile);

enum class Outcome { Vacuous, Confirmed, Conflict };

// One named verdict: which object was tested, which property, and the result.
struct VerdictRecord {
  std::string target;    // "base", "ideal", "graded", "rees_plus",
                         // "rees_extended", "cylinder", "cylinder_ideal"
  std::string property;  // "normal", "seminormal", "weakly_normal",
                         // "normal_ideal", "reduced", "additive"
  Verdict verdict;
};

struct ImplicationResult {
  std::string check;  // "T1".."T6"
  Outcome outcome = Outcome::Vacuous;
  std::vector<VerdictRecord> hypothesis;
  std::vector<VerdictRecord> conclusion;
  std::vector<std::string> escalation;  // transport / re-run log, in order
};

struct InstanceReport {
  std::uint64_t seed = 0;
  Int characteristic;
  InstanceBounds bounds;
  std::vector<VerdictRecord> verdicts;  // the per-instance verdict tuple
  std::vector<ImplicationResult> checks;

  std::size_t surviving_conflicts() const;
};

// Evaluates all six checks on one instance.  The second overload substitutes
// a caller-supplied graded model (used by the fault-injection harness to
// prove that corrupted order data is detected); the model must wrap the same
// ideal.
InstanceReport run_implications(const Instance& inst);
InstanceReport run_implications(const Instance& inst, const GradedModel& graded);

struct HarnessReport {
  std::string profile;  // "tiny" or "small"
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 0;  // exclusive
  std::vector<InstanceReport> instances;
  std::size_t conflicts = 0;  // surviving conflicts across all instances
};

// Runs [seed_begin, seed_end) through run_implications.  Deterministic: the
// report depends only on the arguments.
HarnessReport run_harness(std::uint64_t seed_begin, std::uint64_t seed_end,
                          InstanceProfile profile);

// One entry of the targeted search: an instance is probed only when its base
// monoid is NOT normal (dropping the integrally-closed-quotient hypothesis)
// and its ideal has no closure witness in the base ring; the probe then asks
// whether the ideal stays normal after adjoining a free variable.  A probe
// whose extension check fails with a verified witness is a hit: a concrete
// monomial-scale data point for the open question this search targets.
struct QuestionEntry {
  std::uint64_t seed = 0;
  bool base_is_normal = false;
  std::optional<Verdict> ideal_verdict;     // in the base ring; absent if skipped
  std::optional<Verdict> extended_verdict;  // after adjoining the variable
  bool probed = false;
  bool hit = false;
};

struct QuestionReport {
  std::string profile;
  std::uint64_t budget = 0;  // seeds 0..budget-1 are drawn
  std::vector<QuestionEntry> entries;
  std::size_t skipped_normal_base = 0;
  std::size_t skipped_ideal_witness = 0;
  std::size_t probed = 0;
  std::size_t hits = 0;
};

// Draws `budget` instances and probes as described above.  Null results are
// data about this monomial slice only, not evidence about the general case.
QuestionReport search_question_counterexample(std::uint64_t budget,
                                              InstanceProfile profile);

}  // namespace agr
