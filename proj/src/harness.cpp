#include "agr/harness.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "agr/errors.hpp"

namespace agr {

namespace {

// SplitMix64: tiny, stable across platforms, and good enough for drawing
// small test cases.  The stream is a pure function of the seed.
struct SplitMix {
  std::uint64_t x;
  explicit SplitMix(std::uint64_t seed) : x(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

IntVec drop_last(const IntVec& v) {
  if (v.empty()) throw invalid_state("drop_last: empty vector");
  return IntVec(v.begin(), v.end() - 1);
}

std::string kind_text(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::NotNormal: return "not_normal";
    case Certificate::Kind::NotSeminormal: return "not_seminormal";
    case Certificate::Kind::NotWeaklyNormal: return "not_weakly_normal";
    case Certificate::Kind::NotIntegrallyClosedPower:
      return "not_integrally_closed_power";
    case Certificate::Kind::GrNilpotent: return "gr_nilpotent";
    case Certificate::Kind::GrNonAdditive: return "gr_non_additive";
  }
  return "unknown";
}

std::string cert_text(const Certificate& c) {
  std::string s = kind_text(c.kind) + " a=" + to_string(c.vector_a);
  if (!c.vector_b.empty()) s += " b=" + to_string(c.vector_b);
  if (c.scalar_n != 0) s += " n=" + c.scalar_n.str();
  return s;
}

std::string status_text(const Verdict& v) {
  switch (v.status) {
    case Verdict::Status::Holds: return "holds";
    case Verdict::Status::FailsWithWitness:
      return "fails_with_witness(" + cert_text(*v.certificate) + ")";
    case Verdict::Status::UnknownUpToBound:
      return "unknown_up_to_bound(" + v.bound->str() + ")";
  }
  return "unknown";
}

// A conclusion-side witness tagged with the object it refutes.
struct ConclusionWitness {
  std::string target;
  Certificate cert;
};

// Witnesses living in the graded/Rees/cylinder ambient space carry one extra
// trailing coordinate; transport into the base space drops it.
bool target_is_lifted(const std::string& target) {
  return target == "rees_plus" || target == "rees_extended" ||
         target == "cylinder" || target == "cylinder_ideal";
}

IntVec transported_vector(const ConclusionWitness& w) {
  return target_is_lifted(w.target) ? drop_last(w.cert.vector_a) : w.cert.vector_a;
}

Int doubled(const Int& b, int rounds) {
  Int out = b;
  for (int i = 0; i < rounds; ++i) out *= 2;
  return out;
}

using Research = std::function<bool(int round, const std::vector<ConclusionWitness>&,
                                    std::vector<std::string>&)>;

// Shared outcome logic for one implication: a failed hypothesis is VACUOUS,
// a witness-free conclusion is CONFIRMED, and a conclusion witness against a
// witness-free hypothesis opens a CONFLICT that two escalation rounds try to
// resolve by finding a hypothesis-side witness after all.
ImplicationResult run_check(std::string name, std::vector<VerdictRecord> hypothesis,
                            const std::function<std::vector<VerdictRecord>()>& conclude,
                            const Research& research) {
  ImplicationResult r;
  r.check = std::move(name);
  r.hypothesis = std::move(hypothesis);
  for (const VerdictRecord& h : r.hypothesis) {
    if (h.verdict.is_fails()) {
      r.outcome = Outcome::Vacuous;
      return r;
    }
  }
  r.conclusion = conclude();
  std::vector<ConclusionWitness> witnesses;
  for (const VerdictRecord& c : r.conclusion)
    if (c.verdict.is_fails()) witnesses.push_back({c.target, *c.verdict.certificate});
  if (witnesses.empty()) {
    r.outcome = Outcome::Confirmed;
    return r;
  }
  r.outcome = Outcome::Conflict;
  for (const ConclusionWitness& w : witnesses)
    r.escalation.push_back("conclusion witness on " + w.target + ": " + cert_text(w.cert));
  for (int round = 1; round <= 2; ++round) {
    r.escalation.push_back("escalation round " + std::to_string(round));
    if (research(round, witnesses, r.escalation)) {
      r.outcome = Outcome::Vacuous;
      r.escalation.push_back("hypothesis witness found; conflict resolved as vacuous");
      return r;
    }
  }
  r.escalation.push_back("conflict survives escalation: presumed implementation bug");
  return r;
}

InstanceReport run_implications_impl(const Instance& inst, const GradedModel& G) {
  const AffineMonoid& S = inst.monoid();
  const MonomialIdeal& I = inst.ideal;
  const Int& B = inst.bounds.search_bound;
  const Int& K = inst.bounds.mult_bound;
  const Int& N = inst.bounds.power_bound;
  const Int& p = inst.characteristic;

  AffineMonoid rees_plus = rees_monoid(I, ReesVariant::Plus);
  AffineMonoid rees_ext = rees_monoid(I, ReesVariant::Extended);
  AffineMonoid cylinder = adjoin_free_generator(S);
  IntMat lifted_gens;
  for (const IntVec& b : I.generators()) {
    IntVec h = b;
    h.emplace_back(0);
    lifted_gens.push_back(std::move(h));
  }
  MonomialIdeal cylinder_ideal(cylinder, std::move(lifted_gens));

  InstanceReport rep;
  rep.seed = inst.seed;
  rep.characteristic = p;
  rep.bounds = inst.bounds;

  Verdict s_norm = is_normal(S);
  Verdict s_sn = is_seminormal(S, B);
  Verdict s_wn = is_weakly_normal(S, p, B);
  Verdict i_norm = is_normal_ideal(I, N);
  Verdict g_red = gr_reduced(G, B, K);
  Verdict g_add = gr_additive(G, B);
  Verdict g_sn = gr_seminormal(G, 0, B);
  Verdict g_wn = gr_seminormal(G, p, B);
  Verdict rp_sn = is_seminormal(rees_plus, B);
  Verdict rp_wn = is_weakly_normal(rees_plus, p, B);
  Verdict rx_sn = is_seminormal(rees_ext, B);
  Verdict rx_wn = is_weakly_normal(rees_ext, p, B);

  rep.verdicts = {
      {"base", "normal", s_norm},
      {"base", "seminormal", s_sn},
      {"base", "weakly_normal", s_wn},
      {"ideal", "normal_ideal", i_norm},
      {"graded", "reduced", g_red},
      {"graded", "additive", g_add},
      {"graded", "seminormal", g_sn},
      {"graded", "weakly_normal", g_wn},
      {"rees_plus", "seminormal", rp_sn},
      {"rees_plus", "weakly_normal", rp_wn},
      {"rees_extended", "seminormal", rx_sn},
      {"rees_extended", "weakly_normal", rx_wn},
  };

  // Re-search a graded (weak/semi)normality hypothesis: probe each
  // transported conclusion witness directly against the exact graded order
  // conditions, then widen the bounded search far enough to cover them.  A
  // seminormality witness refutes weak normality too, so the direct probe
  // uses the seminormality conditions in both checks.
  auto graded_research = [&](Int characteristic) -> Research {
    return [&, characteristic](int round, const std::vector<ConclusionWitness>& ws,
                               std::vector<std::string>& log) -> bool {
      Int bound = doubled(B, round);
      for (const ConclusionWitness& w : ws) {
        IntVec v = transported_vector(w);
        bound = std::max(bound, S.weight_of(v));
        Certificate probe;
        probe.kind = Certificate::Kind::NotSeminormal;
        probe.vector_a = v;
        if (verify_certificate(G, probe)) {
          log.push_back("transported candidate " + to_string(v) +
                        ": graded witness confirmed");
          return true;
        }
        log.push_back("transported candidate " + to_string(v) +
                      ": not a graded witness");
      }
      Verdict re = gr_seminormal(G, characteristic, bound);
      log.push_back("re-ran graded search at bound " + bound.str() + ": " +
                    status_text(re));
      return re.is_fails();
    };
  };

  std::vector<ImplicationResult> checks;

  checks.push_back(run_check(
      "T1", {{"graded", "seminormal", g_sn}},
      [&] {
        return std::vector<VerdictRecord>{{"rees_plus", "seminormal", rp_sn},
                                          {"rees_extended", "seminormal", rx_sn},
                                          {"base", "seminormal", s_sn}};
      },
      graded_research(Int(0))));

  checks.push_back(run_check(
      "T2", {{"graded", "weakly_normal", g_wn}},
      [&] {
        return std::vector<VerdictRecord>{{"rees_plus", "weakly_normal", rp_wn},
                                          {"rees_extended", "weakly_normal", rx_wn},
                                          {"base", "weakly_normal", s_wn}};
      },
      graded_research(p)));

  checks.push_back(run_check(
      "T3", {{"graded", "reduced", g_red}},
      [&] { return std::vector<VerdictRecord>{{"ideal", "normal_ideal", i_norm}}; },
      [&](int round, const std::vector<ConclusionWitness>& ws,
          std::vector<std::string>& log) -> bool {
        Int bound = doubled(B, round);
        Int mult = doubled(K, round);
        for (const ConclusionWitness& w : ws) {
          const IntVec& a = w.cert.vector_a;
          if (!monoid_contains(S, a)) {
            log.push_back("transported candidate " + to_string(a) +
                          ": not in the monoid");
            continue;
          }
          bound = std::max(bound, S.weight_of(a));
          mult = std::max(mult, w.cert.scalar_n);
          bool hit = false;
          for (Int k(2); k <= mult; ++k) {
            Certificate probe;
            probe.kind = Certificate::Kind::GrNilpotent;
            probe.vector_a = a;
            probe.scalar_n = k;
            if (verify_certificate(G, probe)) {
              log.push_back("transported candidate " + to_string(a) +
                            ": nilpotent at multiplier " + k.str());
              hit = true;
              break;
            }
          }
          if (hit) return true;
          log.push_back("transported candidate " + to_string(a) +
                        ": no nilpotency up to multiplier " + mult.str());
        }
        Verdict re = gr_reduced(G, bound, mult);
        log.push_back("re-ran reducedness at bound " + bound.str() +
                      ", multiplier " + mult.str() + ": " + status_text(re));
        return re.is_fails();
      }));

  checks.push_back(run_check(
      "T4", {{"base", "normal", s_norm}, {"ideal", "normal_ideal", i_norm}},
      [&] {
        return std::vector<VerdictRecord>{
            {"cylinder_ideal", "normal_ideal", is_normal_ideal(cylinder_ideal, N)}};
      },
      [&](int round, const std::vector<ConclusionWitness>& ws,
          std::vector<std::string>& log) -> bool {
        Int power = doubled(N, round);
        for (const ConclusionWitness& w : ws) {
          IntVec a = transported_vector(w);
          power = std::max(power, w.cert.scalar_n);
          Certificate probe;
          probe.kind = Certificate::Kind::NotIntegrallyClosedPower;
          probe.vector_a = a;
          probe.scalar_n = w.cert.scalar_n;
          if (static_cast<int>(a.size()) == S.ambient_dim() &&
              verify_certificate(I, probe)) {
            log.push_back("transported candidate " + to_string(a) +
                          ": closure witness confirmed in the base ideal");
            return true;
          }
          log.push_back("transported candidate " + to_string(a) +
                        ": not a closure witness in the base ideal");
        }
        Verdict re = is_normal_ideal(I, power);
        log.push_back("re-ran ideal normality at power bound " + power.str() +
                      ": " + status_text(re));
        if (re.is_fails()) return true;
        log.push_back("base normality is exact; not re-searched");
        return false;
      }));

  checks.push_back(run_check(
      "T5", {{"base", "seminormal", s_sn}},
      [&] {
        return std::vector<VerdictRecord>{
            {"cylinder", "seminormal", is_seminormal(cylinder, B)}};
      },
      [&](int round, const std::vector<ConclusionWitness>& ws,
          std::vector<std::string>& log) -> bool {
        Int bound = doubled(B, round);
        for (const ConclusionWitness& w : ws) {
          IntVec v = transported_vector(w);
          bound = std::max(bound, S.weight_of(v));
          Certificate probe;
          probe.kind = Certificate::Kind::NotSeminormal;
          probe.vector_a = v;
          if (verify_certificate(S, probe)) {
            log.push_back("transported candidate " + to_string(v) +
                          ": base seminormality witness confirmed");
            return true;
          }
          log.push_back("transported candidate " + to_string(v) +
                        ": not a base witness");
        }
        Verdict re = is_seminormal(S, bound);
        log.push_back("re-ran base seminormality at bound " + bound.str() + ": " +
                      status_text(re));
        return re.is_fails();
      }));

  checks.push_back(run_check(
      "T6", {{"base", "normal", s_norm}},
      [&] {
        return std::vector<VerdictRecord>{{"cylinder", "normal", is_normal(cylinder)}};
      },
      [&](int /*round*/, const std::vector<ConclusionWitness>& ws,
          std::vector<std::string>& log) -> bool {
        for (const ConclusionWitness& w : ws) {
          IntVec v = transported_vector(w);
          Certificate probe;
          probe.kind = Certificate::Kind::NotNormal;
          probe.vector_a = v;
          if (verify_certificate(S, probe)) {
            log.push_back("transported candidate " + to_string(v) +
                          ": base normality witness confirmed");
            return true;
          }
          log.push_back("transported candidate " + to_string(v) +
                        ": not a base witness");
        }
        Verdict re = is_normal(S);
        log.push_back("base normality is exact; re-affirmed: " + status_text(re));
        return re.is_fails();
      }));

  rep.checks = std::move(checks);
  return rep;
}

}  // namespace

InstanceBounds default_bounds(const AffineMonoid& S) {
  Int maxw(0);
  for (const IntVec& g : S.generators()) maxw = std::max(maxw, S.weight_of(g));
  return {maxw * 4, Int(8), Int(6)};
}

Instance generate_instance(std::uint64_t seed, InstanceProfile profile) {
  SplitMix rng(seed);
  const bool tiny = profile == InstanceProfile::Tiny;
  for (int attempt = 0; attempt < 64; ++attempt) {
    int dim = 1 + static_cast<int>(rng.below(tiny ? 2 : 3));
    int n_gens = tiny ? 1 + static_cast<int>(rng.below(3))
                      : 2 + static_cast<int>(rng.below(4));
    IntMat gens;
    for (int i = 0; i < n_gens; ++i) {
      IntVec g(dim);
      for (int j = 0; j < dim; ++j) g[j] = Int(rng.below(5));
      if (!is_zero(g)) gens.push_back(std::move(g));
    }
    if (gens.empty()) continue;
    AffineMonoid S(std::move(gens), dim);

    const IntMat& sg = S.generators();
    int n_ideal = 1 + static_cast<int>(rng.below(tiny ? 2 : 4));
    IntMat igens;
    for (int i = 0; i < n_ideal; ++i) {
      const IntVec& a = sg[rng.below(sg.size())];
      if (rng.below(2) == 0)
        igens.push_back(a);
      else
        igens.push_back(add(a, sg[rng.below(sg.size())]));
    }
    MonomialIdeal ideal(S, std::move(igens));

    static const std::array<int, 4> chars{0, 2, 3, 5};
    Int characteristic(chars[rng.below(4)]);

    InstanceBounds bounds = default_bounds(S);
    // Cap the search bound so the whole corpus stays fast; escalation still
    // widens it when a conflict needs resolving.
    Int cap(tiny ? 20 : 24);
    if (bounds.search_bound > cap) bounds.search_bound = cap;
    return Instance{seed, std::move(ideal), std::move(characteristic), bounds};
  }
  throw invalid_state("generate_instance: exhausted resampling budget for seed " +
                      std::to_string(seed));
}

std::size_t InstanceReport::surviving_conflicts() const {
  std::size_t n = 0;
  for (const ImplicationResult& c : checks)
    if (c.outcome == Outcome::Conflict) ++n;
  return n;
}

InstanceReport run_implications(const Instance& inst) {
  GradedModel G(inst.ideal);
  return run_implications_impl(inst, G);
}

InstanceReport run_implications(const Instance& inst, const GradedModel& graded) {
  if (!(graded.ideal() == inst.ideal))
    throw invalid_input("run_implications: graded model wraps a different ideal");
  return run_implications_impl(inst, graded);
}

HarnessReport run_harness(std::uint64_t seed_begin, std::uint64_t seed_end,
                          InstanceProfile profile) {
  if (seed_end < seed_begin)
    throw invalid_input("run_harness: empty seed range bounds are reversed");
  HarnessReport rep;
  rep.profile = profile == InstanceProfile::Tiny ? "tiny" : "small";
  rep.seed_begin = seed_begin;
  rep.seed_end = seed_end;
  for (std::uint64_t seed = seed_begin; seed < seed_end; ++seed) {
    Instance inst = generate_instance(seed, profile);
    InstanceReport ir = run_implications(inst);
    rep.conflicts += ir.surviving_conflicts();
    rep.instances.push_back(std::move(ir));
  }
  return rep;
}

QuestionReport search_question_counterexample(std::uint64_t budget,
                                              InstanceProfile profile) {
  QuestionReport rep;
  rep.profile = profile == InstanceProfile::Tiny ? "tiny" : "small";
  rep.budget = budget;
  for (std::uint64_t seed = 0; seed < budget; ++seed) {
    Instance inst = generate_instance(seed, profile);
    QuestionEntry entry;
    entry.seed = seed;

    Verdict base = is_normal(inst.monoid());
    entry.base_is_normal = base.is_holds();
    if (entry.base_is_normal) {
      ++rep.skipped_normal_base;
      rep.entries.push_back(std::move(entry));
      continue;
    }

    Verdict ideal_v = is_normal_ideal(inst.ideal, inst.bounds.power_bound);
    entry.ideal_verdict = ideal_v;
    if (ideal_v.is_fails()) {
      ++rep.skipped_ideal_witness;
      rep.entries.push_back(std::move(entry));
      continue;
    }

    entry.probed = true;
    ++rep.probed;
    AffineMonoid cylinder = adjoin_free_generator(inst.monoid());
    IntMat lifted;
    for (const IntVec& b : inst.ideal.generators()) {
      IntVec h = b;
      h.emplace_back(0);
      lifted.push_back(std::move(h));
    }
    MonomialIdeal extended(cylinder, std::move(lifted));
    Verdict ext_v = is_normal_ideal(extended, inst.bounds.power_bound);
    entry.extended_verdict = ext_v;
    if (ext_v.is_fails() && verify_certificate(extended, *ext_v.certificate)) {
      entry.hit = true;
      ++rep.hits;
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

}  // namespace agr
