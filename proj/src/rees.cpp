#include "agr/rees.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <utility>

#include "agr/errors.hpp"

namespace agr {

namespace {

bool prime_int(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

IntVec lift(const IntVec& a, const Int& grade) {
  IntVec v = a;
  v.push_back(grade);
  return v;
}

IntVec drop_grade(const IntVec& a) { return IntVec(a.begin(), a.end() - 1); }

Int rat_floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

bool weight_lex_less(const std::pair<Int, IntVec>& a, const std::pair<Int, IntVec>& b) {
  if (a.first != b.first) return a.first < b.first;
  return lex_less(a.second, b.second);
}

// Members of S with weight <= bound, in (weight, lex) order, zero excluded.
std::vector<IntVec> members_by_weight(const AffineMonoid& S, const Int& bound) {
  IntMat region = region_lattice_points(S, bound);
  std::set<IntVec> members = region_members(S, region);
  std::vector<std::pair<Int, IntVec>> order;
  for (const IntVec& p : members)
    if (!is_zero(p)) order.emplace_back(S.weight_of(p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);
  std::vector<IntVec> out;
  out.reserve(order.size());
  for (auto& [w, p] : order) out.push_back(std::move(p));
  return out;
}

// Points of group(S) ∩ cone(S) with weight <= bound that are not members,
// in (weight, lex) order.
std::vector<IntVec> holes_by_weight(const AffineMonoid& S, const Int& bound) {
  IntMat region = region_lattice_points(S, bound);
  std::set<IntVec> members = region_members(S, region);
  std::vector<std::pair<Int, IntVec>> order;
  for (const IntVec& p : region)
    if (!members.count(p)) order.emplace_back(S.weight_of(p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);
  std::vector<IntVec> out;
  out.reserve(order.size());
  for (auto& [w, p] : order) out.push_back(std::move(p));
  return out;
}

// Split-principal data: the ideal is (g) for a monoid generator g outside
// the rational span of the remaining generators.
struct SplitData {
  IntVec g;
  IntMat others;
};

std::optional<SplitData> split_principal(const MonomialIdeal& I) {
  if (I.generators().size() != 1) return std::nullopt;
  const IntVec& g = I.generators().front();
  const IntMat& sg = I.monoid().generators();
  if (std::find(sg.begin(), sg.end(), g) == sg.end()) return std::nullopt;
  IntMat others;
  for (const IntVec& s : sg)
    if (s != g) others.push_back(s);
  int rank_others =
      others.empty() ? 0 : hnf(others, I.monoid().ambient_dim()).rank();
  int rank_all = hnf(sg, I.monoid().ambient_dim()).rank();
  if (rank_all != rank_others + 1) return std::nullopt;
  return SplitData{g, std::move(others)};
}

// An integer functional vanishing on `others` with a positive value on g.
// Exists exactly in the split case.
IntVec split_functional(const SplitData& sd, int dim) {
  std::vector<IntVec> kernel;
  if (sd.others.empty()) {
    for (int f = 0; f < dim; ++f) {
      IntVec psi(dim, Int(0));
      psi[f] = 1;
      kernel.push_back(std::move(psi));
    }
  } else {
    LatticeGroup H = hnf(sd.others, dim);
    const IntMat& rows = H.basis();
    std::vector<int> pivots;
    for (const IntVec& r : rows) {
      int p = 0;
      while (p < dim && r[p] == 0) ++p;
      pivots.push_back(p);
    }
    std::vector<bool> is_pivot(dim, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int f = 0; f < dim; ++f) {
      if (is_pivot[f]) continue;
      IntVec psi(dim, Int(0));
      psi[f] = 1;
      for (int i = static_cast<int>(rows.size()) - 1; i >= 0; --i) {
        Int t = dot(rows[i], psi);
        if (t == 0) continue;
        const Int& p = rows[i][pivots[i]];
        for (Int& x : psi) x *= p;
        psi[pivots[i]] -= t;
      }
      kernel.push_back(primitive(psi));
    }
  }
  for (IntVec& psi : kernel) {
    Int c = dot(psi, sd.g);
    if (c == 0) continue;
    if (c < 0) psi = negate(psi);
    return psi;
  }
  throw invalid_state("split functional: no kernel vector separates the ideal generator");
}

// True when every asymptotic-order facet whose minimality chamber is
// full-dimensional takes integer values on the member lattice.  Combined
// with normality of the blowup monoid this is exact for reducedness.
bool nu_integer_valued_on_lattice(const MonomialIdeal& I) {
  const AffineMonoid& S = I.monoid();
  const int d = S.ambient_dim();
  std::vector<std::pair<IntVec, Int>> neg;  // (c, m) encoding c·x / m
  for (const IntVec& n : I.blowup_cone().facet_normals()) {
    if (n.back() < 0) neg.emplace_back(drop_grade(n), -n.back());
  }
  for (std::size_t i = 0; i < neg.size(); ++i) {
    const auto& [c, m] = neg[i];
    IntMat rows = S.cone().facet_normals();
    for (std::size_t j = 0; j < neg.size(); ++j) {
      if (j == i) continue;
      // c·x / m <= c_j·x / m_j  on the chamber of facet i.
      IntVec diff = sub(scale(m, neg[j].first), scale(neg[j].second, c));
      if (!is_zero(diff)) rows.push_back(std::move(diff));
    }
    if (dualize(rows, d).lineality_dim() != 0) continue;  // chamber is thin
    for (const IntVec& b : S.group().basis()) {
      if (dot(c, b) % m != 0) return false;
    }
  }
  return true;
}

}  // namespace

AffineMonoid rees_monoid(const MonomialIdeal& I, ReesVariant variant) {
  if (variant == ReesVariant::Plus) return I.blowup_monoid();
  IntMat gens = I.blowup_monoid().generators();
  IntVec down(I.monoid().ambient_dim() + 1, Int(0));
  down.back() = -1;
  gens.push_back(std::move(down));
  return AffineMonoid(std::move(gens), I.monoid().ambient_dim() + 1);
}

struct GradedModel::State {
  MonomialIdeal I;
  std::function<Int(const IntVec&)> override_fn;

  std::mutex mu;
  std::optional<Certificate> nonadd;

  State(MonomialIdeal i, std::function<Int(const IntVec&)> f)
      : I(std::move(i)), override_fn(std::move(f)) {}
};

GradedModel::GradedModel(MonomialIdeal ideal)
    : state_(std::make_shared<State>(std::move(ideal), nullptr)) {}

GradedModel::GradedModel(MonomialIdeal ideal, std::function<Int(const IntVec&)> ord_override)
    : state_(std::make_shared<State>(std::move(ideal), std::move(ord_override))) {}

const MonomialIdeal& GradedModel::ideal() const { return state_->I; }
const AffineMonoid& GradedModel::base() const { return state_->I.monoid(); }
bool GradedModel::has_override() const { return static_cast<bool>(state_->override_fn); }

Int GradedModel::ord_of(const IntVec& a) const {
  if (!monoid_contains(base(), a))
    throw invalid_input("ord_of: element does not belong to the monoid");
  if (state_->override_fn) return state_->override_fn(a);
  return ord(state_->I, a);
}

std::optional<Certificate> GradedModel::recorded_non_additivity() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->nonadd;
}

Verdict gr_reduced(const GradedModel& G, const Int& elem_bound, const Int& mult_bound) {
  if (elem_bound < 0) throw invalid_input("gr_reduced: negative element bound");
  if (mult_bound < 2) throw invalid_input("gr_reduced: multiplier bound must be >= 2");

  const bool exact = !G.has_override();
  if (exact) {
    Verdict blow = is_normal(G.ideal().blowup_monoid());
    if (blow.is_holds() && nu_integer_valued_on_lattice(G.ideal()))
      return Verdict::holds();
  }

  std::vector<IntVec> members = members_by_weight(G.base(), elem_bound);
  for (const IntVec& a : members) {
    Int oa = G.ord_of(a);
    // The asymptotic value caps every order, so multiples whose cap already
    // matches k * ord(a) cannot jump; this prunes almost all probes.
    std::optional<Rational> cap;
    if (exact) {
      cap = asymptotic_ord(G.ideal(), a);
      if (*cap == oa) continue;
    }
    for (Int k = 2; k <= mult_bound; ++k) {
      if (exact && rat_floor(Rational(k) * *cap) <= k * oa) continue;
      if (G.ord_of(scale(k, a)) > k * oa) {
        Certificate c;
        c.kind = Certificate::Kind::GrNilpotent;
        c.vector_a = a;
        c.scalar_n = k;
        return Verdict::fails(std::move(c));
      }
    }
  }

  return Verdict::unknown(elem_bound);
}

Verdict gr_additive(const GradedModel& G, const Int& elem_bound) {
  if (elem_bound < 0) throw invalid_input("gr_additive: negative element bound");

  const bool exact = !G.has_override();
  std::vector<IntVec> members = members_by_weight(G.base(), elem_bound);
  std::vector<Int> ords;
  ords.reserve(members.size());
  for (const IntVec& a : members) ords.push_back(G.ord_of(a));
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Int& oa = ords[i];
    for (std::size_t j = i; j < members.size(); ++j) {
      IntVec sum = add(members[i], members[j]);
      // Orders are superadditive and capped by the asymptotic value, so a
      // jump is impossible unless the cap of the sum leaves room.
      if (exact &&
          rat_floor(asymptotic_ord(G.ideal(), sum)) <= oa + ords[j])
        continue;
      if (G.ord_of(sum) > oa + ords[j]) {
        Certificate c;
        c.kind = Certificate::Kind::GrNonAdditive;
        c.vector_a = members[i];
        c.vector_b = members[j];
        {
          std::lock_guard<std::mutex> lock(G.state_->mu);
          G.state_->nonadd = c;
        }
        return Verdict::fails(std::move(c));
      }
    }
  }

  if (!G.has_override() && split_principal(G.ideal())) return Verdict::holds();
  return Verdict::unknown(elem_bound);
}

AffineMonoid gr_as_monoid(const GradedModel& G) {
  if (G.recorded_non_additivity())
    throw invalid_state(
        "gr_as_monoid: a non-additivity witness invalidates the monoid model");
  IntMat gens;
  for (const IntVec& s : G.base().generators()) gens.push_back(lift(s, G.ord_of(s)));
  return AffineMonoid(std::move(gens), G.base().ambient_dim() + 1);
}

namespace {

// Exact order conditions for a graded seminormality witness v: the doubled
// and tripled points are members whose order data is consistent with a
// single graded class (ord(6v) = 3 ord(2v) = 2 ord(3v)), while v itself is
// not a member.
bool graded_sn_witness(const GradedModel& G, const IntVec& v) {
  const AffineMonoid& S = G.base();
  if (is_zero(v)) return false;
  if (!S.group().contains(v) || !S.cone().contains(v)) return false;
  if (monoid_contains(S, v)) return false;
  IntVec v2 = scale(2, v), v3 = scale(3, v);
  if (!monoid_contains(S, v2) || !monoid_contains(S, v3)) return false;
  Int o6 = G.ord_of(scale(6, v));
  return o6 == Int(3) * G.ord_of(v2) && o6 == Int(2) * G.ord_of(v3);
}

// Exact order conditions for a graded weak-normality witness pair (v, e) in
// characteristic p, given the member list used for the zero-divisor probe.
bool graded_wn_witness(const GradedModel& G, const IntVec& v, const IntVec& e,
                       const Int& p, const std::vector<IntVec>& probe_members,
                       std::map<IntVec, bool>* nzd_cache) {
  const AffineMonoid& S = G.base();
  if (is_zero(v)) return false;
  if (!S.group().contains(v) || !S.cone().contains(v)) return false;
  if (monoid_contains(S, v)) return false;
  if (!monoid_contains(S, e)) return false;
  IntVec u = add(v, e);
  if (!monoid_contains(S, u)) return false;
  IntVec pv = scale(p, v);
  if (!monoid_contains(S, pv)) return false;

  Int oe = G.ord_of(e);
  if (G.ord_of(scale(p, e)) != p * oe) return false;
  Int ou = G.ord_of(u);
  Int opu = G.ord_of(scale(p, u));
  if (opu != p * ou) return false;
  if (opu != G.ord_of(pv) + p * oe) return false;

  // e must act as a non-zero-divisor on the probed part of the graded ring.
  auto it = nzd_cache->find(e);
  bool nzd;
  if (it != nzd_cache->end()) {
    nzd = it->second;
  } else {
    const bool exact = !G.has_override();
    nzd = true;
    for (const IntVec& s : probe_members) {
      Int os = G.ord_of(s);
      // Superadditivity plus the asymptotic cap force equality whenever the
      // cap of the sum leaves no room for a jump.
      IntVec sum = add(e, s);
      if (exact && rat_floor(asymptotic_ord(G.ideal(), sum)) <= oe + os)
        continue;
      if (G.ord_of(sum) != oe + os) {
        nzd = false;
        break;
      }
    }
    nzd_cache->emplace(e, nzd);
  }
  return nzd;
}

}  // namespace

Verdict gr_seminormal(const GradedModel& G, const Int& characteristic,
                      const Int& search_bound) {
  if (characteristic != 0 && !prime_int(characteristic))
    throw invalid_input("gr_seminormal: characteristic must be 0 or a prime");
  if (search_bound < 0) throw invalid_input("gr_seminormal: negative search bound");

  Verdict red = gr_reduced(G, search_bound, Int(8));
  if (red.is_fails()) return Verdict::fails(*red.certificate);

  Verdict add_v = gr_additive(G, search_bound);

  bool monoid_path = !add_v.is_fails() && !G.recorded_non_additivity();
  std::vector<IntVec> candidates = holes_by_weight(G.base(), search_bound);
  if (monoid_path) {
    AffineMonoid M = gr_as_monoid(G);
    Verdict sub = characteristic == 0 ? is_seminormal(M, search_bound)
                                      : is_weakly_normal(M, characteristic, search_bound);
    if (sub.is_holds() && add_v.is_holds() && red.is_holds()) return Verdict::holds();
    if (sub.is_fails()) {
      // Delegated witnesses live in Z^{d+1}; their base-space part is an
      // extra candidate for the exact checks (it may lie outside the region).
      IntVec v = drop_grade(sub.certificate->vector_a);
      if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
        candidates.push_back(std::move(v));
    }
  }

  for (const IntVec& v : candidates) {
    if (graded_sn_witness(G, v)) {
      Certificate c;
      c.kind = Certificate::Kind::NotSeminormal;
      c.vector_a = v;
      return Verdict::fails(std::move(c));
    }
  }

  if (characteristic != 0) {
    std::vector<IntVec> members = members_by_weight(G.base(), search_bound);
    std::map<IntVec, bool> nzd_cache;
    for (const IntVec& v : candidates) {
      for (const IntVec& e : members) {
        if (graded_wn_witness(G, v, e, characteristic, members, &nzd_cache)) {
          Certificate c;
          c.kind = Certificate::Kind::NotWeaklyNormal;
          c.vector_a = v;
          c.vector_b = e;
          c.scalar_n = characteristic;
          return Verdict::fails(std::move(c));
        }
      }
    }
  }

  return Verdict::unknown(search_bound);
}

bool principal_gr_iso_check(const GradedModel& G, const Int& probe_bound) {
  if (probe_bound < 0) throw invalid_input("principal_gr_iso_check: negative bound");
  auto sd = split_principal(G.ideal());
  if (!sd)
    throw unsupported_input(
        "principal_gr_iso_check: ideal is not split-principal");
  IntVec psi = split_functional(*sd, G.base().ambient_dim());
  Int c = dot(psi, sd->g);
  if (G.ord_of(IntVec(G.base().ambient_dim(), Int(0))) != 0) return false;
  for (const IntVec& a : members_by_weight(G.base(), probe_bound)) {
    if (c * G.ord_of(a) != dot(psi, a)) return false;
  }
  return true;
}

bool verify_certificate(const GradedModel& G, const Certificate& c) {
  const AffineMonoid& S = G.base();
  const int d = S.ambient_dim();
  switch (c.kind) {
    case Certificate::Kind::GrNilpotent: {
      if (static_cast<int>(c.vector_a.size()) != d)
        throw invalid_input("certificate: dimension mismatch");
      if (c.scalar_n < 1) throw invalid_input("certificate: multiplier must be >= 1");
      if (!monoid_contains(S, c.vector_a)) return false;
      return G.ord_of(scale(c.scalar_n, c.vector_a)) >
             c.scalar_n * G.ord_of(c.vector_a);
    }
    case Certificate::Kind::GrNonAdditive: {
      if (static_cast<int>(c.vector_a.size()) != d ||
          static_cast<int>(c.vector_b.size()) != d)
        throw invalid_input("certificate: dimension mismatch");
      if (!monoid_contains(S, c.vector_a) || !monoid_contains(S, c.vector_b))
        return false;
      return G.ord_of(add(c.vector_a, c.vector_b)) >
             G.ord_of(c.vector_a) + G.ord_of(c.vector_b);
    }
    case Certificate::Kind::NotSeminormal: {
      if (static_cast<int>(c.vector_a.size()) != d)
        throw invalid_input("certificate: dimension mismatch");
      return graded_sn_witness(G, c.vector_a);
    }
    case Certificate::Kind::NotWeaklyNormal: {
      if (static_cast<int>(c.vector_a.size()) != d ||
          static_cast<int>(c.vector_b.size()) != d)
        throw invalid_input("certificate: dimension mismatch");
      if (!prime_int(c.scalar_n))
        throw invalid_input("certificate: characteristic must be prime");
      Int probe(0);
      for (const IntVec& g : S.generators())
        probe = std::max(probe, S.weight_of(g));
      for (const IntVec& b : G.ideal().generators())
        probe = std::max(probe, S.weight_of(b));
      probe *= 4;
      std::vector<IntVec> members = members_by_weight(S, probe);
      std::map<IntVec, bool> cache;
      return graded_wn_witness(G, c.vector_a, c.vector_b, c.scalar_n, members, &cache);
    }
    case Certificate::Kind::NotIntegrallyClosedPower:
      return verify_certificate(G.ideal(), c);
    default:
      throw invalid_input("verify_certificate: certificate kind has no graded meaning");
  }
}

}  // namespace agr
