#include "agr/monoid.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <utility>

#include "agr/errors.hpp"

namespace agr {

namespace {

bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool weight_lex_less(const std::pair<Int, IntVec>& a, const std::pair<Int, IntVec>& b) {
  if (a.first != b.first) return a.first < b.first;
  return lex_less(a.second, b.second);
}

}  // namespace

Verdict Verdict::holds() { return Verdict{Status::Holds, std::nullopt, std::nullopt}; }

Verdict Verdict::fails(Certificate c) {
  return Verdict{Status::FailsWithWitness, std::move(c), std::nullopt};
}

Verdict Verdict::unknown(Int searched_bound) {
  return Verdict{Status::UnknownUpToBound, std::nullopt, std::move(searched_bound)};
}

struct AffineMonoid::State {
  int dim;
  IntMat gens;
  LatticeGroup grp;
  RationalCone cone;
  IntVec weight;

  std::mutex mu;
  std::map<IntVec, bool> member_cache;
  std::optional<IntMat> zonotope_holes_memo;
  std::optional<Verdict> normal_memo;
  std::map<Int, Verdict> seminormal_memo;
  std::map<std::pair<Int, Int>, Verdict> weakly_normal_memo;

  // Cached weight-bounded slice of group ∩ cone with its member subset,
  // grown monotonically; every region/membership query filters this table.
  Int table_budget{-1};
  IntMat table_region;  // lex order
  std::set<IntVec> table_members;

  State(int d, IntMat g, LatticeGroup gr, RationalCone c, IntVec w)
      : dim(d),
        gens(std::move(g)),
        grp(std::move(gr)),
        cone(std::move(c)),
        weight(std::move(w)) {}

  static void ensure_table(const AffineMonoid& S, const Int& W);
};

std::shared_ptr<AffineMonoid::State> AffineMonoid::make_state(IntMat generators,
                                                              int ambient_dim) {
  if (ambient_dim <= 0) throw invalid_input("affine monoid: ambient dimension must be positive");
  IntMat gens;
  for (IntVec& g : generators) {
    if (static_cast<int>(g.size()) != ambient_dim)
      throw invalid_input("affine monoid: generator dimension mismatch");
    if (!is_zero(g)) gens.push_back(std::move(g));
  }
  std::sort(gens.begin(), gens.end(), lex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.empty())
    throw invalid_input("affine monoid: need at least one nonzero generator");

  RationalCone cone = dualize(gens, ambient_dim);
  if (!cone.pointed())
    throw unsupported_input("affine monoid: generators span a non-pointed cone");

  IntVec w(ambient_dim, Int(0));
  for (const IntVec& n : cone.facet_normals()) w = add(w, n);
  for (const IntVec& g : gens) {
    if (dot(w, g) <= 0)
      throw invalid_state("affine monoid: weight functional not positive on a generator");
  }

  LatticeGroup grp = hnf(gens, ambient_dim);
  return std::make_shared<AffineMonoid::State>(ambient_dim, std::move(gens),
                                               std::move(grp), std::move(cone),
                                               std::move(w));
}

AffineMonoid::AffineMonoid(IntMat generators, int ambient_dim)
    : state_(make_state(std::move(generators), ambient_dim)) {}

AffineMonoid::AffineMonoid(IntMat generators)
    : state_(make_state(generators,
                        generators.empty()
                            ? throw invalid_input("affine monoid: empty generator list")
                            : static_cast<int>(generators.front().size()))) {}

int AffineMonoid::ambient_dim() const { return state_->dim; }
const IntMat& AffineMonoid::generators() const { return state_->gens; }
const LatticeGroup& AffineMonoid::group() const { return state_->grp; }
const RationalCone& AffineMonoid::cone() const { return state_->cone; }
const IntVec& AffineMonoid::weight() const { return state_->weight; }

Int AffineMonoid::weight_of(const IntVec& v) const {
  if (v.size() != state_->weight.size())
    throw invalid_input("weight_of: dimension mismatch");
  return dot(state_->weight, v);
}

bool AffineMonoid::operator==(const AffineMonoid& other) const {
  return state_->dim == other.state_->dim && state_->gens == other.state_->gens;
}

bool monoid_contains(const AffineMonoid& S, const IntVec& v) {
  auto& st = *S.state_;
  if (static_cast<int>(v.size()) != st.dim)
    throw invalid_input("monoid_contains: dimension mismatch");
  if (is_zero(v)) return true;
  if (!st.grp.contains(v) || !st.cone.contains(v)) return false;
  {
    std::lock_guard<std::mutex> lock(st.mu);
    // Points inside the cached weight table are already decided.
    if (dot(st.weight, v) <= st.table_budget) return st.table_members.count(v) > 0;
    auto it = st.member_cache.find(v);
    if (it != st.member_cache.end()) return it->second;
  }
  bool in = solve_nonneg_integer(st.gens, v, st.weight, [&](const IntVec& r) {
              return st.cone.contains(r);
            }).has_value();
  std::lock_guard<std::mutex> lock(st.mu);
  st.member_cache.emplace(v, in);
  return in;
}

AffineMonoid adjoin_free_generator(const AffineMonoid& S) {
  IntMat gens;
  for (const IntVec& g : S.generators()) {
    IntVec h = g;
    h.emplace_back(0);
    gens.push_back(std::move(h));
  }
  IntVec unit(S.ambient_dim() + 1, Int(0));
  unit.back() = 1;
  gens.push_back(std::move(unit));
  return AffineMonoid(std::move(gens), S.ambient_dim() + 1);
}

void AffineMonoid::State::ensure_table(const AffineMonoid& S, const Int& W) {
  auto& st = *S.state_;
  {
    std::lock_guard<std::mutex> lock(st.mu);
    if (W <= st.table_budget) return;
  }

  int d = S.ambient_dim();
  const IntVec& w = S.weight();
  std::vector<std::pair<Int, Int>> box(d, {Int(0), Int(0)});
  for (const IntVec& r : S.cone().ray_generators()) {
    Int wr = dot(w, r);
    if (wr <= 0) throw invalid_state("region_points: nonpositive ray weight");
    for (int j = 0; j < d; ++j) {
      Int num = W * r[j];
      Int lo = floor_div(num, wr);
      Int hi = -floor_div(-num, wr);
      box[j].first = std::min(box[j].first, lo);
      box[j].second = std::max(box[j].second, hi);
    }
  }
  IntMat region = lattice_points_in_box(box, w, W, [&](const IntVec& p) {
    return S.group().contains(p) && S.cone().contains(p);
  });

  // One pass in weight order decides membership: a nonzero point belongs to
  // the monoid exactly when some generator steps down to a member.
  std::vector<std::pair<Int, IntVec>> order;
  order.reserve(region.size());
  for (const IntVec& p : region) order.emplace_back(dot(w, p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);
  std::set<IntVec> members;
  for (const auto& [wp, p] : order) {
    if (is_zero(p)) {
      members.insert(p);
      continue;
    }
    for (const IntVec& g : st.gens) {
      IntVec q = sub(p, g);
      if (members.count(q)) {
        members.insert(p);
        break;
      }
    }
  }

  std::lock_guard<std::mutex> lock(st.mu);
  if (W > st.table_budget) {
    st.table_budget = W;
    st.table_region = std::move(region);
    st.table_members = std::move(members);
  }
}

IntMat region_lattice_points(const AffineMonoid& S, const Int& W) {
  if (W < 0) return {};
  AffineMonoid::State::ensure_table(S, W);
  auto& st = *S.state_;
  std::lock_guard<std::mutex> lock(st.mu);
  IntMat out;
  for (const IntVec& p : st.table_region) {
    if (dot(st.weight, p) <= W) out.push_back(p);
  }
  return out;
}

std::set<IntVec> region_members(const AffineMonoid& S, const IntMat& region) {
  Int Wmax(-1);
  for (const IntVec& p : region) Wmax = std::max(Wmax, S.weight_of(p));
  if (Wmax < 0) return {};
  AffineMonoid::State::ensure_table(S, Wmax);
  auto& st = *S.state_;
  std::lock_guard<std::mutex> lock(st.mu);
  std::set<IntVec> out;
  for (const IntVec& p : region) {
    if (st.table_members.count(p)) out.insert(p);
  }
  return out;
}

const IntMat& zonotope_holes(const AffineMonoid& S) {
  auto& st = *S.state_;
  {
    std::lock_guard<std::mutex> lock(st.mu);
    if (st.zonotope_holes_memo) return *st.zonotope_holes_memo;
  }
  // The saturation is generated as a module over the monoid by the lattice
  // points of the generator zonotope {Σ t_i g_i : t_i ∈ [0, 1]}: writing a
  // saturation element as Σ λ_i g_i and splitting off ⌊λ_i⌋ leaves a
  // zonotope point.  The zonotope's bounding box, cut down by the total
  // generator weight, therefore contains a hole exactly when the monoid is
  // not normal, and every saturation element is a monoid member plus a point
  // listed here.
  int d = S.ambient_dim();
  Int W(0);
  for (const IntVec& g : S.generators()) W += S.weight_of(g);
  std::vector<std::pair<Int, Int>> box(d, {Int(0), Int(0)});
  for (const IntVec& g : S.generators()) {
    for (int j = 0; j < d; ++j) {
      if (g[j] < 0) box[j].first += g[j];
      else box[j].second += g[j];
    }
  }
  IntMat candidates = lattice_points_in_box(box, S.weight(), W, [&](const IntVec& p) {
    return S.group().contains(p) && S.cone().contains(p);
  });
  IntMat holes;
  for (const IntVec& p : candidates) {
    if (!monoid_contains(S, p)) holes.push_back(p);
  }
  std::lock_guard<std::mutex> lock(st.mu);
  if (!st.zonotope_holes_memo) st.zonotope_holes_memo = std::move(holes);
  return *st.zonotope_holes_memo;
}

Verdict is_normal(const AffineMonoid& S) {
  auto& st = *S.state_;
  {
    std::lock_guard<std::mutex> lock(st.mu);
    if (st.normal_memo) return *st.normal_memo;
  }
  Verdict result = [&]() -> Verdict {
    const IntMat& holes = zonotope_holes(S);
    if (holes.empty()) return Verdict::holds();
    Certificate c;
    c.kind = Certificate::Kind::NotNormal;
    c.vector_a = holes.front();
    return Verdict::fails(std::move(c));
  }();
  std::lock_guard<std::mutex> lock(st.mu);
  st.normal_memo = result;
  return result;
}

Verdict is_seminormal(const AffineMonoid& S, const Int& search_bound) {
  if (search_bound < 0) throw invalid_input("is_seminormal: negative search bound");
  auto& st = *S.state_;
  {
    std::lock_guard<std::mutex> lock(st.mu);
    auto it = st.seminormal_memo.find(search_bound);
    if (it != st.seminormal_memo.end()) return it->second;
  }
  Verdict normal = is_normal(S);
  if (normal.is_holds()) {
    Verdict v = Verdict::holds();
    std::lock_guard<std::mutex> lock(st.mu);
    st.seminormal_memo.emplace(search_bound, v);
    return v;
  }

  IntMat region = region_lattice_points(S, search_bound);
  std::set<IntVec> members = region_members(S, region);

  std::vector<std::pair<Int, IntVec>> order;
  for (const IntVec& p : region)
    if (!is_zero(p)) order.emplace_back(S.weight_of(p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);

  Verdict result = Verdict::unknown(search_bound);
  for (const auto& [wp, v] : order) {
    if (members.count(v)) continue;
    if (monoid_contains(S, scale(2, v)) && monoid_contains(S, scale(3, v))) {
      Certificate c;
      c.kind = Certificate::Kind::NotSeminormal;
      c.vector_a = v;
      result = Verdict::fails(std::move(c));
      break;
    }
  }
  std::lock_guard<std::mutex> lock(st.mu);
  st.seminormal_memo.emplace(search_bound, result);
  return result;
}

Verdict is_weakly_normal(const AffineMonoid& S, const Int& characteristic,
                         const Int& search_bound) {
  if (characteristic == 0) return is_seminormal(S, search_bound);
  if (!is_prime(characteristic))
    throw invalid_input("is_weakly_normal: characteristic must be 0 or a prime");
  if (search_bound < 0) throw invalid_input("is_weakly_normal: negative search bound");

  auto& st = *S.state_;
  auto memo_key = std::make_pair(characteristic, search_bound);
  {
    std::lock_guard<std::mutex> lock(st.mu);
    auto it = st.weakly_normal_memo.find(memo_key);
    if (it != st.weakly_normal_memo.end()) return it->second;
  }
  Verdict normal = is_normal(S);
  if (normal.is_holds()) {
    Verdict v = Verdict::holds();
    std::lock_guard<std::mutex> lock(st.mu);
    st.weakly_normal_memo.emplace(memo_key, v);
    return v;
  }

  IntMat region = region_lattice_points(S, search_bound);
  std::set<IntVec> members = region_members(S, region);

  std::vector<std::pair<Int, IntVec>> order;
  for (const IntVec& p : region)
    if (!is_zero(p)) order.emplace_back(S.weight_of(p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);

  Verdict result = Verdict::unknown(search_bound);
  for (const auto& [wp, v] : order) {
    if (members.count(v)) continue;
    bool two_three = monoid_contains(S, scale(2, v)) && monoid_contains(S, scale(3, v));
    bool p_power = monoid_contains(S, scale(characteristic, v));
    if (two_three || p_power) {
      Certificate c;
      c.kind = Certificate::Kind::NotWeaklyNormal;
      c.vector_a = v;
      c.scalar_n = characteristic;
      result = Verdict::fails(std::move(c));
      break;
    }
  }
  std::lock_guard<std::mutex> lock(st.mu);
  st.weakly_normal_memo.emplace(memo_key, result);
  return result;
}

IntMat seminormal_fixpoint_oracle(const AffineMonoid& S, const Int& search_bound) {
  if (search_bound < 0) throw invalid_input("seminormal_fixpoint_oracle: negative bound");
  IntMat region = region_lattice_points(S, search_bound);
  std::set<IntVec> present = region_members(S, region);

  std::vector<std::pair<Int, IntVec>> order;
  for (const IntVec& p : region)
    if (!is_zero(p)) order.emplace_back(S.weight_of(p), p);
  std::sort(order.begin(), order.end(), weight_lex_less);

  std::vector<std::pair<Int, IntVec>> added;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [wp, v] : order) {
      if (present.count(v)) continue;
      if (present.count(scale(2, v)) && present.count(scale(3, v))) {
        present.insert(v);
        added.emplace_back(wp, v);
        changed = true;
      }
    }
  }
  std::sort(added.begin(), added.end(), weight_lex_less);
  IntMat out;
  out.reserve(added.size());
  for (auto& [wp, v] : added) out.push_back(std::move(v));
  return out;
}

bool verify_certificate(const AffineMonoid& S, const Certificate& c) {
  switch (c.kind) {
    case Certificate::Kind::NotNormal: {
      if (static_cast<int>(c.vector_a.size()) != S.ambient_dim())
        throw invalid_input("certificate: dimension mismatch");
      return S.group().contains(c.vector_a) && S.cone().contains(c.vector_a) &&
             !monoid_contains(S, c.vector_a);
    }
    case Certificate::Kind::NotSeminormal: {
      if (static_cast<int>(c.vector_a.size()) != S.ambient_dim())
        throw invalid_input("certificate: dimension mismatch");
      return !monoid_contains(S, c.vector_a) &&
             monoid_contains(S, scale(2, c.vector_a)) &&
             monoid_contains(S, scale(3, c.vector_a));
    }
    case Certificate::Kind::NotWeaklyNormal: {
      if (static_cast<int>(c.vector_a.size()) != S.ambient_dim())
        throw invalid_input("certificate: dimension mismatch");
      if (c.scalar_n != 0 && !is_prime(c.scalar_n))
        throw invalid_input("certificate: characteristic must be 0 or a prime");
      if (monoid_contains(S, c.vector_a)) return false;
      bool two_three = monoid_contains(S, scale(2, c.vector_a)) &&
                       monoid_contains(S, scale(3, c.vector_a));
      if (two_three) return true;
      if (c.scalar_n == 0) return false;
      return S.group().contains(c.vector_a) && S.cone().contains(c.vector_a) &&
             monoid_contains(S, scale(c.scalar_n, c.vector_a));
    }
    default:
      throw invalid_input("verify_certificate: not a monoid-level certificate");
  }
}

}  // namespace agr
