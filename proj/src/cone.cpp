#include "agr/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "agr/errors.hpp"

namespace agr {

namespace {

/// Extreme rays and lineality space of the polyhedral cone
/// { y : row . y >= 0 for every row }, by incremental double description.
///
/// Invariant after processing a prefix of the constraints: `lin` spans the
/// current lineality space and `rays` holds exactly the extreme rays of the
/// pointed part, all primitive.  Tight sets are recomputed on demand, which
/// keeps the bookkeeping trivial at the scale this library targets.
struct DualDescription {
  std::vector<IntVec> lin;
  std::vector<IntVec> rays;
};

std::set<int> tight_set(const IntMat& constraints, int upto, const IntVec& r) {
  std::set<int> t;
  for (int i = 0; i < upto; ++i) {
    if (dot(constraints[i], r) == 0) t.insert(i);
  }
  return t;
}

DualDescription dual_description(const IntMat& constraints, int dim) {
  DualDescription dd;
  for (int i = 0; i < dim; ++i) {
    IntVec e(dim, Int(0));
    e[i] = 1;
    dd.lin.push_back(std::move(e));
  }
  for (int ci = 0; ci < static_cast<int>(constraints.size()); ++ci) {
    const IntVec& a = constraints[ci];
    // Case 1: the constraint cuts the lineality space.  One lineality basis
    // vector becomes a ray; the rest of the description is projected onto
    // the hyperplane a . y = 0 (valid because multiples of the pivot vector
    // can be absorbed freely).
    int pivot = -1;
    for (std::size_t i = 0; i < dd.lin.size(); ++i) {
      if (dot(a, dd.lin[i]) != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    }
    if (pivot >= 0) {
      IntVec l0 = dd.lin[pivot];
      Int al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = negate(l0);
        al0 = -al0;
      }
      std::vector<IntVec> new_lin;
      for (std::size_t i = 0; i < dd.lin.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        Int al = dot(a, dd.lin[i]);
        new_lin.push_back(primitive(sub(scale(al0, dd.lin[i]), scale(al, l0))));
      }
      for (IntVec& r : dd.rays) {
        Int ar = dot(a, r);
        r = primitive(sub(scale(al0, r), scale(ar, l0)));
      }
      dd.lin = std::move(new_lin);
      dd.rays.push_back(primitive(l0));
      continue;
    }
    // Case 2: lineality is unaffected; split the rays.
    std::vector<IntVec> pos, zero, neg;
    for (const IntVec& r : dd.rays) {
      Int ar = dot(a, r);
      if (ar > 0) pos.push_back(r);
      else if (ar == 0) zero.push_back(r);
      else neg.push_back(r);
    }
    if (neg.empty()) continue;  // constraint is redundant so far
    std::vector<IntVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    // Combine adjacent positive/negative pairs on the new hyperplane.  Two
    // rays are adjacent iff no third ray is tight on every constraint tight
    // on both; this keeps the description irredundant.
    std::set<IntVec> fresh;
    for (const IntVec& p : pos) {
      std::set<int> tp = tight_set(constraints, ci, p);
      for (const IntVec& n : neg) {
        std::set<int> tn = tight_set(constraints, ci, n);
        std::set<int> common;
        std::set_intersection(tp.begin(), tp.end(), tn.begin(), tn.end(),
                              std::inserter(common, common.begin()));
        bool adjacent = true;
        for (const IntVec& other : dd.rays) {
          if (other == p || other == n) continue;
          std::set<int> to = tight_set(constraints, ci, other);
          if (std::includes(to.begin(), to.end(), common.begin(), common.end())) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        IntVec w = sub(scale(dot(a, p), n), scale(dot(a, n), p));
        w = primitive(w);
        if (!is_zero(w)) fresh.insert(std::move(w));
      }
    }
    next.insert(next.end(), fresh.begin(), fresh.end());
    dd.rays = std::move(next);
  }
  return dd;
}

int rank_of(const IntMat& rows, int dim) {
  if (rows.empty()) return 0;
  return hnf(rows, dim).rank();
}

}  // namespace

RationalCone::RationalCone(int ambient_dim, IntMat ray_generators, IntMat facet_normals,
                           int lineality_dim)
    : ambient_dim_(ambient_dim), rays_(std::move(ray_generators)),
      normals_(std::move(facet_normals)), lineality_dim_(lineality_dim) {
  if (ambient_dim_ <= 0) throw invalid_input("RationalCone: ambient dimension must be positive");
}

bool RationalCone::contains(const IntVec& v) const {
  if (static_cast<int>(v.size()) != ambient_dim_)
    throw invalid_input("RationalCone::contains: dimension mismatch");
  for (const IntVec& n : normals_) {
    if (dot(n, v) < 0) return false;
  }
  return true;
}

RationalCone dualize(const IntMat& rays, int ambient_dim) {
  if (ambient_dim <= 0) throw invalid_input("dualize: ambient dimension must be positive");
  IntMat cleaned;
  for (const IntVec& r : rays) {
    if (static_cast<int>(r.size()) != ambient_dim)
      throw invalid_input("dualize: ray has wrong dimension");
    if (!is_zero(r)) cleaned.push_back(r);
  }
  if (cleaned.empty())
    throw invalid_input("dualize: need at least one nonzero ray");
  std::sort(cleaned.begin(), cleaned.end(), lex_less);
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());

  // The dual cone { y : g . y >= 0 } has the facet normals of cone(rays) as
  // its extreme rays; its lineality space is the orthogonal complement of
  // span(rays) and contributes equation pairs.
  DualDescription dd = dual_description(cleaned, ambient_dim);
  IntMat normals = dd.rays;
  if (!dd.lin.empty()) {
    // Canonicalize the complement basis so the normal list is unique.
    LatticeGroup lin_basis = hnf(dd.lin, ambient_dim);
    for (const IntVec& l : lin_basis.basis()) {
      normals.push_back(primitive(l));
      normals.push_back(primitive(negate(l)));
    }
  }
  std::sort(normals.begin(), normals.end(), lex_less);
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());

  int lineality = ambient_dim - rank_of(normals, ambient_dim);
  RationalCone cone(ambient_dim, std::move(cleaned), std::move(normals), lineality);
  for (const IntVec& r : cone.ray_generators()) {
    if (!cone.contains(r)) throw invalid_state("dualize: ray violates computed facet");
  }
  return cone;
}

RationalCone dualize(const IntMat& rays) {
  if (rays.empty()) throw invalid_input("dualize: need at least one ray to infer the dimension");
  return dualize(rays, static_cast<int>(rays.front().size()));
}

bool cone_contains(const RationalCone& c, const IntVec& v) { return c.contains(v); }

std::vector<Face> enumerate_faces(const RationalCone& c) {
  if (!c.pointed())
    throw unsupported_input("enumerate_faces: cone has positive lineality");
  const IntMat& rays = c.ray_generators();
  const IntMat& normals = c.facet_normals();
  const int nn = static_cast<int>(normals.size());

  // A face of a pointed cone is determined by the subset of ray generators it
  // contains; its canonical label is the maximal set of normals tight on all
  // of them.  Close the label set under single-normal refinement.
  auto tight_of_rays = [&](const std::vector<int>& ray_idx) {
    std::vector<int> t;
    for (int i = 0; i < nn; ++i) {
      bool all = true;
      for (int r : ray_idx) {
        if (dot(normals[i], rays[r]) != 0) { all = false; break; }
      }
      if (all) t.push_back(i);
    }
    return t;
  };
  auto rays_on = [&](const std::vector<int>& tight) {
    std::vector<int> rs;
    for (int r = 0; r < static_cast<int>(rays.size()); ++r) {
      bool on = true;
      for (int i : tight) {
        if (dot(normals[i], rays[r]) != 0) { on = false; break; }
      }
      if (on) rs.push_back(r);
    }
    return rs;
  };

  std::vector<int> all_rays(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all_rays[i] = static_cast<int>(i);

  std::map<std::vector<int>, std::vector<int>> faces;  // tight set -> ray indices
  std::vector<std::vector<int>> work;
  std::vector<int> top_tight = tight_of_rays(all_rays);
  faces[top_tight] = all_rays;
  work.push_back(top_tight);
  std::vector<int> zero_tight(nn);
  for (int i = 0; i < nn; ++i) zero_tight[i] = i;
  faces[zero_tight] = {};
  while (!work.empty()) {
    std::vector<int> tight = work.back();
    work.pop_back();
    std::vector<int> current_rays = rays_on(tight);
    for (int i = 0; i < nn; ++i) {
      if (std::binary_search(tight.begin(), tight.end(), i)) continue;
      std::vector<int> sub_rays;
      for (int r : current_rays) {
        if (dot(normals[i], rays[r]) == 0) sub_rays.push_back(r);
      }
      std::vector<int> label = sub_rays.empty() ? zero_tight : tight_of_rays(sub_rays);
      if (faces.emplace(label, sub_rays).second) work.push_back(label);
    }
  }

  std::vector<Face> out;
  for (const auto& [tight, ray_idx] : faces) {
    Face f;
    f.tight_normal_indices = tight;
    for (int r : ray_idx) f.spanning_rays.push_back(rays[r]);
    f.dim = f.spanning_rays.empty() ? 0 : rank_of(f.spanning_rays, c.ambient_dim());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.tight_normal_indices < b.tight_normal_indices;
  });
  return out;
}

bool relint_contains(const RationalCone& c, const Face& f, const IntVec& v) {
  if (static_cast<int>(v.size()) != c.ambient_dim())
    throw invalid_input("relint_contains: dimension mismatch");
  const IntMat& normals = c.facet_normals();
  std::set<int> tight(f.tight_normal_indices.begin(), f.tight_normal_indices.end());
  for (int i : tight) {
    if (i < 0 || i >= static_cast<int>(normals.size()))
      throw invalid_input("relint_contains: face does not belong to this cone");
  }
  for (int i = 0; i < static_cast<int>(normals.size()); ++i) {
    Int s = dot(normals[i], v);
    if (tight.count(i)) {
      if (s != 0) return false;
    } else if (s <= 0) {
      return false;
    }
  }
  return true;
}

IntMat lattice_points_in_box(const std::vector<std::pair<Int, Int>>& bounds,
                             const std::function<bool(const IntVec&)>& keep) {
  IntMat out;
  if (bounds.empty()) return out;
  for (const auto& [lo, hi] : bounds) {
    if (lo > hi) return out;
  }
  IntVec p;
  p.reserve(bounds.size());
  for (const auto& b : bounds) p.push_back(b.first);
  while (true) {
    if (!keep || keep(p)) out.push_back(p);
    int k = static_cast<int>(bounds.size()) - 1;
    while (k >= 0 && p[k] == bounds[k].second) {
      p[k] = bounds[k].first;
      --k;
    }
    if (k < 0) break;
    p[k] += 1;
  }
  return out;
}

IntMat lattice_points_in_box(const std::vector<std::pair<Int, Int>>& bounds,
                             const IntVec& weight, const Int& budget,
                             const std::function<bool(const IntVec&)>& keep) {
  const int d = static_cast<int>(bounds.size());
  if (static_cast<int>(weight.size()) != d)
    throw invalid_input("lattice_points_in_box: weight dimension mismatch");
  IntMat out;
  if (d == 0) return out;
  for (const auto& [lo, hi] : bounds) {
    if (lo > hi) return out;
  }
  // Minimal possible contribution of coordinates j..d-1 to the weight.
  std::vector<Int> suffix_min(d + 1, Int(0));
  for (int j = d - 1; j >= 0; --j) {
    Int lo_c = weight[j] * bounds[j].first;
    Int hi_c = weight[j] * bounds[j].second;
    suffix_min[j] = suffix_min[j + 1] + std::min(lo_c, hi_c);
  }
  IntVec p(d, Int(0));
  std::function<void(int, const Int&)> rec = [&](int j, const Int& partial) {
    if (partial + suffix_min[j] > budget) return;
    if (j == d) {
      if (!keep || keep(p)) out.push_back(p);
      return;
    }
    for (Int x = bounds[j].first; x <= bounds[j].second; ++x) {
      Int next = partial + weight[j] * x;
      // Ascending x with positive weight only grows the weight: cut the loop.
      if (weight[j] > 0 && next + suffix_min[j + 1] > budget) break;
      p[j] = x;
      rec(j + 1, next);
    }
  };
  rec(0, Int(0));
  return out;
}

std::optional<Rational> rational_value_nu(const RationalCone& graded_cone,
                                          const IntVec& a) {
  const int dim = graded_cone.ambient_dim();
  if (static_cast<int>(a.size()) + 1 != dim)
    throw invalid_input("rational_value_nu: point must have one coordinate fewer than the cone");
  IntVec lifted = a;
  lifted.emplace_back(0);
  if (!graded_cone.contains(lifted))
    throw invalid_input("rational_value_nu: point lies outside the degree-zero slice");
  bool bounded = false;
  Rational best = 0;
  for (const IntVec& n : graded_cone.facet_normals()) {
    const Int& e = n[dim - 1];
    if (e >= 0) continue;  // only facets that cap the grade bind the maximum
    Int ca = 0;
    for (int j = 0; j + 1 < dim; ++j) ca += n[j] * a[j];
    Rational q(ca, -e);
    if (!bounded || q < best) {
      best = q;
      bounded = true;
    }
  }
  if (!bounded) return std::nullopt;
  return best;
}

}  // namespace agr
