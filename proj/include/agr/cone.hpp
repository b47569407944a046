#pragma once

// Exact rational polyhedral cones in both descriptions: generating rays and
// facet inequalities.  Conversion runs the double description method with
// arbitrary-precision integer arithmetic on primitive vectors, so the
// H-description is canonical and deterministic.

#include <functional>
#include <optional>
#include <vector>

#include "agr/bigint.hpp"
#include "agr/lattice.hpp"

namespace agr {

/// A face of a pointed cone, identified by the facet inequalities tight on it.
struct Face {
  int dim = 0;
  std::vector<int> tight_normal_indices;   // sorted, indices into facet_normals
  IntMat spanning_rays;                    // the ray generators lying on the face

  bool operator==(const Face&) const = default;
};

/// Cone spanned by integer ray generators, with the dual facet description
/// attached.  Each facet normal n encodes the valid inequality n . x >= 0;
/// one-dimensional lineality directions appear as opposite normal pairs.
class RationalCone {
 public:
  RationalCone(int ambient_dim, IntMat ray_generators, IntMat facet_normals,
               int lineality_dim);

  int ambient_dim() const { return ambient_dim_; }
  const IntMat& ray_generators() const { return rays_; }
  const IntMat& facet_normals() const { return normals_; }
  int lineality_dim() const { return lineality_dim_; }
  bool pointed() const { return lineality_dim_ == 0; }

  bool contains(const IntVec& v) const;

 private:
  int ambient_dim_;
  IntMat rays_;
  IntMat normals_;
  int lineality_dim_;
};

/// Builds the facet description of cone(rays) via incremental double
/// description on the dual side.  Rays must be nonempty with a common
/// positive dimension; zero rays are ignored.  Normals come out primitive
/// and lexicographically sorted.
RationalCone dualize(const IntMat& rays, int ambient_dim);
RationalCone dualize(const IntMat& rays);

bool cone_contains(const RationalCone& c, const IntVec& v);

/// The full face lattice of a pointed cone, deterministically ordered by
/// (dimension, tight index set).  Includes the zero face and the cone itself.
/// Throws unsupported_input when the cone has positive lineality.
std::vector<Face> enumerate_faces(const RationalCone& c);

/// True iff v lies in the relative interior of face f: the tight inequalities
/// of f vanish on v and every other facet inequality is strictly positive.
bool relint_contains(const RationalCone& c, const Face& f, const IntVec& v);

/// All integer points of the box given by inclusive [lo, hi] coordinate
/// bounds that satisfy `keep`, in lexicographic order.
IntMat lattice_points_in_box(const std::vector<std::pair<Int, Int>>& bounds,
                             const std::function<bool(const IntVec&)>& keep = {});

/// Same enumeration restricted to points with weight · p <= budget; subtrees
/// whose minimal achievable weight already exceeds the budget are skipped, so
/// this stays near-linear in the output size for positive weights.
IntMat lattice_points_in_box(const std::vector<std::pair<Int, Int>>& bounds,
                             const IntVec& weight, const Int& budget,
                             const std::function<bool(const IntVec&)>& keep = {});

/// The asymptotic order value on a graded cone: the largest rational q with
/// (a, q) inside the cone, where the grade is the last coordinate.  Requires
/// (a, 0) to lie in the cone.  Returns nullopt when unbounded above (which
/// cannot happen for cones of proper monomial ideals over pointed monoids).
std::optional<Rational> rational_value_nu(const RationalCone& graded_cone,
                                          const IntVec& a);

}  // namespace agr
