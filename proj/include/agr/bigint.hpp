#pragma once

// Exact arbitrary-precision integer and rational scalars, plus the small
// vector/matrix helpers shared by every module.  All lattice arithmetic in
// this library is exact; no floating point appears anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace agr {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

/// Floor division (quotient rounded toward negative infinity).  b must be
/// nonzero; used for Hermite reduction where remainders must land in
/// [0, |b|).
Int floor_div(const Int& a, const Int& b);

/// Floor remainder: a - floor_div(a, b) * b, always in [0, |b|).
Int floor_mod(const Int& a, const Int& b);

Int dot(const IntVec& a, const IntVec& b);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& a);
IntVec negate(const IntVec& a);

bool is_zero(const IntVec& a);

/// Greatest common divisor of all entries (nonnegative; 0 for a zero vector).
Int content(const IntVec& a);

/// Divides out the content so the vector is primitive.  Zero vectors are
/// returned unchanged.
IntVec primitive(const IntVec& a);

/// Lexicographic comparison, entry by entry.
bool lex_less(const IntVec& a, const IntVec& b);

std::string to_string(const IntVec& a);

}  // namespace agr
