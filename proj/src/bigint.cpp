#include "agr/bigint.hpp"

#include <sstream>

#include "agr/errors.hpp"

namespace agr {

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw invalid_input("floor_div: division by zero");
  Int q = a / b;                 // truncates toward zero
  if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw invalid_input("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw invalid_input("add: dimension mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw invalid_input("sub: dimension mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec scale(const Int& c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

IntVec negate(const IntVec& a) { return scale(-1, a); }

bool is_zero(const IntVec& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

Int content(const IntVec& a) {
  Int g = 0;
  for (const Int& x : a) g = boost::multiprecision::gcd(g, x);
  return g < 0 ? Int(-g) : g;
}

IntVec primitive(const IntVec& a) {
  Int g = content(a);
  if (g == 0 || g == 1) return a;
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

bool lex_less(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

std::string to_string(const IntVec& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << a[i];
  }
  os << ")";
  return os.str();
}

}  // namespace agr
