#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace pstrace {

/// Exact rational scalar.  mpq_class keeps gcd(num,den)=1 and den>0 after
/// every arithmetic operation, which is exactly the canonical form we need.
using Rat = mpq_class;

/// Dense coordinate vector over the rationals.
using Vec = std::vector<Rat>;

/// Parses "p/q" or "n" (optionally signed).  Rejects anything else, in
/// particular floating literals.
Rat rat_parse(const std::string& s);

std::string rat_str(const Rat& r);

/// Canonicalised fraction num/den (mpq_class's two-argument constructor does
/// not reduce on its own).
inline Rat rat_frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

Vec vec_zero(std::size_t n);
bool vec_is_zero(const Vec& v);

/// dst += c * src
void vec_axpy(Vec& dst, const Rat& c, const Vec& src);

Rat vec_dot(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& v);

std::string vec_str(const Vec& v);

}  // namespace pstrace
