#include "pstrace/rational.hpp"

#include <cctype>

#include "pstrace/errors.hpp"

namespace pstrace {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat rat_parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(s)) throw ParseError("not an exact rational: '" + s + "'");
        return Rat(mpz_class(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw ParseError("not an exact rational: '" + s + "'");
    mpz_class d(den);
    if (sgn(d) == 0) throw ParseError("zero denominator in '" + s + "'");
    Rat r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Vec vec_zero(std::size_t n) { return Vec(n, Rat(0)); }

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

void vec_axpy(Vec& dst, const Rat& c, const Vec& src) {
    if (dst.size() != src.size()) throw DimensionMismatch("vec_axpy");
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < dst.size(); ++i)
        if (sgn(src[i]) != 0) dst[i] += c * src[i];
}

Rat vec_dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vec_dot");
    Rat acc(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
    return acc;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vec_add");
    Vec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vec_sub");
    Vec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

Vec vec_scale(const Rat& c, const Vec& v) {
    Vec out(v.size(), Rat(0));
    if (sgn(c) == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) out[i] = c * v[i];
    return out;
}

std::string vec_str(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += rat_str(v[i]);
    }
    out += ")";
    return out;
}

}  // namespace pstrace
