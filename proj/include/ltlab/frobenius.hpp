#pragma once

#include "ltlab/cyclotomic.hpp"
#include "ltlab/fq.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ltlab {

// g(i, j) = sum over t in F_p^x of T^{i t} * (-omega(t)^{-j}) in
// (Z/p^prec)[T]/Phi_p, with omega the Teichmuller character.
struct GaussSum {
    int64_t p;
    int64_t i, j;
    CyclotomicP value;
};

GaussSum gauss_sum(int64_t p, int64_t i, int64_t j, int prec);

struct StickelbergerRow {
    int64_t i, j;
    int64_t valuation;      // lambda-adic valuation, expected j
    int64_t unit;           // leading unit mod p, expected (-1)^j (j!)^{-1} i^j
    bool ok;
};

// Checks valuation and leading unit of every g(i, j); any mismatch throws
// check_error naming the offending pair.
//
// The unit: expanding zeta^t = (1 - lambda)^t and summing t^{-j} C(t, k)
// over t kills every k < j and leaves -(-1)^j/j! at k = j, so
// g(1, j) = (-1)^j (j!)^{-1} lambda^j mod lambda^{j+1}; substituting
// t -> i^{-1} t shows g(i, j) = omega(i)^j g(1, j). At j = 1 the unit is
// -1 = -j^{-1}, the shape usually quoted; for j >= 2 the factorial form is
// the correct one (checked here for every pair).
std::vector<StickelbergerRow> stickelberger_check(int64_t p, int prec);

// g(i,j) * g(p-i, p-1-j) = p exactly (the two sign normalizations cancel).
void gauss_conjugate_product_check(int64_t p, int prec);

// #X(F_{p^k}) = p * #{x : Tr(x^{p-1}) = 0} + 1
int64_t point_count(int64_t p, int64_t k);

struct Fraction {
    int64_t num = 0;
    int64_t den = 1;

    static Fraction make(int64_t n, int64_t d);
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
    std::string to_string() const;
};

struct LPolynomial {
    int64_t p;
    int64_t g;
    std::vector<int64_t> c;  // c_0 = 1 .. c_{2g}
};

// L(T) from point counts k = 1..g via Newton's identities, completed by the
// functional equation c_{2g-i} = p^{g-i} c_i. Non-integral intermediate
// coefficients abort (they would mean the counts are wrong).
LPolynomial l_polynomial(int64_t p);

struct NewtonPolygon {
    std::vector<std::pair<Fraction, int64_t>> slopes;  // (slope, multiplicity), ascending

    bool operator==(const NewtonPolygon& o) const { return slopes == o.slopes; }
    std::string to_string() const;
};

NewtonPolygon newton_polygon(const LPolynomial& L);

// Slopes of the curve's L-polynomial; verified against {j/(p-1), each with
// multiplicity p-1} before returning. Guarded to p in {3, 5}.
NewtonPolygon zeta_slopes(int64_t p);

// The same multiset read off the Gauss-sum valuations: slope j/(p-1) with
// multiplicity p-1 over i, using the computed valuations.
NewtonPolygon gauss_slope_multiset(int64_t p, int prec);

}  // namespace ltlab
