#pragma once

#include "ltlab/series.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace ltlab {

// W(Y) solving W = Y^p + u_1 W Y^{p-1} + ... + u_{p-2} W^{p-2} Y^2 + b W^{p-1} Y
// with b = -(1 + sum u_i), the local expansion of x^{p-1} at the point at
// infinity of the universal curve. udeg = 0 means the special fiber (no u
// variables, b = -1).
struct LocalSolution {
    int64_t p;
    int udeg, ydeg;
    std::shared_ptr<const SeriesRing> ring;  // vars Y, u1..u_{p-2}
    Series W;
    Series u;  // W / Y^p, a unit series with constant term 1
    int rounds;
};

LocalSolution solve_local_equation(int64_t p, int prec, int udeg, int ydeg);

// density of dy/((1-p)x) in the coordinate Y: (W - Y W')/W normalized by the
// unit 1-p so the constant term is exactly 1; log is its antiderivative.
// W is solved with a Y-margin of p (the density coefficient at Y^k depends
// on W through Y^{k+p}), so `local` lives in a slightly larger ring than
// density and log do.
//
// `prec` is the guaranteed precision: the rings carry the padded working
// precision prec + floor(log_p ydeg) + 1, so everything derived from log
// (whose antiderivative denominators reach p^floor(log_p ydeg)) stays exact
// mod p^prec.
struct InvariantDifferential {
    int prec;
    LocalSolution local;
    std::shared_ptr<const SeriesRing> ring;  // restricted to the requested ydeg
    Series density;
    Series log;  // carries a denominator shift
};

InvariantDifferential invariant_differential(int64_t p, int prec, int udeg, int ydeg);

// at u = 0 the density is a tau-eigenvector, so its support lies in (p-1)^2 Z
void special_density_support_check(const InvariantDifferential& diff);

// log coefficients m_j at Y^{p^j} and the Hazewinkel coefficients
// v_j = p m_j - sum_{i<j} m_i v_{j-i}^{p^i} (integral, asserted)
struct PTypicalData {
    std::vector<Series> m;  // index 1..jmax; [0] unused
    std::vector<Series> v;
};

PTypicalData hazewinkel_data(const InvariantDifferential& diff, int jmax);

// keep only the x^{p^j} coefficients of a univariate log
Series p_typicalize(const Series& log1);

// The recognition data: a_j is the density coefficient at Y^{j(p-1)}
// (a_0 = p). Full rank p-2 of the u-linear parts mod p means
// (p, a_1, ..., a_{p-2}) generates the maximal ideal (p, u_1, ..., u_{p-2}).
// The u_i-linear part of a_j is supported at i = j with value j (u_i-linear
// density terms live at exponents i(p-1) mod (p-1)^2 only), which is also
// asserted. ptypical_consistent records the same statement for the
// p-typical coordinates: each Hazewinkel v_j is, mod (p, degree 2 in u),
// a unit multiple of u_j alone, so the v's generate the maximal ideal too.
struct RecognitionResult {
    int64_t p;
    int prec, udeg, ydeg;
    std::vector<std::vector<int64_t>> a_linear;  // a_linear[j-1][i-1], mod p
    std::vector<std::vector<int64_t>> v_linear;  // same shape, mod p
    int rank;
    bool ptypical_consistent;
    bool pass;
};

RecognitionResult recognition_check(int64_t p, int prec = 0, int udeg = 1, int ydeg = 0);

// height of the special fiber: valuations of v_1..v_{p-1}; expects
// v_j = 0 mod p below j = p-1 and v_{p-1} a unit. For p <= 5 the p-series
// [p](x) = exp(p log x) is also computed directly and its first nonzero
// term mod p (exponent p^{p-1}, coefficient v_{p-1}) is checked.
struct HeightResult {
    int64_t p;
    int prec, ydeg;
    std::vector<int> v_valuation;  // index 1..p-1; [0] unused
    int height;
    bool direct_pseries_checked;
    int64_t leading_coeff_mod_p;  // 0 when not directly checked
    bool pass;
};

HeightResult height_check(int64_t p, int prec = 0, int ydeg = 0, bool allow_large = false);

// F(x, y) with log F(x, y) = log x + log y, solved by Newton iteration with
// per-round truncation and renormalization; integrality is asserted, as are
// F(x, 0) = x, symmetry, and the exact log round-trip.
//
// A log with denominator shift s only determines F mod p^{prec(log) - s}, so
// `prec` here is that difference, `ring1`/`ring` are clean rings at that
// precision, and F is exact in them. `log1` keeps the construction ring (and
// its full precision) so later solves against it lose nothing.
struct FormalGroupLaw {
    int64_t p;
    int prec, deg;
    std::shared_ptr<const SeriesRing> ring1;  // var x
    std::shared_ptr<const SeriesRing> ring;   // vars x, y
    Series log1;
    Series F;
    bool p_typical;  // log supported on p-power exponents only
};

FormalGroupLaw fgl_from_log(const Series& log_univar, int deg);

// F(F(x,y),z) = F(x,F(y,z)) in a 3-variable ring truncated at total degree
// `deg` (0 picks min(fgl.deg, 2p+8)); throws on failure
void associativity_check(const FormalGroupLaw& fgl, int deg = 0);

// [p] via exp(p log x) against the p-fold formal sum x +_F ... +_F x
void p_fold_sum_check(const FormalGroupLaw& fgl);

// the strict isomorphism phi with log_ptypical(phi(x)) = log(x) carries F to
// the p-typical law (phi is computed by Newton, never exp itself)
void p_typical_strict_iso_check(const FormalGroupLaw& fgl, int deg = 0);

// Horner evaluation of a univariate polynomial (possibly from another ring,
// denominator shift carried over) at a series with zero constant term
Series apply_univariate(const Series& poly1, const Series& z);

// F2 is a shift-0 series in a 2-variable ring; returns F2(A, B) in the ring
// of A and B
Series compose2(const Series& F2, const Series& A, const Series& B);

// z with apply_univariate(log1, z) = target up to total degree final_deg,
// Newton from z0 (valid to degree 1), truncating each round to its valid
// degree and renormalizing to denominator shift 0; non-integral iterates
// abort. The result is exact mod p^{prec - shift(log1)}; callers reduce.
Series solve_log_equation(const Series& log1, const Series& target, Series z0,
                          int final_deg);

}  // namespace ltlab
