#pragma once

#include "ltlab/context.hpp"

#include <string>
#include <vector>

namespace ltlab {

// The projective closure of y^p - y = x^{p-1} in P^2 has a single point at
// infinity, [1:0:0]. Points are stored with the last nonzero coordinate
// normalized to 1 so they compare canonically.
struct ProjPoint {
    FqElement X, Y, Z;

    static ProjPoint make(FqElement X, FqElement Y, FqElement Z);
    bool operator==(const ProjPoint& o) const { return X == o.X && Y == o.Y && Z == o.Z; }
    std::string to_string() const;
};

struct CurveModel {
    const PrimeContext* ctx;

    explicit CurveModel(const PrimeContext& c) : ctx(&c) {}
    int64_t p() const { return ctx->p; }
    int64_t degree() const { return ctx->p; }          // total degree of the plane model
    int64_t genus() const { return ctx->genus(); }     // (p-1)(p-2)/2
    std::string equation_string() const;

    // True iff [X:Y:Z] satisfies the homogenized equation y^p - y z^{p-1} = x^{p-1} z.
    bool contains(const ProjPoint& P) const;
};

// Affine substitution rule x -> x_scale * x, y -> y_scale * y + y_shift.
// Every element of the automorphism group we care about has this shape, and
// the shape is closed under composition.
struct CurveAutomorphism {
    FqElement x_scale;
    FqElement y_scale;
    FqElement y_shift;
    std::string label;

    bool operator==(const CurveAutomorphism& o) const {
        return x_scale == o.x_scale && y_scale == o.y_scale && y_shift == o.y_shift;
    }
};

CurveAutomorphism identity_automorphism(const PrimeContext& ctx);
// a after b: (a*b)(P) = a(b(P)) on points.
CurveAutomorphism compose(const CurveAutomorphism& a, const CurveAutomorphism& b);
CurveAutomorphism inverse(const CurveAutomorphism& a);
CurveAutomorphism automorphism_power(const CurveAutomorphism& a, int64_t k);
ProjPoint apply(const CurveAutomorphism& a, const ProjPoint& P);

// Symbolic check: substituting the rule into y^p - y - x^{p-1} and reducing
// y-degrees with y^p = y + x^{p-1} must give the zero polynomial over F_q.
bool preserves_curve(const PrimeContext& ctx, const CurveAutomorphism& a);

// Multiplicative order, capped at p(p-1)^2 (throws check_error past the cap).
int64_t automorphism_order(const PrimeContext& ctx, const CurveAutomorphism& a);

struct AutomorphismGroup {
    CurveAutomorphism sigma;      // (x, y) -> (x, y+1)
    CurveAutomorphism tau;        // (x, y) -> (zeta^p x, zeta^{p-1} y)
    int64_t a;                    // conjugation exponent: tau sigma tau^{-1} = sigma^a
    int64_t order_sigma;
    int64_t order_tau;
    bool relations_verified;
};

// Builds sigma and tau, verifies both preserve the equation symbolically,
// checks the orders p and (p-1)^2, and the relation tau sigma tau^{-1} =
// sigma^a with a = zeta^{p-1} read in F_p. Any failure throws check_error.
AutomorphismGroup automorphism_group(const PrimeContext& ctx);

enum class Cover { p_x, p_y };

struct RamificationDivisor {
    Cover cover;
    int64_t cover_degree;
    bool tame;
    std::vector<std::pair<ProjPoint, int64_t>> points;

    int64_t degree() const;
};

// Support is found from fixed points of the acting subgroup, coefficients
// from stabilizer orders (tame) or the conductor value (m+1)(p-1) with
// m = p-1 (wild). The Riemann-Hurwitz degree identity against g_Y = 0 is
// checked exactly and a mismatch throws check_error.
RamificationDivisor ramification(const PrimeContext& ctx, Cover cover);

struct BranchPermutations {
    std::vector<int64_t> perm_sigma;  // i -> i+1 on the affine branch points F_p
    std::vector<int64_t> perm_tau;    // i -> a*i
    int64_t a;
    int64_t group_order;              // size of the subgroup of Sigma_p they generate
};

// The permutation action of G'/C_{p-1} on the p affine branch points of p_y.
// Verifies the generated subgroup has order p(p-1) and that the relations
// s^p = t^{p-1} = 1, t s t^{-1} = s^a hold, so the homomorphism into Sigma_p
// is injective.
BranchPermutations branch_permutations(const PrimeContext& ctx);

std::vector<std::vector<int64_t>> permutation_cycles(const std::vector<int64_t>& perm);
std::vector<int64_t> cycle_type(const std::vector<int64_t>& perm);
std::string cycle_notation(const std::vector<int64_t>& perm);

struct DifferentialBasisElement {
    int64_t i, j;           // x^i y^j dy / x^{p-2}, 0 <= i+j <= p-3
    int64_t char_exponent;  // k in [0, p-1): the C_{p-1} generator scales by eta^{-k}
    int64_t tau_exponent;   // e in [0, (p-1)^2): tau^* scales by zeta^e
};

// Holomorphic differential basis x^i y^j omega with omega = dy/x^{p-2},
// eigenvalues computed by substitution. Verifies the character groups have
// sizes exactly 1..p-2 with the trivial character absent, and that the unique
// char_exponent-1 element is (p-3, 0), a multiple of dy/x.
std::vector<DifferentialBasisElement> differential_basis(const PrimeContext& ctx);

// 3 g_Y - 3 + |B| for the C_{p-1} quotient: g_Y = 0 and |B| = p+1 gives p-2.
int64_t deformation_dimension(const PrimeContext& ctx, const std::string& subgroup);

}  // namespace ltlab
