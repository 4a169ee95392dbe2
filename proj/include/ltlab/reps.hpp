#pragma once

#include "ltlab/context.hpp"
#include "ltlab/intmat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ltlab {

// Element of (Z/p^prec)[C_n], coefficients indexed by the power of the
// generator g. Multiplication is cyclic convolution.
struct GroupRingElement {
    int64_t n;
    int64_t p;
    int prec;
    uint64_t mod;
    std::vector<uint64_t> c;

    static GroupRingElement zero(int64_t n, int64_t p, int prec);
    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator*(const GroupRingElement& o) const;
    bool operator==(const GroupRingElement& o) const { return c == o.c; }
    uint64_t augmentation() const;
    std::string to_string() const;
};

struct Idempotent {
    int64_t chi;  // character index mod n
    GroupRingElement e;
};

// The n orthogonal idempotents of (Z/p^prec)[C_n] for n | p-1, built from
// Teichmuller-lifted characters. Orthogonality, idempotency and completeness
// are verified exactly; a failure throws check_error.
std::vector<Idempotent> central_idempotents(int64_t p, int64_t n, int prec);

// Standard (n-1)-dimensional representation of Sigma_n on y_0..y_{n-2} with
// y_{n-1} = -(y_0+...+y_{n-2}).
IntMatrix standard_rep_matrix(int64_t n, const std::vector<int64_t>& perm);

struct StandardRep {
    int64_t n;
    IntMatrix transposition;  // (0 1)
    IntMatrix cycle;          // (0 1 ... n-1)
};
StandardRep standard_rep(int64_t n);

// The element y = sum_k zeta^k t^{a^k} of the reduced regular representation
// and the matrix [y, sigma y, ..., sigma^{p-2} y] in the basis {t^i - 1}.
// The determinant must be a unit mod p, and the matrix must intertwine the
// standard-representation p-cycle with multiplication by t.
struct GeneratorCheck {
    std::vector<std::vector<uint64_t>> matrix;  // entries mod p^prec, row-major
    uint64_t det;                               // determinant mod p^prec
    bool det_unit;
    bool intertwines;
    bool augmentation_zero;
};
GeneratorCheck group_ring_generator_check(const PrimeContext& ctx);

// Mod-p companion: ybar = sum_{i in F_p^x} i^{-1} t^i in F_p[t]/(t^p - 1).
// Verifies ybar = -(t-1) modulo (t-1)^2 and that the rotations {t^k ybar}
// span the full augmentation ideal.
struct ModpGeneratorCheck {
    std::vector<int64_t> ybar;  // coefficient of t^i, i = 0..p-1
    bool augmentation_zero;
    bool leading_congruence;
    int64_t span_dimension;     // expected p-1
    bool generates_augmentation_ideal;
};
ModpGeneratorCheck group_ring_generator_modp_check(int64_t p);

// Degree-w monomials in nvars variables, enumerated in lexicographic order of
// the exponent vector so all downstream indexing is deterministic.
struct Monomials {
    int64_t nvars = 0;
    int64_t w = 0;
    std::vector<std::vector<int32_t>> exps;

    int64_t dim() const { return int64_t(exps.size()); }
    int64_t index(const std::vector<int32_t>& e) const;  // binary search
};
Monomials enumerate_monomials(int64_t nvars, int64_t w, int64_t dim_guard);

// Column-sparse matrix over Z/m, m < 2^31.
struct SparseMat {
    int64_t rows = 0, cols = 0;
    uint64_t mod = 0;
    std::vector<std::vector<std::pair<int32_t, uint32_t>>> col;

    static SparseMat zero(int64_t rows, int64_t cols, uint64_t mod);
    std::vector<uint32_t> apply(const std::vector<uint32_t>& v) const;
    void add_entry(int64_t r, int64_t c, uint64_t v);
};

// One graded piece of A = Sym(rho) (p variables, sigma and tau are monomial
// permutations) or Lambda = A/s_1 (p-1 variables, the image of y_{p-1} is
// -(y_0+...+y_{p-2}) and matrices expand multinomially). The full tau action
// is eta^w times the stored integer part.
struct GradedPiece {
    int64_t p = 0;
    int prec = 0;
    uint64_t mod = 0;
    int64_t w = 0;
    bool reduced = false;  // true for Lambda, false for A
    Monomials basis;
    SparseMat sigma;
    SparseMat tau_int;
};

GradedPiece lambda_piece(const PrimeContext& ctx, int prec, int64_t w, int64_t dim_guard);
GradedPiece sym_piece(const PrimeContext& ctx, int prec, int64_t w, int64_t dim_guard);

// sigma^p = 1, tau sigma tau^{-1} = sigma^a and tau_int^{(p-1)^2} = 1,
// checked on every basis vector when dim <= 600 and on 20 seeded pseudorandom
// vectors otherwise. Throws check_error on any failure.
void verify_piece_relations(const GradedPiece& g, int64_t a, uint64_t seed);

// Expansion of a monomial product y^e (exponents over the full p variables,
// y_{p-1} allowed) into the Lambda basis of degree sum(e). Used for d-powers
// and multiplication tests.
std::vector<uint32_t> lambda_expand(const GradedPiece& g, const std::vector<int32_t>& full_exps);

}  // namespace ltlab
