#pragma once
// F_{p^m} as F_p[x]/(f) with f the smallest monic irreducible of degree m
// (coefficients read as a base-p integer, so the choice is deterministic).
// q = p^m must fit in uint64 (largest use here: 13^12 ~ 2.3e13).

#include <cstdint>
#include <memory>
#include <vector>

#include "ltlab/zmod.hpp"

namespace ltlab {

struct FqField;

struct FqElement {
  const FqField* F = nullptr;
  std::vector<int64_t> c;  // length m, entries reduced mod p

  bool is_zero() const;
  bool in_prime_field() const;  // all coefficients of degree >= 1 vanish
  bool operator==(const FqElement& o) const { return F == o.F && c == o.c; }
  bool operator!=(const FqElement& o) const { return !(*this == o); }

  FqElement operator+(const FqElement& o) const;
  FqElement operator-(const FqElement& o) const;
  FqElement operator*(const FqElement& o) const;
  FqElement operator-() const;
  FqElement pow(uint64_t e) const;
  FqElement inv() const;
};

struct FqField {
  int64_t p = 0;
  int m = 0;
  uint64_t q = 0;                      // p^m
  std::vector<int64_t> modulus;        // c_0..c_{m-1} of f = x^m + sum c_i x^i
  std::vector<uint64_t> q1_primes;     // distinct prime factors of q-1
  FqElement gen;                       // multiplicative order q-1 (if requested)

  static std::shared_ptr<const FqField> make(int64_t p, int m, bool need_generator);

  FqElement zero() const;
  FqElement one() const;
  FqElement scalar(int64_t a) const;   // image of a in F_p <= F_q
  FqElement x() const;                 // the class of x
  FqElement from_digits(uint64_t n) const;  // base-p digits of n as coefficients
  uint64_t multiplicative_order(const FqElement& a) const;
  int64_t trace_to_prime_field(const FqElement& a) const;  // sum of a^(p^j)
};

// trial-division factorization of n (distinct primes), n up to ~2^52 here
std::vector<uint64_t> distinct_prime_factors(uint64_t n);

}  // namespace ltlab
