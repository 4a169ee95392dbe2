#pragma once

#include <cstdint>
#include <memory>

#include "ltlab/fq.hpp"
#include "ltlab/zmod.hpp"

namespace ltlab {

// Shared arithmetic context: the odd prime p, the working precision for
// Z/p^prec, the field F_q with q = p^{p-1}, a generator-derived root of unity
// zeta of exact order (p-1)^2, and the induced primitive root a mod p.
struct PrimeContext {
  int64_t p;
  int prec;
  uint64_t q;
  std::shared_ptr<const FqField> F;
  FqElement zeta;  // order (p-1)^2 in F_q
  int64_t a;       // zeta^{p-1} read in F_p; primitive root mod p

  int64_t genus() const { return (p - 1) * (p - 2) / 2; }
  FqElement eta() const { return zeta; }  // the scalar eta of the tau action
  Zmod zp(int64_t v) const;               // value in Z/p^prec
  Zmod teich(int64_t t) const;            // Teichmuller lift of t mod p
};

std::shared_ptr<const PrimeContext> make_prime_context(int64_t p, int prec);

bool is_small_prime(int64_t n);

}  // namespace ltlab
