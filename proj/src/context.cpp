#include "ltlab/context.hpp"

namespace ltlab {

bool is_small_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Zmod PrimeContext::zp(int64_t v) const { return Zmod(p, prec, v); }

Zmod PrimeContext::teich(int64_t t) const { return teichmuller(p, t, prec); }

std::shared_ptr<const PrimeContext> make_prime_context(int64_t p, int prec) {
  if (!is_small_prime(p)) throw usage_error("p must be prime");
  if (p == 2) throw usage_error("p = 2 is rejected: the construction assumes p odd");
  if (prec < 2)
    throw usage_error("prec must be >= 2: mod-p-only computation is insufficient");

  auto ctx = std::make_shared<PrimeContext>();
  ctx->p = p;
  ctx->prec = prec;
  ctx->F = FqField::make(p, int(p - 1), true);
  ctx->q = ctx->F->q;

  uint64_t ord = uint64_t((p - 1) * (p - 1));
  if ((ctx->q - 1) % ord != 0)
    throw check_error("(p-1)^2 does not divide q-1");  // impossible for q = p^{p-1}
  FqElement g = ctx->F->gen;
  ctx->zeta = g.pow((ctx->q - 1) / ord);
  if (ctx->F->multiplicative_order(ctx->zeta) != ord)
    throw check_error("zeta does not have exact order (p-1)^2");

  FqElement ap = ctx->zeta.pow(uint64_t(p - 1));
  if (!ap.in_prime_field())
    throw check_error("zeta^{p-1} does not lie in F_p");
  ctx->a = ap.c[0];
  if (!is_primitive_root(ctx->a, p))
    throw check_error("zeta^{p-1} is not a primitive root mod p");
  return ctx;
}

}  // namespace ltlab
