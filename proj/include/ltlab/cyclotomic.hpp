#pragma once
// (Z/p^prec)[T]/Phi_p(T): truncated cyclotomic integers. lambda := 1 - T is the
// ramified uniformizer, lambda^(p-1) = p * unit (checked at construction).
// lambda-adic valuation works in the lambda-power basis so that each division
// by lambda costs one digit on a single coefficient; valuations are reliable
// below (p-1)*(prec-1).

#include <cstdint>
#include <vector>

#include "ltlab/zmod.hpp"

namespace ltlab {

struct CyclotomicP {
  int64_t p = 0;
  int prec = 0;
  uint64_t mod = 0;
  std::vector<uint64_t> c;  // length p-1: coefficients of 1, T, ..., T^(p-2)

  CyclotomicP() = default;
  CyclotomicP(int64_t p_, int prec_) : p(p_), prec(prec_) {
    mod = pow_u64_checked(uint64_t(p_), unsigned(prec_), "CyclotomicP");
    c.assign(size_t(p_ - 1), 0);
  }

  static CyclotomicP scalar(int64_t p, int prec, int64_t v) {
    CyclotomicP r(p, prec);
    r.c[0] = r.reduce(v);
    return r;
  }
  // T^k reduced mod Phi_p: for k = p-1 use T^(p-1) = -(1 + T + ... + T^(p-2))
  static CyclotomicP zeta_pow(int64_t p, int prec, int64_t k) {
    CyclotomicP r(p, prec);
    k %= p;
    if (k < 0) k += p;
    if (k < p - 1) {
      r.c[size_t(k)] = 1;
    } else {
      for (auto& v : r.c) v = r.mod - 1;
    }
    return r;
  }

  uint64_t reduce(int64_t v) const {
    int64_t r = v % int64_t(mod);
    if (r < 0) r += int64_t(mod);
    return uint64_t(r);
  }

  void check_same(const CyclotomicP& o) const {
    if (p != o.p || prec != o.prec) throw check_error("CyclotomicP: mixed rings");
  }

  CyclotomicP operator+(const CyclotomicP& o) const {
    check_same(o);
    CyclotomicP r = *this;
    for (size_t i = 0; i < c.size(); ++i) {
      r.c[i] += o.c[i];
      if (r.c[i] >= mod) r.c[i] -= mod;
    }
    return r;
  }
  CyclotomicP operator-(const CyclotomicP& o) const {
    check_same(o);
    CyclotomicP r = *this;
    for (size_t i = 0; i < c.size(); ++i)
      r.c[i] = r.c[i] >= o.c[i] ? r.c[i] - o.c[i] : r.c[i] + mod - o.c[i];
    return r;
  }
  CyclotomicP operator*(const CyclotomicP& o) const {
    check_same(o);
    size_t n = c.size();
    std::vector<uint64_t> full(2 * n - 1, 0);
    for (size_t i = 0; i < n; ++i) {
      if (!c[i]) continue;
      for (size_t j = 0; j < n; ++j)
        full[i + j] = (full[i + j] + (unsigned __int128)c[i] * o.c[j]) % mod;
    }
    // T^(p-1+k) = T^k * T^(p-1) = -T^k (1 + ... + T^(p-2)); fold top half down
    CyclotomicP r(p, prec);
    for (size_t i = 0; i < n; ++i) r.c[i] = full[i];
    for (size_t k = 0; k + n < full.size() + 1 && n + k <= 2 * n - 2; ++k) {
      uint64_t t = full[n + k];
      if (!t) continue;
      // subtract t * T^k * (1 + T + ... + T^(p-2)), exponents mod reduction:
      // T^(k+j) for j = 0..p-2; k+j may reach p-2+k < p-1+k, and k <= p-3 so
      // k+j <= 2p-5; exponents >= p-1 wrap via T^(p-1) ... handle by T^p = 1:
      // simplest: exponent e mod p, and e == p-1 contributes -(all)
      for (size_t j = 0; j < n; ++j) {
        size_t e = (k + j) % size_t(p);
        if (e < n) {
          r.c[e] = r.c[e] >= t ? r.c[e] - t : r.c[e] + mod - t;
        } else {  // e == p-1: -T^(p-1) = +(1 + ... + T^(p-2))
          for (size_t l = 0; l < n; ++l) {
            r.c[l] += t;
            if (r.c[l] >= mod) r.c[l] -= mod;
          }
        }
      }
    }
    return r;
  }
  CyclotomicP operator-() const {
    CyclotomicP r = *this;
    for (auto& v : r.c) v = v == 0 ? 0 : mod - v;
    return r;
  }
  bool operator==(const CyclotomicP& o) const {
    return p == o.p && prec == o.prec && c == o.c;
  }
  bool operator!=(const CyclotomicP& o) const { return !(*this == o); }

  bool is_zero() const {
    for (auto v : c)
      if (v) return false;
    return true;
  }

  // ring automorphism T -> T^(-1) = T^(p-1)
  CyclotomicP conj() const {
    CyclotomicP r(p, prec);
    for (size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      int64_t e = (int64_t(p) - int64_t(i)) % p;  // T^i -> T^(p-i)
      CyclotomicP t = zeta_pow(p, prec, e);
      for (size_t j = 0; j < c.size(); ++j)
        r.c[j] = (r.c[j] + (unsigned __int128)c[i] * t.c[j]) % mod;
    }
    return r;
  }

  // augmentation T -> 1
  uint64_t eval_at_1() const {
    unsigned __int128 s = 0;
    for (auto v : c) s += v;
    return uint64_t(s % mod);
  }

  // coefficients in the basis 1, lambda, ..., lambda^(p-2) (exact base change)
  std::vector<uint64_t> lambda_basis() const {
    // Horner in T = 1 - lambda: treat coefficients as polys in lambda
    std::vector<uint64_t> acc(c.size(), 0);
    for (int i = int(c.size()) - 1; i >= 0; --i) {
      // acc = acc * (1 - lambda) + c[i]
      std::vector<uint64_t> next(c.size(), 0);
      for (size_t j = 0; j < c.size(); ++j) {
        if (!acc[j]) continue;
        next[j] = (next[j] + acc[j]) % mod;
        if (j + 1 < c.size())
          next[j + 1] = (next[j + 1] + mod - acc[j]) % mod;
        // lambda^(p-1) terms cannot arise: degree in lambda stays < p-1
      }
      next[0] = (next[0] + c[size_t(i)]) % mod;
      acc = std::move(next);
    }
    return acc;
  }

  static CyclotomicP from_lambda_basis(int64_t p, int prec,
                                       const std::vector<uint64_t>& l) {
    // lambda^j = (1 - T)^j expanded by binomials
    CyclotomicP r(p, prec);
    CyclotomicP lam = scalar(p, prec, 1) - zeta_pow(p, prec, 1);
    CyclotomicP pw = scalar(p, prec, 1);
    for (size_t j = 0; j < l.size(); ++j) {
      if (l[j]) {
        for (size_t i = 0; i < r.c.size(); ++i)
          r.c[i] = uint64_t((r.c[i] + (unsigned __int128)l[j] * pw.c[i]) % r.mod);
      }
      pw = pw * lam;
    }
    return r;
  }
};

// the unit u with lambda^(p-1) = p*u, plus w := u^(-1) * lambda^(p-2) used as
// the feedback term when dividing by lambda
struct LambdaContext {
  CyclotomicP u;
  std::vector<uint64_t> w_lambda;  // lambda-basis coefficients of u^(-1)*lambda^(p-2)

  explicit LambdaContext(int64_t p, int prec) {
    CyclotomicP lam = CyclotomicP::scalar(p, prec, 1) - CyclotomicP::zeta_pow(p, prec, 1);
    CyclotomicP pw = CyclotomicP::scalar(p, prec, 1);
    for (int i = 0; i < int(p) - 1; ++i) pw = pw * lam;
    // coefficientwise divisible by p
    CyclotomicP uu(p, prec);
    for (size_t i = 0; i < pw.c.size(); ++i) {
      if (pw.c[i] % uint64_t(p) != 0)
        throw check_error("lambda^(p-1) not divisible by p: ring is broken");
      uu.c[i] = pw.c[i] / uint64_t(p);
    }
    if (uu.eval_at_1() % uint64_t(p) == 0)
      throw check_error("lambda^(p-1)/p is not a unit");
    u = uu;
    // invert the unit by Hensel: v <- v(2 - u v), starting from the residue inverse
    CyclotomicP v = CyclotomicP::scalar(p, prec, int64_t(invmod_u64(uu.eval_at_1() % uint64_t(p), uint64_t(p))));
    CyclotomicP two = CyclotomicP::scalar(p, prec, 2);
    for (int it = 0; it < 64; ++it) {
      CyclotomicP uv = u * v;
      if (uv == CyclotomicP::scalar(p, prec, 1)) break;
      v = v * (two - uv);
      if (it == 63) throw check_error("unit inversion did not converge");
    }
    CyclotomicP w = v;
    for (int i = 0; i < int(p) - 2; ++i) w = w * lam;
    w_lambda = w.lambda_basis();
  }
};

// exact lambda-adic valuation with the leading unit mod p.
// returns {valuation, unit mod p}; throws when precision is exhausted first.
inline std::pair<int, int64_t> lambda_valuation(const CyclotomicP& x) {
  if (x.is_zero()) throw check_error("lambda_valuation of zero");
  int64_t p = x.p;
  int prec = x.prec;
  uint64_t mod = x.mod;
  LambdaContext lc(p, prec);
  std::vector<uint64_t> l = x.lambda_basis();
  int limit = int(p - 1) * (prec - 1);
  for (int v = 0; v <= limit; ++v) {
    uint64_t c0 = l[0] % uint64_t(p);
    if (c0 != 0) return {v, int64_t(c0)};
    // divide by lambda: shift down, feed (l0/p) * u^(-1) lambda^(p-2) back in
    uint64_t y = l[0] / uint64_t(p);  // exact in the stored representative
    for (size_t i = 0; i + 1 < l.size(); ++i) l[i] = l[i + 1];
    l.back() = 0;
    if (y) {
      for (size_t i = 0; i < l.size(); ++i)
        l[i] = (l[i] + (unsigned __int128)y * lc.w_lambda[i]) % mod;
    }
  }
  throw check_error("lambda_valuation: precision exhausted (valuation >= (p-1)(prec-1))");
}

}  // namespace ltlab
