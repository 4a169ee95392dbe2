#include "ltlab/fq.hpp"

#include <algorithm>

namespace ltlab {

namespace {

// dense poly arithmetic over F_p, no leading-zero trimming guarantees needed
using Poly = std::vector<int64_t>;

int deg(const Poly& a) {
  for (int i = int(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
  // f monic of degree m given by low coefficients c_0..c_{m-1}
  int m = int(f.size());
  Poly r(2 * m - 1, 0);
  for (int i = 0; i < m; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < m; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  for (int i = 2 * m - 2; i >= m; --i) {
    int64_t t = r[i] % p;
    if (!t) continue;
    r[i] = 0;
    for (int j = 0; j < m; ++j)
      r[i - m + j] = ((r[i - m + j] - t * f[j]) % p + p) % p;
  }
  r.resize(m);
  for (auto& v : r) v = ((v % p) + p) % p;
  return r;
}

Poly poly_powmod(Poly a, uint64_t e, const Poly& f, int64_t p) {
  int m = int(f.size());
  Poly r(m, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& b, int64_t p) {
  int db = deg(b);
  int64_t lead_inv = invmod_u64(uint64_t(((b[db] % p) + p) % p), uint64_t(p));
  while (deg(a) >= db) {
    int da = deg(a);
    int64_t c = (a[da] * lead_inv) % p;
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = ((a[da - db + j] - c * b[j]) % p + p) % p;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
  while (deg(b) >= 0) {
    Poly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

bool is_irreducible(const Poly& low, int64_t p) {
  // low = c_0..c_{m-1}, f = x^m + sum c_i x^i
  int m = int(low.size());
  Poly x(m, 0);
  if (m == 1) return true;
  x[1 % m] = 1;
  // x^(p^m) == x mod f
  Poly t = x;
  for (int i = 0; i < m; ++i) t = poly_powmod(t, uint64_t(p), low, p);
  if (t != x) return false;
  // gcd(x^(p^(m/l)) - x, f) == 1 for every prime l | m
  for (uint64_t l : distinct_prime_factors(uint64_t(m))) {
    Poly s = x;
    for (int i = 0; i < m / int(l); ++i) s = poly_powmod(s, uint64_t(p), low, p);
    Poly d = s;
    d[1] = ((d[1] - 1) % p + p) % p;  // s - x
    Poly full(m + 1, 0);
    for (int i = 0; i < m; ++i) full[i] = low[i];
    full[m] = 1;
    Poly g = poly_gcd(full, d, p);
    if (deg(g) > 0) return false;
  }
  return true;
}

}  // namespace

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool FqElement::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](int64_t v) { return v == 0; });
}

bool FqElement::in_prime_field() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

FqElement FqElement::operator+(const FqElement& o) const {
  if (F != o.F) throw check_error("FqElement: mixed fields");
  FqElement r = *this;
  for (int i = 0; i < F->m; ++i) r.c[i] = (r.c[i] + o.c[i]) % F->p;
  return r;
}

FqElement FqElement::operator-(const FqElement& o) const {
  if (F != o.F) throw check_error("FqElement: mixed fields");
  FqElement r = *this;
  for (int i = 0; i < F->m; ++i) r.c[i] = ((r.c[i] - o.c[i]) % F->p + F->p) % F->p;
  return r;
}

FqElement FqElement::operator-() const {
  FqElement r = *this;
  for (auto& v : r.c) v = (F->p - v) % F->p;
  return r;
}

FqElement FqElement::operator*(const FqElement& o) const {
  if (F != o.F) throw check_error("FqElement: mixed fields");
  FqElement r = *this;
  r.c = poly_mulmod(c, o.c, F->modulus, F->p);
  return r;
}

FqElement FqElement::pow(uint64_t e) const {
  FqElement r = *this;
  r.c = poly_powmod(c, e, F->modulus, F->p);
  return r;
}

FqElement FqElement::inv() const {
  if (is_zero()) throw check_error("FqElement::inv: zero");
  return pow(F->q - 2);
}

FqElement FqField::zero() const {
  FqElement e;
  e.F = this;
  e.c.assign(size_t(m), 0);
  return e;
}

FqElement FqField::one() const { return scalar(1); }

FqElement FqField::scalar(int64_t a) const {
  FqElement e = zero();
  e.c[0] = ((a % p) + p) % p;
  return e;
}

FqElement FqField::x() const {
  FqElement e = zero();
  if (m == 1)
    e.c[0] = ((-modulus[0]) % p + p) % p;  // degenerate: x is a scalar
  else
    e.c[1] = 1;
  return e;
}

FqElement FqField::from_digits(uint64_t n) const {
  FqElement e = zero();
  for (int i = 0; i < m && n; ++i) {
    e.c[i] = int64_t(n % uint64_t(p));
    n /= uint64_t(p);
  }
  return e;
}

uint64_t FqField::multiplicative_order(const FqElement& a) const {
  if (a.is_zero()) throw check_error("multiplicative_order of zero");
  uint64_t o = q - 1;
  for (uint64_t l : q1_primes)
    while (o % l == 0 && a.pow(o / l) == one()) o /= l;
  if (a.pow(o) != one()) throw check_error("multiplicative_order: order does not divide q-1");
  return o;
}

int64_t FqField::trace_to_prime_field(const FqElement& a) const {
  FqElement s = zero(), t = a;
  for (int j = 0; j < m; ++j) {
    s = s + t;
    t = t.pow(uint64_t(p));
  }
  if (!s.in_prime_field()) throw check_error("trace landed outside F_p");
  return s.c[0];
}

std::shared_ptr<const FqField> FqField::make(int64_t p, int m, bool need_generator) {
  if (p < 3 || m < 1) throw usage_error("FqField: need odd prime p and m >= 1");
  auto F = std::make_shared<FqField>();
  F->p = p;
  F->m = m;
  F->q = pow_u64_checked(uint64_t(p), unsigned(m), "FqField");

  // smallest irreducible: scan coefficient tuples by their base-p integer value
  uint64_t pm = F->q;
  bool found = false;
  for (uint64_t n = 0; n < pm; ++n) {
    Poly low(size_t(m), 0);
    uint64_t t = n;
    for (int i = 0; i < m; ++i) {
      low[i] = int64_t(t % uint64_t(p));
      t /= uint64_t(p);
    }
    if (is_irreducible(low, p)) {
      F->modulus = low;
      found = true;
      break;
    }
  }
  if (!found) throw check_error("FqField: no irreducible found (impossible)");

  F->q1_primes = distinct_prime_factors(F->q - 1);
  if (need_generator) {
    for (uint64_t n = 2; n < pm; ++n) {
      FqElement cand = F->from_digits(n);
      cand.F = F.get();
      bool ok = true;
      for (uint64_t l : F->q1_primes)
        if (cand.pow((F->q - 1) / l) == F->one()) { ok = false; break; }
      if (ok) {
        F->gen = cand;
        break;
      }
    }
    if (F->gen.c.empty()) throw check_error("FqField: no generator found (impossible)");
    if (F->multiplicative_order(F->gen) != F->q - 1)
      throw check_error("FqField: generator order check failed");
  }
  return F;
}

}  // namespace ltlab
