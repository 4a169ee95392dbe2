#pragma once
// Arithmetic in Z/p^prec for odd primes p, with p^prec kept below 2^63 so that
// products fit in __int128. Everything downstream (cyclotomic ring, series,
// p-adic linear algebra) builds on this.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltlab {

// error taxonomy, mapped to process exit codes by the cli:
// check_error -> 1 (a mathematical assertion failed)
// usage_error -> 2 (bad arguments / empty suite)
// guard_error -> 3 (size or feasibility guard tripped)
struct check_error : std::runtime_error {
  explicit check_error(const std::string& m) : std::runtime_error(m) {}
};
struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& m) : std::runtime_error(m) {}
};

inline uint64_t pow_u64_checked(uint64_t b, unsigned e, const char* what) {
  uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (uint64_t(1) << 62) / b)
      throw guard_error(std::string(what) + ": modulus p^prec exceeds 2^62");
    r *= b;
  }
  return r;
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return uint64_t((unsigned __int128)a * b % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// extended gcd inverse; m need not be prime, a must be a unit
inline uint64_t invmod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = int64_t(m), nr = int64_t(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw check_error("invmod: not a unit");
  if (t < 0) t += int64_t(m);
  return uint64_t(t);
}

// value in Z/p^prec; carries its modulus so mixed-modulus bugs fail loudly
struct Zmod {
  int64_t p = 0;
  int prec = 0;
  uint64_t mod = 0;
  uint64_t value = 0;

  Zmod() = default;
  Zmod(int64_t p_, int prec_, int64_t v) : p(p_), prec(prec_) {
    mod = pow_u64_checked(uint64_t(p_), unsigned(prec_), "Zmod");
    int64_t r = v % int64_t(mod);
    if (r < 0) r += int64_t(mod);
    value = uint64_t(r);
  }

  void check_same(const Zmod& o) const {
    if (p != o.p || prec != o.prec)
      throw check_error("Zmod: mixed moduli");
  }

  Zmod operator+(const Zmod& o) const {
    check_same(o);
    Zmod r = *this;
    r.value = value + o.value;
    if (r.value >= mod) r.value -= mod;
    return r;
  }
  Zmod operator-(const Zmod& o) const {
    check_same(o);
    Zmod r = *this;
    r.value = value >= o.value ? value - o.value : value + mod - o.value;
    return r;
  }
  Zmod operator*(const Zmod& o) const {
    check_same(o);
    Zmod r = *this;
    r.value = mulmod_u64(value, o.value, mod);
    return r;
  }
  Zmod operator-() const {
    Zmod r = *this;
    r.value = value == 0 ? 0 : mod - value;
    return r;
  }
  bool operator==(const Zmod& o) const {
    return p == o.p && prec == o.prec && value == o.value;
  }
  bool operator!=(const Zmod& o) const { return !(*this == o); }

  bool is_unit() const { return value % uint64_t(p) != 0; }

  Zmod inv() const {
    if (!is_unit()) throw check_error("Zmod::inv: non-unit");
    Zmod r = *this;
    r.value = invmod_u64(value, mod);
    return r;
  }
  Zmod pow(uint64_t e) const {
    Zmod r = *this;
    r.value = powmod_u64(value, e, mod);
    return r;
  }
  // exact division by p; the quotient is only determined mod p^(prec-1), the
  // caller is responsible for precision bookkeeping (see series denomShift)
  Zmod div_p_exact() const {
    if (value % uint64_t(p) != 0) throw check_error("Zmod: inexact division by p");
    Zmod r = *this;
    r.value = value / uint64_t(p);
    r.mod = mod / uint64_t(p);
    r.prec = prec - 1;
    return r;
  }
  int64_t lift_signed() const {
    // representative in (-mod/2, mod/2], convenient for printing
    return value * 2 > mod ? int64_t(value) - int64_t(mod) : int64_t(value);
  }
};

// Teichmuller lift: the unique (p-1)-st root of unity congruent to t mod p,
// computed by iterating x -> x^p (converges in <= prec steps)
inline Zmod teichmuller(int64_t p, int64_t t, int prec) {
  if (t % p == 0) throw check_error("teichmuller: t must be a unit mod p");
  Zmod x(p, prec, t);
  for (int i = 0; i < prec + 2; ++i) x = x.pow(uint64_t(p));
  if (x.pow(uint64_t(p)) != x) throw check_error("teichmuller: did not converge");
  return x;
}

// discrete log base a in F_p^* (tiny p, linear scan)
inline int dlog_mod_p(int64_t p, int64_t base, int64_t x) {
  int64_t cur = 1;
  x %= p; if (x < 0) x += p;
  for (int k = 0; k < p - 1; ++k) {
    if (cur == x) return k;
    cur = (cur * base) % p;
  }
  throw check_error("dlog_mod_p: not in the cyclic group generated by base");
}

inline bool is_primitive_root(int64_t a, int64_t p) {
  // order check by brute force, p is tiny here
  int64_t cur = 1;
  for (int k = 1; k < p - 1; ++k) {
    cur = (cur * a) % p;
    if (cur == 1) return false;
  }
  cur = (cur * a) % p;
  return cur == 1;
}

}  // namespace ltlab
