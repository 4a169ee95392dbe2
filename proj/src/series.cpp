#include "ltlab/series.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace ltlab {

std::shared_ptr<const SeriesRing> SeriesRing::make(int64_t p, int prec,
                                                   std::vector<std::string> vars,
                                                   std::vector<int> caps,
                                                   int maxdeg) {
  if (vars.size() != caps.size())
    throw usage_error("SeriesRing: vars/caps length mismatch");
  if (prec < 1) throw usage_error("SeriesRing: prec must be >= 1");
  auto R = std::make_shared<SeriesRing>();
  R->p = p;
  R->prec = prec;
  R->mod = pow_u64_checked(uint64_t(p), unsigned(prec), "SeriesRing");
  R->vars = std::move(vars);
  R->caps = caps;
  R->maxdeg = maxdeg;

  size_t n = R->vars.size();
  R->stride.assign(n, 1);
  size_t box = 1;
  for (size_t i = 0; i < n; ++i) {
    if (caps[i] < 0) throw usage_error("SeriesRing: negative cap");
    R->stride[i] = box;
    box *= size_t(caps[i]) + 1;
    if (box > (size_t(1) << 26)) throw usage_error("SeriesRing: box too large");
  }
  R->box = box;

  R->deg_of.assign(box, 0);
  R->exp_of.assign(box, std::vector<uint16_t>(n, 0));
  for (size_t idx = 0; idx < box; ++idx) {
    size_t rest = idx;
    int d = 0;
    for (size_t i = n; i-- > 0;) {
      uint16_t e = uint16_t(rest / R->stride[i]);
      rest %= R->stride[i];
      R->exp_of[idx][i] = e;
      d += e;
    }
    R->deg_of[idx] = uint16_t(d);
  }
  R->by_degree.resize(box);
  std::iota(R->by_degree.begin(), R->by_degree.end(), 0u);
  std::stable_sort(R->by_degree.begin(), R->by_degree.end(),
                   [&](uint32_t a, uint32_t b) { return R->deg_of[a] < R->deg_of[b]; });
  int dmax = 0;
  for (size_t i = 0; i < box; ++i) dmax = std::max(dmax, int(R->deg_of[i]));
  R->degree_start.assign(size_t(dmax) + 2, box);
  for (size_t k = box; k-- > 0;)
    R->degree_start[R->deg_of[R->by_degree[k]]] = k;
  for (size_t d = R->degree_start.size() - 1; d-- > 0;)
    R->degree_start[d] = std::min(R->degree_start[d], R->degree_start[d + 1]);
  R->tight.assign(n, false);
  for (size_t i = 0; i < n; ++i) R->tight[i] = caps[i] < maxdeg;
  return R;
}

size_t SeriesRing::index(const std::vector<int>& e) const {
  if (e.size() != vars.size()) throw usage_error("Series: exponent arity mismatch");
  size_t idx = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > caps[i]) throw usage_error("Series: exponent out of range");
    idx += size_t(e[i]) * stride[i];
  }
  return idx;
}

Series::Series(std::shared_ptr<const SeriesRing> ring)
    : R_(std::move(ring)), c_(R_->box, 0) {}

Series Series::constant(std::shared_ptr<const SeriesRing> ring, uint64_t v) {
  Series s(std::move(ring));
  s.c_[0] = v % s.R_->mod;
  return s;
}

Series Series::variable(std::shared_ptr<const SeriesRing> ring, int var) {
  Series s(std::move(ring));
  std::vector<int> e(s.R_->vars.size(), 0);
  e[size_t(var)] = 1;
  s.c_[s.R_->index(e)] = 1;
  return s;
}

bool Series::is_zero() const {
  for (uint64_t v : c_)
    if (v != 0) return false;
  return true;
}

uint64_t Series::stored(const std::vector<int>& e) const { return c_[R_->index(e)]; }

void Series::set_stored(const std::vector<int>& e, uint64_t v) {
  size_t idx = R_->index(e);
  if (R_->deg_of[idx] > R_->maxdeg && v % R_->mod != 0)
    throw usage_error("Series: term beyond total-degree cap");
  c_[idx] = v % R_->mod;
}

uint64_t Series::coeff(const std::vector<int>& e) const {
  if (shift_ != 0) throw check_error("Series: coefficient read with nonzero shift");
  return stored(e);
}

void Series::check_same_ring(const Series& o) const {
  if (R_.get() != o.R_.get()) throw usage_error("Series: mixed rings");
}

void Series::align(Series& a, Series& b) {
  if (a.shift_ == b.shift_) return;
  Series& low = a.shift_ < b.shift_ ? a : b;
  const Series& high = a.shift_ < b.shift_ ? b : a;
  int d = high.shift_ - low.shift_;
  uint64_t f = 1, mod = low.R_->mod;
  for (int i = 0; i < d; ++i) f = mulmod_u64(f, uint64_t(low.R_->p), mod);
  for (auto& v : low.c_) v = mulmod_u64(v, f, mod);
  low.shift_ = high.shift_;
}

Series Series::operator+(const Series& o) const {
  check_same_ring(o);
  Series a = *this, b = o;
  align(a, b);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    a.c_[i] += b.c_[i];
    if (a.c_[i] >= R_->mod) a.c_[i] -= R_->mod;
  }
  return a;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
  Series r = *this;
  for (auto& v : r.c_) v = v == 0 ? 0 : R_->mod - v;
  return r;
}

bool Series::operator==(const Series& o) const {
  check_same_ring(o);
  Series a = *this, b = o;
  align(a, b);
  return a.c_ == b.c_;
}

Series mul_impl(const Series& a, const Series& b) {
  const SeriesRing& R = a.ring();
  Series r(a.ring_ptr());
  r.shift_ = a.shift_ + b.shift_;
  if (r.shift_ >= R.prec)
    throw check_error("Series: denominator shift exhausted precision");
  const uint64_t mod = R.mod;
  size_t nvars = R.vars.size();
  std::vector<size_t> tight_vars;
  for (size_t i = 0; i < nvars; ++i)
    if (R.tight[i]) tight_vars.push_back(i);

  // collect nonzero terms of both factors ordered by total degree
  std::vector<uint32_t> ia, ib;
  for (uint32_t idx : R.by_degree) {
    if (a.c_[idx] != 0) ia.push_back(idx);
    if (b.c_[idx] != 0) ib.push_back(idx);
  }
  // plain 64-bit products suffice while mod^2 + mod fits; otherwise go wide
  const bool narrow = mod < (uint64_t(1) << 31);
  for (uint32_t i : ia) {
    int da = R.deg_of[i];
    uint64_t ca = a.c_[i];
    const auto& ea = R.exp_of[i];
    for (uint32_t j : ib) {
      if (int(R.deg_of[j]) + da > R.maxdeg) break;  // ib sorted by degree
      bool ok = true;
      for (size_t tv : tight_vars)
        if (int(ea[tv]) + int(R.exp_of[j][tv]) > R.caps[tv]) { ok = false; break; }
      if (!ok) continue;
      size_t k = size_t(i) + size_t(j);
      if (narrow)
        r.c_[k] = (r.c_[k] + ca * b.c_[j]) % mod;
      else
        r.c_[k] = (r.c_[k] + mulmod_u64(ca, b.c_[j], mod)) % mod;
    }
  }
  return r;
}

Series Series::operator*(const Series& o) const {
  check_same_ring(o);
  return mul_impl(*this, o);
}

Series Series::scaled(uint64_t s) const {
  Series r = *this;
  s %= R_->mod;
  for (auto& v : r.c_) v = mulmod_u64(v, s, R_->mod);
  return r;
}

Series Series::shifted_div_p(int v) const {
  if (v < 0) throw usage_error("Series: negative shift");
  Series r = *this;
  r.shift_ += v;
  if (r.shift_ >= R_->prec)
    throw check_error("Series: denominator shift exhausted precision");
  return r.renormalized();
}

Series Series::div_unit(uint64_t u) const {
  u %= R_->mod;
  uint64_t inv = invmod_u64(u, R_->mod);
  return scaled(inv);
}

Series Series::divided_by_int(int64_t n) const {
  if (n == 0) throw usage_error("Series: division by zero");
  bool neg = n < 0;
  uint64_t m = uint64_t(neg ? -n : n);
  int v = 0;
  while (m % uint64_t(R_->p) == 0) { m /= uint64_t(R_->p); ++v; }
  Series r = div_unit(m).shifted_div_p(v);
  return neg ? -r : r;
}

Series Series::renormalized() const {
  if (shift_ == 0) return *this;
  // largest k <= shift with p^k dividing every stored coefficient
  int k = shift_;
  for (uint64_t v : c_) {
    if (v == 0) continue;
    int kv = 0;
    while (kv < k && v % uint64_t(R_->p) == 0) { v /= uint64_t(R_->p); ++kv; }
    k = std::min(k, kv);
    if (k == 0) return *this;
  }
  Series r = *this;
  uint64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= uint64_t(R_->p);
  for (auto& v : r.c_) v /= pk;
  r.shift_ -= k;
  return r;
}

Series Series::integral_normalized() const {
  Series r = renormalized();
  if (r.shift_ != 0)
    throw check_error("Series: object is not integral (residual shift " +
                      std::to_string(r.shift_) + ")");
  return r;
}

Series Series::derivative(int var) const {
  Series r(R_);
  r.shift_ = shift_;
  size_t st = R_->stride[size_t(var)];
  for (size_t idx = 0; idx < R_->box; ++idx) {
    if (c_[idx] == 0) continue;
    int e = R_->exp_of[idx][size_t(var)];
    if (e == 0) continue;
    r.c_[idx - st] =
        (r.c_[idx - st] + mulmod_u64(c_[idx], uint64_t(e), R_->mod)) % R_->mod;
  }
  return r;
}

Series Series::integrated(int var) const {
  Series r(R_);
  r.shift_ = shift_;
  size_t st = R_->stride[size_t(var)];
  for (size_t idx = 0; idx < R_->box; ++idx) {
    if (c_[idx] == 0) continue;
    int e = R_->exp_of[idx][size_t(var)];
    if (e + 1 > R_->caps[size_t(var)] || R_->deg_of[idx] + 1 > R_->maxdeg)
      throw check_error("Series: antiderivative exceeds truncation");
    Series t(R_);
    t.c_[idx + st] = c_[idx];
    t.shift_ = shift_;
    r = r + t.divided_by_int(e + 1);
  }
  return r;
}

Series Series::truncated_total(int maxdeg) const {
  Series r = *this;
  for (size_t idx = 0; idx < R_->box; ++idx)
    if (R_->deg_of[idx] > maxdeg) r.c_[idx] = 0;
  return r;
}

Series Series::slice(int var, int k) const {
  Series r(R_);
  r.shift_ = shift_;
  size_t st = R_->stride[size_t(var)];
  for (size_t idx = 0; idx < R_->box; ++idx) {
    if (c_[idx] == 0) continue;
    if (R_->exp_of[idx][size_t(var)] != k) continue;
    r.c_[idx - size_t(k) * st] += c_[idx];
    r.c_[idx - size_t(k) * st] %= R_->mod;
  }
  return r;
}

Series Series::substituted(int var, const Series& s) const {
  check_same_ring(s);
  if (s.c_[0] != 0) {
    // allowed only if this series does not involve `var`
    for (size_t idx = 0; idx < R_->box; ++idx)
      if (c_[idx] != 0 && R_->exp_of[idx][size_t(var)] != 0)
        throw usage_error("Series: substitution with nonzero constant term");
    return *this;
  }
  int top = 0;
  for (size_t idx = 0; idx < R_->box; ++idx)
    if (c_[idx] != 0) top = std::max(top, int(R_->exp_of[idx][size_t(var)]));
  // Horner in the substituted variable
  Series r = slice(var, top);
  for (int k = top - 1; k >= 0; --k) r = r * s + slice(var, k);
  return r;
}

Series Series::inverse() const {
  if (shift_ != 0)
    throw usage_error("Series: inverse requires shift 0");
  uint64_t c0 = c_[0] % R_->mod;
  if (c0 % uint64_t(R_->p) == 0)
    throw check_error("Series: constant term is not a unit");
  Series x = constant(R_, invmod_u64(c0, R_->mod));
  Series two = constant(R_, 2);
  // Newton: x <- x(2 - a x); degree of correctness doubles each round
  int rounds = 1;
  while ((1 << rounds) <= R_->maxdeg + 1) ++rounds;
  for (int i = 0; i <= rounds; ++i) x = x * (two - *this * x);
  return x;
}

std::string Series::to_string(int max_terms) const {
  std::ostringstream os;
  if (shift_ != 0) os << "p^-" << shift_ << " * (";
  int n = 0;
  bool first = true;
  for (uint32_t idx : R_->by_degree) {
    if (c_[idx] == 0) continue;
    if (n >= max_terms) { os << " + ..."; break; }
    if (!first) os << " + ";
    first = false;
    os << c_[idx];
    for (size_t i = 0; i < R_->vars.size(); ++i) {
      int e = R_->exp_of[idx][i];
      if (e == 0) continue;
      os << "*" << R_->vars[i];
      if (e > 1) os << "^" << e;
    }
    ++n;
  }
  if (first) os << "0";
  if (shift_ != 0) os << ")";
  return os.str();
}

}  // namespace ltlab
