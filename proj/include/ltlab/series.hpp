#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ltlab/zmod.hpp"

namespace ltlab {

// Descriptor for a truncated multivariate series ring over Z/p^prec.
// Storage is a dense exponent box: per-variable exponent caps plus a joint
// total-degree cap. Iteration order is fixed by the index layout, so output
// is deterministic.
struct SeriesRing {
  int64_t p;
  int prec;
  uint64_t mod;  // p^prec, kept < 2^31 so products fit in uint64
  std::vector<std::string> vars;
  std::vector<int> caps;
  int maxdeg;

  std::vector<size_t> stride;
  size_t box = 0;
  std::vector<uint16_t> deg_of;          // total degree per index
  std::vector<uint32_t> by_degree;       // indices sorted by (degree, index)
  std::vector<size_t> degree_start;      // prefix boundaries into by_degree
  std::vector<std::vector<uint16_t>> exp_of;
  std::vector<bool> tight;               // caps[i] < maxdeg

  static std::shared_ptr<const SeriesRing> make(int64_t p, int prec,
                                                std::vector<std::string> vars,
                                                std::vector<int> caps,
                                                int maxdeg);
  size_t index(const std::vector<int>& e) const;
};

class Series {
 public:
  Series() = default;
  explicit Series(std::shared_ptr<const SeriesRing> ring);

  static Series constant(std::shared_ptr<const SeriesRing> ring, uint64_t v);
  static Series variable(std::shared_ptr<const SeriesRing> ring, int var);

  const SeriesRing& ring() const { return *R_; }
  const std::shared_ptr<const SeriesRing>& ring_ptr() const { return R_; }
  int shift() const { return shift_; }
  bool is_zero() const;

  uint64_t stored(const std::vector<int>& e) const;
  void set_stored(const std::vector<int>& e, uint64_t v);
  // coefficient of the true object, valid only when shift = 0
  uint64_t coeff(const std::vector<int>& e) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series operator-() const;
  bool operator==(const Series& o) const;

  Series scaled(uint64_t c) const;              // multiply by scalar
  Series shifted_div_p(int v) const;            // divide by p^v via the shift
  Series div_unit(uint64_t u) const;            // divide by a p-adic unit
  Series divided_by_int(int64_t n) const;       // unit part + shift for p-part
  Series renormalized() const;                  // pull p-content into the shift
  // reduce to shift 0, requiring every stored coefficient divisible by p^shift
  Series integral_normalized() const;

  Series derivative(int var) const;
  Series integrated(int var) const;  // antiderivative, no constant
  Series truncated_total(int maxdeg) const;

  // substitute s for variable `var`; s must have zero constant term unless
  // the substituted variable only appears with exponent 0
  Series substituted(int var, const Series& s) const;
  Series inverse() const;  // reciprocal; constant term must be a unit

  // sum of monomials whose exponent in `var` equals k, with that variable
  // removed from the exponent (exponent set to 0)
  Series slice(int var, int k) const;

  std::string to_string(int max_terms = 24) const;

 private:
  std::shared_ptr<const SeriesRing> R_;
  int shift_ = 0;
  std::vector<uint64_t> c_;

  void check_same_ring(const Series& o) const;
  static void align(Series& a, Series& b);
  friend Series mul_impl(const Series& a, const Series& b);
};

}  // namespace ltlab
