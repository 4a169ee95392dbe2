#pragma once

#include <cstdint>
#include <vector>

#include "ltlab/zmod.hpp"

namespace ltlab {

// Dense matrix over Z/p^K. K is kept small enough that p^K < 2^15, so a
// product of two reduced entries fits comfortably in uint32 and delayed
// reduction windows stay wide.
struct PMatrix {
  int64_t p = 0;
  int K = 1;
  uint32_t mod = 0;
  int rows = 0;
  int cols = 0;
  std::vector<uint32_t> a;  // row-major, entries in [0, mod)

  PMatrix() = default;
  PMatrix(int64_t p_, int K_, int rows_, int cols_);

  uint32_t& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
  uint32_t at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

  // A*v mod p^K
  std::vector<uint32_t> apply(const std::vector<uint32_t>& v) const;
  // (A*v) mod p, for v with entries < p
  std::vector<uint8_t> apply_mod_p(const std::vector<uint8_t>& v) const;
  std::vector<uint8_t> row_mod_p(int i) const;
};

// Counts of elementary-divisor p-valuations of a matrix over Z/p^K, obtained
// by unit-pivot elimination followed by exact division of the remaining block
// by p, one stage per valuation. Divisors of valuation >= K cannot be told
// apart from 0 at this precision and are reported as `residual`.
struct PeelCounts {
  std::vector<long> count;  // count[v] = #divisors with valuation exactly v, v < K
  long residual = 0;
  long rank_finite() const {
    long r = 0;
    for (long c : count) r += c;
    return r;
  }
  // log_p of the product of the finite divisors
  long valuation_sum() const {
    long s = 0;
    for (size_t v = 0; v < count.size(); ++v) s += long(v) * count[v];
    return s;
  }
};
PeelCounts peel_divisor_counts(PMatrix A);

// Incremental row-echelon basis over F_p with normalized pivots; supports
// canonical reduction, membership, and kernel-vector extraction by free
// column (treating the stored rows as the rows of a matrix).
class RowEchelonP {
 public:
  RowEchelonP(int64_t p, int cols);

  // reduce v against the basis and store the residual if nonzero;
  // returns true when the basis grew
  bool insert(std::vector<uint8_t> v);
  void insert_rows_of(const PMatrix& A);
  void insert_cols_of(const PMatrix& A);

  int rank() const { return int(rows_.size()); }
  int cols() const { return cols_; }
  std::vector<uint8_t> reduce(std::vector<uint8_t> v) const;
  bool contains(const std::vector<uint8_t>& v) const;

  std::vector<int> free_columns() const;
  // kernel vector of the stored row matrix with x[free_col] = 1 and all other
  // free coordinates 0
  std::vector<uint8_t> kernel_vector(int free_col) const;
  std::vector<std::vector<uint8_t>> kernel_basis() const;

 private:
  int64_t p_;
  int cols_;
  std::vector<std::vector<uint8_t>> rows_;  // sorted by pivot column
  std::vector<int> pivots_;
  std::vector<uint8_t> inv_;  // inverse table mod p
};

// {x mod p : A*x ≡ 0 mod p and the lift obstruction (A*x)/p lies in im(A mod p)}.
// One refinement step; exact when the elementary divisors of A have valuation
// <= 1, which callers establish via peel_divisor_counts. Requires K >= 2.
std::vector<std::vector<uint8_t>> saturated_kernel_mod_p(const PMatrix& A);

// Whether p*v lies in the image of A over Z/p^2 (i.e. A*y ≡ p*v mod p^2 is
// solvable). Requires K >= 2. Intended for modest dimensions.
bool times_p_in_image(const PMatrix& A, const std::vector<uint8_t>& v);

std::vector<uint8_t> vec_mod_p(const std::vector<uint32_t>& v, int64_t p);

}  // namespace ltlab
