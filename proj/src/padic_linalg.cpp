#include "ltlab/padic_linalg.hpp"

#include <algorithm>
#include <cassert>

namespace ltlab {

PMatrix::PMatrix(int64_t p_, int K_, int rows_, int cols_)
    : p(p_), K(K_), rows(rows_), cols(cols_) {
  uint64_t m = pow_u64_checked(uint64_t(p_), unsigned(K_), "PMatrix");
  if (m >= (uint64_t(1) << 15))
    throw usage_error("PMatrix: p^K must stay below 2^15");
  mod = uint32_t(m);
  a.assign(size_t(rows) * size_t(cols), 0);
}

std::vector<uint32_t> PMatrix::apply(const std::vector<uint32_t>& v) const {
  assert(int(v.size()) == cols);
  std::vector<uint32_t> r(size_t(rows), 0);
  for (int i = 0; i < rows; ++i) {
    uint64_t acc = 0;
    const uint32_t* row = &a[size_t(i) * size_t(cols)];
    for (int j = 0; j < cols; ++j) acc += uint64_t(row[j]) * v[size_t(j)];
    r[size_t(i)] = uint32_t(acc % mod);
  }
  return r;
}

std::vector<uint8_t> PMatrix::apply_mod_p(const std::vector<uint8_t>& v) const {
  assert(int(v.size()) == cols);
  std::vector<uint8_t> r(size_t(rows), 0);
  for (int i = 0; i < rows; ++i) {
    uint64_t acc = 0;
    const uint32_t* row = &a[size_t(i) * size_t(cols)];
    for (int j = 0; j < cols; ++j) acc += uint64_t(row[j] % uint32_t(p)) * v[size_t(j)];
    r[size_t(i)] = uint8_t(acc % uint64_t(p));
  }
  return r;
}

std::vector<uint8_t> PMatrix::row_mod_p(int i) const {
  std::vector<uint8_t> r(size_t(cols), 0);
  const uint32_t* row = &a[size_t(i) * size_t(cols)];
  for (int j = 0; j < cols; ++j) r[size_t(j)] = uint8_t(row[j] % uint32_t(p));
  return r;
}

std::vector<uint8_t> vec_mod_p(const std::vector<uint32_t>& v, int64_t p) {
  std::vector<uint8_t> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = uint8_t(v[i] % uint64_t(p));
  return r;
}

namespace {

// modular inverse for unit u modulo m = p^k
uint32_t inv_mod(uint32_t u, uint32_t m) {
  return uint32_t(invmod_u64(u % m, m));
}

}  // namespace

PeelCounts peel_divisor_counts(PMatrix A) {
  const int64_t p = A.p;
  const int K = A.K;
  const int R = A.rows, C = A.cols;
  const int n = std::min(R, C);
  PeelCounts res;
  res.count.assign(size_t(K), 0);

  uint32_t cur_mod = A.mod;
  int t = 0;  // eliminated pivots so far; active block is [t,R) x [t,C)
  // delayed-reduction bookkeeping: pending axpy count per row
  std::vector<uint32_t> pending(size_t(R), 0);

  auto normalize_row = [&](int i) {
    uint32_t* row = &A.a[size_t(i) * size_t(C)];
    for (int j = t; j < C; ++j) row[j] %= cur_mod;
    pending[size_t(i)] = 0;
  };

  for (int stage = 0; stage < K && t < n; ++stage) {
    const uint32_t window =
        cur_mod > 1 ? (0xffffffffu - (cur_mod - 1)) / ((cur_mod - 1) * (cur_mod - 1))
                    : 0xffffffffu;
    // repeat sweeps until no unit entry remains in the active block
    bool found_any = true;
    while (found_any && t < n) {
      found_any = false;
      for (int c = t; c < C && t < n; ++c) {
        // look for a unit in column c among active rows
        int pr = -1;
        for (int i = t; i < R; ++i)
          if (A.at(i, c) % uint32_t(p) != 0) { pr = i; break; }
        if (pr < 0) continue;
        found_any = true;
        // swap pivot into position (t, t)
        if (pr != t) {
          for (int j = t; j < C; ++j) std::swap(A.at(t, j), A.at(pr, j));
          std::swap(pending[size_t(t)], pending[size_t(pr)]);
        }
        if (c != t)
          for (int i = t; i < R; ++i) std::swap(A.at(i, t), A.at(i, c));
        normalize_row(t);
        uint32_t piv = A.at(t, t);
        uint32_t pinv = inv_mod(piv, cur_mod);
        {
          uint32_t* rt = &A.a[size_t(t) * size_t(C)];
          for (int j = t; j < C; ++j)
            rt[j] = uint32_t((uint64_t(rt[j]) * pinv) % cur_mod);
        }
        const uint32_t* rt = &A.a[size_t(t) * size_t(C)];
        for (int i = t + 1; i < R; ++i) {
          uint32_t ci = A.at(i, t) % cur_mod;
          if (ci == 0) continue;
          if (pending[size_t(i)] >= window) normalize_row(i);
          uint32_t m = cur_mod - ci;
          uint32_t* ri = &A.a[size_t(i) * size_t(C)];
          for (int j = t; j < C; ++j) ri[j] += m * rt[j];
          ++pending[size_t(i)];
        }
        // column ops clearing row t would only touch rows where column t is
        // already zero, so the row can simply be dropped
        {
          uint32_t* r0 = &A.a[size_t(t) * size_t(C)];
          for (int j = t; j < C; ++j) r0[j] = 0;
        }
        ++res.count[size_t(stage)];
        ++t;
      }
    }
    if (t >= n) break;
    // no unit left: every active entry must be divisible by p
    bool all_zero = true;
    for (int i = t; i < R; ++i) {
      normalize_row(i);
      uint32_t* row = &A.a[size_t(i) * size_t(C)];
      for (int j = t; j < C; ++j) {
        if (row[j] % uint32_t(p) != 0)
          throw check_error("peel: non-unit stage left a unit entry");
        row[j] /= uint32_t(p);
        if (row[j] != 0) all_zero = false;
      }
    }
    cur_mod /= uint32_t(p);
    if (all_zero || cur_mod == 1) break;
  }
  res.residual = n - t;
  return res;
}

RowEchelonP::RowEchelonP(int64_t p, int cols) : p_(p), cols_(cols) {
  inv_.assign(size_t(p), 0);
  for (int64_t u = 1; u < p; ++u) inv_[size_t(u)] = uint8_t(invmod_u64(uint64_t(u), uint64_t(p)));
}

std::vector<uint8_t> RowEchelonP::reduce(std::vector<uint8_t> v) const {
  const uint32_t p = uint32_t(p_);
  const uint32_t window = (0xffffu - (p - 1)) / ((p - 1) * (p - 1));
  std::vector<uint16_t> acc(v.begin(), v.end());
  uint32_t pend = 0;
  for (size_t k = 0; k < rows_.size(); ++k) {
    int pc = pivots_[k];
    uint16_t c = uint16_t(acc[size_t(pc)] % p);
    if (c == 0) continue;
    if (pend >= window) {
      for (auto& x : acc) x = uint16_t(x % p);
      pend = 0;
    }
    uint16_t m = uint16_t(p - c);
    const uint8_t* row = rows_[k].data();
    uint16_t* ap = acc.data();
    for (int j = pc; j < cols_; ++j) ap[j] = uint16_t(ap[j] + m * row[j]);
    ++pend;
  }
  std::vector<uint8_t> out(v.size());
  for (size_t j = 0; j < v.size(); ++j) out[j] = uint8_t(acc[j] % p);
  return out;
}

bool RowEchelonP::insert(std::vector<uint8_t> v) {
  std::vector<uint8_t> r = reduce(std::move(v));
  int pc = -1;
  for (int j = 0; j < cols_; ++j)
    if (r[size_t(j)] != 0) { pc = j; break; }
  if (pc < 0) return false;
  uint16_t inv = inv_[r[size_t(pc)]];
  for (int j = pc; j < cols_; ++j)
    r[size_t(j)] = uint8_t((inv * r[size_t(j)]) % uint16_t(p_));
  // keep rows sorted by pivot column
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pc) ++pos;
  pivots_.insert(pivots_.begin() + long(pos), pc);
  rows_.insert(rows_.begin() + long(pos), std::move(r));
  return true;
}

void RowEchelonP::insert_rows_of(const PMatrix& A) {
  for (int i = 0; i < A.rows; ++i) insert(A.row_mod_p(i));
}

void RowEchelonP::insert_cols_of(const PMatrix& A) {
  for (int j = 0; j < A.cols; ++j) {
    std::vector<uint8_t> v(size_t(A.rows));
    for (int i = 0; i < A.rows; ++i) v[size_t(i)] = uint8_t(A.at(i, j) % uint32_t(A.p));
    insert(std::move(v));
  }
}

bool RowEchelonP::contains(const std::vector<uint8_t>& v) const {
  std::vector<uint8_t> r = reduce(v);
  for (uint8_t x : r)
    if (x != 0) return false;
  return true;
}

std::vector<int> RowEchelonP::free_columns() const {
  std::vector<int> f;
  size_t k = 0;
  for (int j = 0; j < cols_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) { ++k; continue; }
    f.push_back(j);
  }
  return f;
}

std::vector<uint8_t> RowEchelonP::kernel_vector(int free_col) const {
  const uint32_t p = uint32_t(p_);
  std::vector<uint8_t> x(size_t(cols_), 0);
  x[size_t(free_col)] = 1;
  for (size_t k = rows_.size(); k-- > 0;) {
    int pc = pivots_[k];
    const uint8_t* row = rows_[k].data();
    uint64_t acc = 0;
    for (int j = pc + 1; j < cols_; ++j) acc += uint64_t(row[j]) * x[size_t(j)];
    uint32_t s = uint32_t(acc % p);
    x[size_t(pc)] = uint8_t(s == 0 ? 0 : p - s);  // pivot normalized to 1
  }
  return x;
}

std::vector<std::vector<uint8_t>> RowEchelonP::kernel_basis() const {
  std::vector<std::vector<uint8_t>> basis;
  for (int f : free_columns()) basis.push_back(kernel_vector(f));
  return basis;
}

std::vector<std::vector<uint8_t>> saturated_kernel_mod_p(const PMatrix& A) {
  if (A.K < 2) throw usage_error("saturated_kernel_mod_p: needs K >= 2");
  const int64_t p = A.p;
  const uint32_t p2 = uint32_t(p * p);
  RowEchelonP ref(p, A.cols);
  ref.insert_rows_of(A);
  std::vector<std::vector<uint8_t>> ker = ref.kernel_basis();
  if (ker.empty()) return ker;

  RowEchelonP image(p, A.rows);
  image.insert_cols_of(A);

  // obstruction of each kernel vector: (A x)/p reduced against im(A mod p)
  std::vector<std::vector<uint8_t>> obst;
  for (const auto& x : ker) {
    std::vector<uint8_t> y(size_t(A.rows));
    for (int i = 0; i < A.rows; ++i) {
      uint64_t acc = 0;
      const uint32_t* row = &A.a[size_t(i) * size_t(A.cols)];
      for (int j = 0; j < A.cols; ++j)
        acc += uint64_t(row[j] % p2) * x[size_t(j)];
      uint32_t v = uint32_t(acc % p2);
      if (v % uint32_t(p) != 0)
        throw check_error("saturated kernel: A*x not divisible by p");
      y[size_t(i)] = uint8_t((v / uint32_t(p)) % uint32_t(p));
    }
    obst.push_back(image.reduce(std::move(y)));
  }

  // kernel of the map c -> sum c_f * obst_f
  RowEchelonP small(p, int(ker.size()));
  for (int i = 0; i < A.rows; ++i) {
    std::vector<uint8_t> row(ker.size());
    for (size_t f = 0; f < ker.size(); ++f) row[f] = obst[f][size_t(i)];
    small.insert(std::move(row));
  }
  std::vector<std::vector<uint8_t>> out;
  for (const auto& c : small.kernel_basis()) {
    std::vector<uint16_t> acc(size_t(A.cols), 0);
    for (size_t f = 0; f < ker.size(); ++f) {
      if (c[f] == 0) continue;
      for (int j = 0; j < A.cols; ++j)
        acc[size_t(j)] = uint16_t(acc[size_t(j)] + c[f] * ker[f][size_t(j)]);
    }
    std::vector<uint8_t> v(size_t(A.cols));
    bool nonzero = false;
    for (int j = 0; j < A.cols; ++j) {
      v[size_t(j)] = uint8_t(acc[size_t(j)] % uint16_t(p));
      nonzero = nonzero || v[size_t(j)] != 0;
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

bool times_p_in_image(const PMatrix& A, const std::vector<uint8_t>& v) {
  if (A.K < 2) throw usage_error("times_p_in_image: needs K >= 2");
  const int64_t p = A.p;
  const uint32_t p2 = uint32_t(p * p);
  // A(y0 + p y1) ≡ p v mod p^2 with y0 in ker(A mod p):
  // v - (A y0)/p must land in im(A mod p) for some kernel combination
  RowEchelonP ref(p, A.cols);
  ref.insert_rows_of(A);
  RowEchelonP image(p, A.rows);
  image.insert_cols_of(A);

  std::vector<uint8_t> rv = image.reduce(v);
  bool rv_zero = true;
  for (uint8_t x : rv) rv_zero = rv_zero && x == 0;
  if (rv_zero) return true;

  RowEchelonP span(p, A.rows);
  for (const auto& x : ref.kernel_basis()) {
    std::vector<uint8_t> y(size_t(A.rows));
    for (int i = 0; i < A.rows; ++i) {
      uint64_t acc = 0;
      const uint32_t* row = &A.a[size_t(i) * size_t(A.cols)];
      for (int j = 0; j < A.cols; ++j)
        acc += uint64_t(row[j] % p2) * x[size_t(j)];
      uint32_t val = uint32_t(acc % p2);
      if (val % uint32_t(p) != 0)
        throw check_error("times_p_in_image: A*x not divisible by p");
      y[size_t(i)] = uint8_t((val / uint32_t(p)) % uint32_t(p));
    }
    span.insert(image.reduce(std::move(y)));
  }
  return span.contains(rv);
}

}  // namespace ltlab
