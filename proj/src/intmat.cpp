#include "ltlab/intmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlab {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols != o.rows) throw std::logic_error("IntMatrix: shape mismatch");
  IntMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const BigInt& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

namespace {

void row_op(IntMatrix& A, IntMatrix& U, int dst, int src, const BigInt& c) {
  for (int j = 0; j < A.cols; ++j) A.at(dst, j) -= c * A.at(src, j);
  for (int j = 0; j < U.cols; ++j) U.at(dst, j) -= c * U.at(src, j);
}
void col_op(IntMatrix& A, IntMatrix& V, int dst, int src, const BigInt& c) {
  for (int i = 0; i < A.rows; ++i) A.at(i, dst) -= c * A.at(i, src);
  for (int i = 0; i < V.rows; ++i) V.at(i, dst) -= c * V.at(i, src);
}
void row_swap(IntMatrix& A, IntMatrix& U, int i1, int i2) {
  for (int j = 0; j < A.cols; ++j) std::swap(A.at(i1, j), A.at(i2, j));
  for (int j = 0; j < U.cols; ++j) std::swap(U.at(i1, j), U.at(i2, j));
}
void col_swap(IntMatrix& A, IntMatrix& V, int j1, int j2) {
  for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, j1), A.at(i, j2));
  for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, j1), V.at(i, j2));
}

}  // namespace

SmithResult smith_normal_form(IntMatrix A) {
  SmithResult res;
  res.U = IntMatrix::identity(A.rows);
  res.V = IntMatrix::identity(A.cols);
  int n = std::min(A.rows, A.cols);

  for (int t = 0; t < n; ++t) {
    // pick the nonzero entry of smallest magnitude in the trailing block
    int pi = -1, pj = -1;
    BigInt best;
    for (int i = t; i < A.rows; ++i)
      for (int j = t; j < A.cols; ++j) {
        if (A.at(i, j) == 0) continue;
        BigInt m = abs(A.at(i, j));
        if (pi < 0 || m < best) { best = m; pi = i; pj = j; }
      }
    if (pi < 0) break;  // trailing block is zero
    row_swap(A, res.U, t, pi);
    col_swap(A, res.V, t, pj);

    // reduce row and column until the pivot divides everything it meets
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < A.rows; ++i) {
        if (A.at(i, t) == 0) continue;
        BigInt q = A.at(i, t) / A.at(t, t);
        row_op(A, res.U, i, t, q);
        if (A.at(i, t) != 0) { row_swap(A, res.U, t, i); again = true; }
      }
      for (int j = t + 1; j < A.cols; ++j) {
        if (A.at(t, j) == 0) continue;
        BigInt q = A.at(t, j) / A.at(t, t);
        col_op(A, res.V, j, t, q);
        if (A.at(t, j) != 0) { col_swap(A, res.V, t, j); again = true; }
      }
      if (!again) {
        // pivot must also divide the rest of the block for the divisor chain
        for (int i = t + 1; i < A.rows && !again; ++i)
          for (int j = t + 1; j < A.cols; ++j)
            if (A.at(i, j) % A.at(t, t) != 0) {
              // add row i to row t to pull the bad entry into play
              row_op(A, res.U, t, i, BigInt(-1));
              again = true;
              break;
            }
      }
    }
    if (A.at(t, t) < 0) {
      for (int j = 0; j < A.cols; ++j) A.at(t, j) = -A.at(t, j);
      for (int j = 0; j < res.U.cols; ++j) res.U.at(t, j) = -res.U.at(t, j);
    }
  }
  for (int t = 0; t < n; ++t)
    if (A.at(t, t) != 0) {
      res.divisors.push_back(A.at(t, t));
      ++res.rank;
    }
  return res;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  SmithResult s = smith_normal_form(A);
  // A = U^-1 D V^-1, kernel basis = V columns past the rank
  int k = A.cols - s.rank;
  IntMatrix K(A.cols, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < A.cols; ++i) K.at(i, j) = s.V.at(i, s.rank + j);
  return K;
}

namespace {

BigInt det_recursive(const IntMatrix& A, std::vector<int>& cols, int row) {
  if (row == A.rows) return 1;
  // expand along `row` using the still-available columns
  BigInt acc = 0;
  int sign = 1;
  for (size_t ci = 0; ci < cols.size(); ++ci) {
    int c = cols[ci];
    if (A.at(row, c) != 0) {
      std::vector<int> rest;
      for (size_t cj = 0; cj < cols.size(); ++cj)
        if (cj != ci) rest.push_back(cols[cj]);
      BigInt sub = det_recursive(A, rest, row + 1);
      acc += sign * A.at(row, c) * sub;
    }
    sign = -sign;
  }
  return acc;
}

void choose(int n, int k, int start, std::vector<int>& cur,
            std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == k) { out.push_back(cur); return; }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

BigInt gcd_of_k_minors(const IntMatrix& A, int k) {
  std::vector<std::vector<int>> rowsets, colsets;
  std::vector<int> cur;
  choose(A.rows, k, 0, cur, rowsets);
  choose(A.cols, k, 0, cur, colsets);
  BigInt g = 0;
  for (auto& rs : rowsets)
    for (auto& cs : colsets) {
      IntMatrix M(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M.at(i, j) = A.at(rs[size_t(i)], cs[size_t(j)]);
      std::vector<int> allc(size_t(k), 0);
      for (int j = 0; j < k; ++j) allc[size_t(j)] = j;
      BigInt d = det_recursive(M, allc, 0);
      g = boost::multiprecision::gcd(g, d);
    }
  return g < 0 ? BigInt(-g) : g;
}

}  // namespace ltlab
