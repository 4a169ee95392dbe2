#pragma once
// Exact integer linear algebra on small matrices: Smith normal form with
// transforms, integer kernels, minor gcds. Entries are arbitrary-precision;
// this is the reference implementation that the fast p-adic routines are
// checked against.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace ltlab {

using BigInt = boost::multiprecision::cpp_int;

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<BigInt> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

  BigInt& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
  const BigInt& at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

  static IntMatrix identity(int n);
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct SmithResult {
  std::vector<BigInt> divisors;  // nonzero elementary divisors, d1 | d2 | ...
  int rank = 0;                  // number of nonzero divisors
  IntMatrix U, V;                // U * A * V = D (diagonal of divisors)
};

SmithResult smith_normal_form(IntMatrix A);

// basis of { x : A x = 0 } as columns; automatically a saturated sublattice
IntMatrix integer_kernel(const IntMatrix& A);

// gcd of all k x k minors (0 if all vanish); exponential in size, oracle use only
BigInt gcd_of_k_minors(const IntMatrix& A, int k);

}  // namespace ltlab
