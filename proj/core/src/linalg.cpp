#include "skelpot/linalg.hpp"

#include <utility>

#include "skelpot/error.hpp"

namespace skelpot {
namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

Integer lcm_of_denominators(const RationalMatrix& a, std::size_t row, const Rational* extra) {
  Integer l = 1;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(row, c).get_den_mpz_t());
  }
  if (extra) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), extra->get_den_mpz_t());
  return l;
}

// Returns the sign flip from row swaps, or 0 if singular. On return m is
// upper triangular and m[n-1][n-1] holds the determinant of the integer
// matrix (up to that sign).
int eliminate(IntegerMatrix& m, std::size_t n) {
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m[i].size(); ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign;
}

}  // namespace

std::vector<Rational> bareiss_solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InputError("bareiss_solve: dimension mismatch");
  if (n == 0) return {};

  IntegerMatrix m(n, std::vector<Integer>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    const Integer scale = lcm_of_denominators(a, r, &b[r]);
    for (std::size_t c = 0; c < n; ++c) {
      Rational v = a(r, c) * scale;
      m[r][c] = v.get_num();
    }
    Rational v = b[r] * scale;
    m[r][n] = v.get_num();
  }
  if (eliminate(m, n) == 0) throw Error("bareiss_solve: singular matrix");

  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
    x[i] = acc / Rational(m[i][i]);
  }
  return x;
}

Rational determinant(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InputError("determinant: matrix is not square");
  if (n == 0) return 1;
  IntegerMatrix m(n, std::vector<Integer>(n));
  Rational scale_total = 1;
  for (std::size_t r = 0; r < n; ++r) {
    const Integer scale = lcm_of_denominators(a, r, nullptr);
    scale_total *= scale;
    for (std::size_t c = 0; c < n; ++c) {
      Rational v = a(r, c) * scale;
      m[r][c] = v.get_num();
    }
  }
  const int sign = eliminate(m, n);
  if (sign == 0) return 0;
  Rational det(m[n - 1][n - 1]);
  det /= scale_total;
  return sign < 0 ? Rational(-det) : det;
}

}  // namespace skelpot
