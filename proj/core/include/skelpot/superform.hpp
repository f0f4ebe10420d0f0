#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skelpot/linalg.hpp"
#include "skelpot/poly.hpp"

namespace skelpot {

// Strictly increasing index set as a bit mask: bit k stands for x_{k+1}.
using IndexSet = std::uint32_t;

// Superform of bidegree (p, q) on R^r:
//   sum over (I, J) of a_IJ d'x_I ^ d''x_J,  |I| = p, |J| = q.
class SuperForm {
 public:
  static constexpr std::size_t max_dim = 16;

  SuperForm(std::size_t r, std::size_t p, std::size_t q);
  static SuperForm function(const Poly& f);

  std::size_t dim() const { return r_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  const std::map<std::pair<IndexSet, IndexSet>, Poly>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Poly coeff(IndexSet i, IndexSet j) const;
  void add(IndexSet i, IndexSet j, const Poly& a);

  SuperForm operator+(const SuperForm& o) const;
  SuperForm operator-(const SuperForm& o) const;
  SuperForm operator*(const Rational& c) const;
  bool operator==(const SuperForm& o) const = default;

 private:
  std::size_t r_;
  std::size_t p_;
  std::size_t q_;
  std::map<std::pair<IndexSet, IndexSet>, Poly> coeffs_;
};

IndexSet index_set(const std::vector<std::size_t>& one_based);
std::vector<std::size_t> indices(IndexSet s);  // 1-based, increasing

// d' = D (x) id, bidegree (p+1, q).
SuperForm d_prime(const SuperForm& a);
// d'' = (-1)^p id (x) D, bidegree (p, q+1).
SuperForm d_second(const SuperForm& a);
// (a (x) b) ^ (c (x) d) = (-1)^{p' q} (a ^ c) (x) (b ^ d).
SuperForm wedge(const SuperForm& a, const SuperForm& b);
// (-1)^{pq} sum a_IJ d'x_J ^ d''x_I.
SuperForm J(const SuperForm& a);

// x = A t + b from R^{r'} (t) to R^r (x); A is r x r'.
struct AffineMap {
  RationalMatrix linear;
  std::vector<Rational> translation;

  std::size_t source_dim() const { return linear.cols(); }
  std::size_t target_dim() const { return linear.rows(); }
};

SuperForm pullback(const AffineMap& f, const SuperForm& a);

// sum_{i,j} d^2 psi / dx_i dx_j  d'x_i ^ d''x_j.
SuperForm hessian_form(const Poly& psi);

// Coefficient matrix M_ij of a (1,1)-form (coefficient of d'x_i ^ d''x_j)
// evaluated at a point.
RationalMatrix matrix_11(const SuperForm& a, const std::vector<Rational>& x);

// Exact positive-semidefiniteness by LDL^T with symmetric pivoting.
// Requires a symmetric matrix.
bool is_psd(const RationalMatrix& m);

enum class PositivityStatus { Positive, NotPositive, NonSymmetric };

struct PositivityVerdict {
  PositivityStatus status = PositivityStatus::Positive;
  std::optional<std::vector<Rational>> witness;  // first failing sample point
  bool positive() const { return status == PositivityStatus::Positive; }
};

// Pointwise positivity at sample points for bidegree (1,1): coefficient
// matrix PSD. A non-symmetric matrix is reported as NonSymmetric.
PositivityVerdict is_positive_11(const SuperForm& a, const std::vector<std::vector<Rational>>& points);

// Positivity at sample points for (0,0), (1,1) and (r,r) forms. The (r,r)
// generator d'x1 ^ d''x1 ^ ... ^ d'xr ^ d''xr equals
// (-1)^{r(r-1)/2} d'x_{1..r} ^ d''x_{1..r}.
PositivityVerdict positivity(const SuperForm& a, const std::vector<std::vector<Rational>>& points);

// Hessian of psi compressed to span(basis) at origin + B t for each sample t,
// tested for PSD. Throws InputError on a linearly dependent basis.
PositivityVerdict restrict_convexity_check(const Poly& psi, const std::vector<Rational>& origin,
                                           const std::vector<std::vector<Rational>>& basis,
                                           const std::vector<std::vector<Rational>>& samples);

// Integral of the coefficient of d'x_{1..r} ^ d''x_{1..r} over a box.
Rational integrate_box(const SuperForm& a, const std::vector<std::pair<Rational, Rational>>& box);

// "(2*x1^2 + x2) d'x1 ^ d''x2 + (1) d'x2 ^ d''x2"; zero prints as "0".
std::string to_string(const SuperForm& a);
// Parses terms "[coef] [*] gen ^ gen ..." separated by + or -, where coef is
// a number or a parenthesized polynomial and gen is d'x<i> or d''x<i> in any
// order. All terms need the same bidegree. The dimension is the largest index
// seen unless given.
SuperForm parse_form(std::string_view text, std::optional<std::size_t> r = std::nullopt);

}  // namespace skelpot
