// Copyright 2026 The sphtan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rational arithmetic, homogeneous bivariate polynomials over Q, and
// the numeric low-degree root solver shared by the tangent solvers.

#ifndef SPHTAN_EXACTPOLY_H_
#define SPHTAN_EXACTPOLY_H_

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sphtan {

// Arbitrary precision rational; GMP keeps it in lowest terms with a positive
// denominator after every operation.
using Rat = mpq_class;

// Parses "p", "p/q" or a finite decimal such as "-1.25".
Rat parse_rat(const std::string& text);
std::string rat_to_string(const Rat& value);

// Returns the rational square root when one exists.
std::optional<Rat> rat_sqrt(const Rat& value);

// Homogeneous polynomial in (s, t). Coefficient k multiplies s^(d-k) t^k.
// The zero polynomial is stored with degree 0 and a single zero coefficient.
class HPoly2 {
 public:
  HPoly2();
  explicit HPoly2(std::vector<Rat> coeffs);

  static HPoly2 constant(const Rat& c);
  static HPoly2 monomial(int s_power, int t_power, const Rat& c = Rat(1));
  static HPoly2 s() { return monomial(1, 0); }
  static HPoly2 t() { return monomial(0, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
  bool is_zero() const;

  // Index of the first nonzero coefficient, i.e. the power of t dividing the
  // polynomial. Zero for the zero polynomial.
  int t_order() const;
  // First nonzero coefficient in storage order; 0 for the zero polynomial.
  Rat leading() const;

  HPoly2 monic() const;

  // Sum and difference require equal degrees unless one side is zero.
  friend HPoly2 operator+(const HPoly2& a, const HPoly2& b);
  friend HPoly2 operator-(const HPoly2& a, const HPoly2& b);
  friend HPoly2 operator-(const HPoly2& a);
  friend HPoly2 operator*(const HPoly2& a, const HPoly2& b);
  friend HPoly2 operator*(const Rat& c, const HPoly2& a);
  friend bool operator==(const HPoly2& a, const HPoly2& b);

  HPoly2 pow(int e) const;
  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Rat> coeffs_;
};

// Monic greatest common divisor. Uses the subresultant remainder sequence on
// the t = 1 dehomogenization and restores the common power of t separately.
// gcd(a, 0) is the monic form of a; gcd(0, 0) is the zero polynomial.
HPoly2 hp_gcd(const HPoly2& a, const HPoly2& b);

// Exact evaluation at (s, t).
Rat hp_eval(const HPoly2& p, const Rat& s, const Rat& t);

// Quotient a / b when b divides a exactly, otherwise nullopt.
std::optional<HPoly2> hp_exact_div(const HPoly2& a, const HPoly2& b);

// Univariate helpers on coefficient vectors in ascending powers; exposed for
// tests of the remainder sequence.
using UPoly = std::vector<Rat>;
UPoly upoly_gcd(UPoly a, UPoly b);

struct ComplexRoot {
  std::complex<double> value;
  int multiplicity = 1;
};

// Relative radius used to merge numerically split multiple roots.
inline constexpr double kRootClusterRadius = 1e-7;
// Absolute threshold below which every coefficient counts as zero.
inline constexpr double kZeroCoefficientTol = 1e-12;

// All complex roots of a real polynomial of degree <= 4 given highest power
// first. Leading coefficients below 1e-12 of the largest one are dropped.
// Throws Errc::kAllCoefficientsZero when the polynomial vanishes identically.
std::vector<ComplexRoot> solve_real_coeff_quartic(std::span<const double> coeffs);

// Same contract for any degree; used for the binary quartics of the conic
// intersection and by tests.
std::vector<ComplexRoot> solve_real_poly(std::span<const double> coeffs);

}  // namespace sphtan

#endif  // SPHTAN_EXACTPOLY_H_
