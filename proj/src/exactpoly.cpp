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

#include "sphtan/exactpoly.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sphtan/errors.h"

namespace sphtan {

Rat parse_rat(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw Error(Errc::kValidationError, "empty rational");
  auto dot = s.find('.');
  auto exp = s.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) {
      Rat r(s, 10);
      if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
      r.canonicalize();
      return r;
    }
    // Finite decimal: mantissa digits over a power of ten.
    std::string mant = exp == std::string::npos ? s : s.substr(0, exp);
    long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
    if (neg && mant[0] == '+') neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant.erase(0, 1);
    auto d = mant.find('.');
    std::string digits = mant;
    long frac = 0;
    if (d != std::string::npos) {
      frac = static_cast<long>(mant.size() - d - 1);
      digits = mant.substr(0, d) + mant.substr(d + 1);
    }
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw std::invalid_argument("bad digits");
    }
    mpz_class num(digits, 10);
    long shift = e10 - frac;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    Rat r = shift >= 0 ? Rat(num * ten_pow) : Rat(num, ten_pow);
    r.canonicalize();
    return neg ? Rat(-r) : r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::kValidationError, "not a rational number: '" + text + "'");
  }
}

std::string rat_to_string(const Rat& value) { return value.get_str(10); }

std::optional<Rat> rat_sqrt(const Rat& value) {
  if (sgn(value) < 0) return std::nullopt;
  mpz_class n = value.get_num(), d = value.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// HPoly2

HPoly2::HPoly2() : coeffs_{Rat(0)} {}

HPoly2::HPoly2(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Rat(0));
  canonicalize();
}

void HPoly2::canonicalize() {
  bool zero = std::all_of(coeffs_.begin(), coeffs_.end(),
                          [](const Rat& c) { return sgn(c) == 0; });
  if (zero) coeffs_.assign(1, Rat(0));
}

HPoly2 HPoly2::constant(const Rat& c) { return HPoly2(std::vector<Rat>{c}); }

HPoly2 HPoly2::monomial(int s_power, int t_power, const Rat& c) {
  if (s_power < 0 || t_power < 0) throw std::invalid_argument("negative power");
  std::vector<Rat> v(static_cast<size_t>(s_power + t_power + 1), Rat(0));
  v[static_cast<size_t>(t_power)] = c;
  return HPoly2(std::move(v));
}

bool HPoly2::is_zero() const { return coeffs_.size() == 1 && sgn(coeffs_[0]) == 0; }

int HPoly2::t_order() const {
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) != 0) return static_cast<int>(k);
  }
  return 0;
}

Rat HPoly2::leading() const { return coeffs_[static_cast<size_t>(t_order())]; }

HPoly2 HPoly2::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / leading();
  return inv * *this;
}

HPoly2 operator+(const HPoly2& a, const HPoly2& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("HPoly2 sum of different degrees");
  }
  std::vector<Rat> v(a.coeffs_.size());
  for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeffs_[k] + b.coeffs_[k];
  HPoly2 r(std::move(v));
  return r;
}

HPoly2 operator-(const HPoly2& a) { return Rat(-1) * a; }

HPoly2 operator-(const HPoly2& a, const HPoly2& b) { return a + (-b); }

HPoly2 operator*(const HPoly2& a, const HPoly2& b) {
  if (a.is_zero() || b.is_zero()) return HPoly2();
  std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return HPoly2(std::move(v));
}

HPoly2 operator*(const Rat& c, const HPoly2& a) {
  if (sgn(c) == 0) return HPoly2();
  std::vector<Rat> v(a.coeffs_);
  for (auto& x : v) x *= c;
  return HPoly2(std::move(v));
}

bool operator==(const HPoly2& a, const HPoly2& b) { return a.coeffs_ == b.coeffs_; }

HPoly2 HPoly2::pow(int e) const {
  HPoly2 r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string HPoly2::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const int d = degree();
  for (int k = 0; k <= d; ++k) {
    const Rat& c = coeffs_[static_cast<size_t>(k)];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rat mag = abs(c);
    int sp = d - k, tp = k;
    bool unit = mag == 1;
    if (!unit || (sp == 0 && tp == 0)) os << mag.get_str();
    auto term = [&](const char* var, int p) {
      if (p == 0) return;
      if (!unit) os << "*";
      os << var;
      if (p > 1) os << "^" << p;
      unit = false;
    };
    term("s", sp);
    term("t", tp);
  }
  return os.str();
}

Rat hp_eval(const HPoly2& p, const Rat& s, const Rat& t) {
  // Horner in s with powers of t accumulated alongside.
  const int d = p.degree();
  Rat acc(0), tpow(1);
  std::vector<Rat> spow(static_cast<size_t>(d + 1));
  spow[0] = 1;
  for (int i = 1; i <= d; ++i) spow[static_cast<size_t>(i)] = spow[static_cast<size_t>(i - 1)] * s;
  for (int k = 0; k <= d; ++k) {
    acc += p.coeff(k) * spow[static_cast<size_t>(d - k)] * tpow;
    tpow *= t;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Univariate arithmetic (ascending powers)

namespace {

void trim(UPoly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
  if (p.empty()) p.push_back(Rat(0));
}

bool is_zero(const UPoly& p) { return p.size() == 1 && sgn(p[0]) == 0; }

int deg(const UPoly& p) { return is_zero(p) ? -1 : static_cast<int>(p.size()) - 1; }

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
UPoly prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const Rat lb = b.back();
  int da = deg(a);
  int e = da - db + 1;
  while (da >= db && !is_zero(a)) {
    Rat la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) {
      a[static_cast<size_t>(da - db + i)] -= la * b[static_cast<size_t>(i)];
    }
    trim(a);
    --e;
    da = deg(a);
  }
  if (e > 0) {
    Rat f(1);
    for (int i = 0; i < e; ++i) f *= lb;
    for (auto& c : a) c *= f;
  }
  trim(a);
  return a;
}

UPoly monic(UPoly p) {
  trim(p);
  if (is_zero(p)) return p;
  Rat inv = 1 / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

}  // namespace

UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  if (is_zero(a)) return monic(b);
  if (is_zero(b)) return monic(a);
  if (deg(a) < deg(b)) std::swap(a, b);
  // Subresultant remainder sequence (Collins/Brown).
  Rat g(1), h(1);
  while (true) {
    const int delta = deg(a) - deg(b);
    UPoly r = prem(a, b);
    if (is_zero(r)) return monic(b);
    if (deg(r) == 0) return UPoly{Rat(1)};
    Rat hd(1);
    for (int i = 0; i < delta; ++i) hd *= h;
    Rat div = g * hd;
    for (auto& c : r) c /= div;
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta - 1)
    Rat gd(1);
    for (int i = 0; i < delta; ++i) gd *= g;
    Rat hp(1);
    for (int i = 0; i + 1 < delta; ++i) hp *= h;
    h = delta == 0 ? h : Rat(gd / hp);
  }
}

HPoly2 hp_gcd(const HPoly2& a, const HPoly2& b) {
  if (a.is_zero() && b.is_zero()) return HPoly2();
  if (b.is_zero()) return a.monic();
  if (a.is_zero()) return b.monic();
  // Dehomogenize at t = 1: coefficient k becomes the coefficient of s^(d-k).
  auto dehom = [](const HPoly2& p) {
    const int d = p.degree();
    UPoly u(static_cast<size_t>(d + 1));
    for (int k = 0; k <= d; ++k) u[static_cast<size_t>(d - k)] = p.coeff(k);
    trim(u);
    return u;
  };
  UPoly g = upoly_gcd(dehom(a), dehom(b));
  const int dg = static_cast<int>(g.size()) - 1;
  const int tpow = std::min(a.t_order(), b.t_order());
  // Re-homogenize: s^j becomes s^j t^(dg - j), then multiply by t^tpow.
  std::vector<Rat> c(static_cast<size_t>(dg + tpow + 1), Rat(0));
  for (int j = 0; j <= dg; ++j) c[static_cast<size_t>(dg - j + tpow)] = g[static_cast<size_t>(j)];
  return HPoly2(std::move(c)).monic();
}

std::optional<HPoly2> hp_exact_div(const HPoly2& a, const HPoly2& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return HPoly2();
  const int dq = a.degree() - b.degree();
  if (dq < 0) return std::nullopt;
  const int mb = b.t_order();
  const Rat lb = b.coeff(mb);
  // Ascending division in powers of t.
  std::vector<Rat> rem(a.coeffs());
  std::vector<Rat> q(static_cast<size_t>(dq + 1), Rat(0));
  for (int j = 0; j <= dq; ++j) {
    const Rat& top = rem[static_cast<size_t>(j + mb)];
    if (sgn(top) == 0) continue;
    Rat f = top / lb;
    q[static_cast<size_t>(j)] = f;
    for (int i = 0; i <= b.degree(); ++i) rem[static_cast<size_t>(j + i)] -= f * b.coeff(i);
  }
  for (const auto& c : rem) {
    if (sgn(c) != 0) return std::nullopt;
  }
  return HPoly2(std::move(q));
}

// ---------------------------------------------------------------------------
// Numeric roots

namespace {

std::complex<double> horner(std::span<const double> c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (double v : c) acc = acc * x + v;
  return acc;
}

std::complex<double> horner_deriv(std::span<const double> c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  const size_t n = c.size() - 1;
  for (size_t i = 0; i < n; ++i) acc = acc * x + c[i] * static_cast<double>(n - i);
  return acc;
}

// True when the Taylor coefficients of orders 0..order-1 at x are below 1e-6
// of their rounding bound sum_i binom(i, j) |a_i| |x|^(i-j); distinct roots of
// a wide cluster leave the low orders far from zero.
bool taylor_vanishes(std::span<const double> c, std::complex<double> x, int order) {
  const int n = static_cast<int>(c.size()) - 1;
  for (int j = 0; j < order; ++j) {
    std::complex<double> t = 0.0;
    double bound = 0.0;
    for (int i = j; i <= n; ++i) {
      const double a = c[static_cast<size_t>(n - i)];
      double binom = 1.0;
      for (int q = 0; q < j; ++q) binom = binom * (i - q) / (q + 1);
      t += binom * a * std::pow(x, i - j);
      bound += binom * std::abs(a) * std::pow(std::abs(x), i - j);
    }
    if (std::abs(t) > 1e-6 * bound) return false;
  }
  return true;
}

}  // namespace

std::vector<ComplexRoot> solve_real_poly(std::span<const double> coeffs) {
  double cmax = 0.0;
  for (double v : coeffs) cmax = std::max(cmax, std::abs(v));
  if (cmax <= kZeroCoefficientTol) {
    throw Error(Errc::kAllCoefficientsZero, "polynomial vanishes identically");
  }
  size_t lead = 0;
  while (lead < coeffs.size() && std::abs(coeffs[lead]) <= 1e-12 * cmax) ++lead;
  std::vector<double> c(coeffs.begin() + static_cast<long>(lead), coeffs.end());
  for (auto& v : c) v /= cmax;
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};

  // Scale x = sigma * y so the monic coefficients are balanced.
  double sigma = 0.0;
  for (int k = 1; k <= n; ++k) {
    sigma = std::max(sigma, std::pow(std::abs(c[static_cast<size_t>(k)] / c[0]), 1.0 / k));
  }
  if (!(sigma > 0.0)) sigma = 1.0;

  std::vector<std::complex<double>> raw;
  if (n == 1) {
    raw.push_back(-c[1] / c[0]);
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    double sp = 1.0;
    for (int k = 1; k <= n; ++k) {
      sp *= sigma;
      comp(0, k - 1) = -c[static_cast<size_t>(k)] / (c[0] * sp);
    }
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < n; ++i) raw.push_back(es.eigenvalues()[i] * sigma);
  }

  // Newton polish; keep a step only when it lowers the residual.
  for (auto& z : raw) {
    for (int it = 0; it < 4; ++it) {
      auto f = horner(c, z);
      auto df = horner_deriv(c, z);
      if (std::abs(df) == 0.0) break;
      auto cand = z - f / df;
      if (std::abs(horner(c, cand)) < std::abs(f)) z = cand;
      else break;
    }
  }

  double rmax = 1.0;
  for (const auto& z : raw) rmax = std::max(rmax, std::abs(z));
  const double radius = kRootClusterRadius * rmax;

  // Single-linkage clustering.
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<size_t>(i)] != i) i = parent[static_cast<size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(raw[static_cast<size_t>(i)] - raw[static_cast<size_t>(j)]) <= radius) {
        parent[static_cast<size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<ComplexRoot> out;
  std::vector<int> slot(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[static_cast<size_t>(r)] < 0) {
      slot[static_cast<size_t>(r)] = static_cast<int>(out.size());
      out.push_back({0.0, 0});
    }
    auto& cr = out[static_cast<size_t>(slot[static_cast<size_t>(r)])];
    cr.value += raw[static_cast<size_t>(i)];
    cr.multiplicity += 1;
  }
  for (auto& cr : out) cr.value /= static_cast<double>(cr.multiplicity);

  // A k-fold root splits by about eps^(1/k); pairwise clustering at the fixed
  // radius only catches k = 2. Merge groups of total multiplicity k >= 3 whose
  // diameter fits that scale.
  for (int k = n; k >= 3; --k) {
    const double rk = 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / k) * rmax;
    const size_t m = out.size();
    std::vector<int> comp(m);
    std::iota(comp.begin(), comp.end(), 0);
    auto root_of = [&](int i) {
      while (comp[static_cast<size_t>(i)] != i) i = comp[static_cast<size_t>(i)];
      return i;
    };
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = i + 1; j < m; ++j) {
        if (std::abs(out[i].value - out[j].value) <= rk)
          comp[static_cast<size_t>(root_of(static_cast<int>(j)))] = root_of(static_cast<int>(i));
      }
    }
    std::vector<ComplexRoot> merged;
    std::vector<bool> done(m, false);
    for (size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      std::vector<size_t> members;
      for (size_t j = i; j < m; ++j) {
        if (root_of(static_cast<int>(j)) == root_of(static_cast<int>(i))) members.push_back(j);
      }
      int total = 0;
      double diam = 0.0;
      for (size_t a : members) {
        total += out[a].multiplicity;
        for (size_t b : members) diam = std::max(diam, std::abs(out[a].value - out[b].value));
      }
      std::complex<double> centroid = 0.0;
      for (size_t a : members) centroid += out[a].value * static_cast<double>(out[a].multiplicity);
      centroid /= static_cast<double>(std::max(total, 1));
      if (total == k && members.size() > 1 && diam <= 2.0 * rk &&
          taylor_vanishes(c, centroid, k - 1)) {
        ComplexRoot cr{0.0, total};
        for (size_t a : members) {
          cr.value += out[a].value * static_cast<double>(out[a].multiplicity);
          done[a] = true;
        }
        cr.value /= static_cast<double>(total);
        merged.push_back(cr);
      } else {
        merged.push_back(out[i]);
        done[i] = true;
      }
    }
    out = std::move(merged);
  }

  for (auto& cr : out) {
    if (std::abs(cr.value.imag()) <= radius) cr.value.imag(0.0);
  }
  // Enforce conjugate symmetry of the reported values.
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].value.imag() <= 0.0) continue;
    for (size_t j = 0; j < out.size(); ++j) {
      if (j == i || out[j].multiplicity != out[i].multiplicity) continue;
      if (std::abs(out[j].value - std::conj(out[i].value)) <= 10 * radius) {
        auto avg = 0.5 * (out[i].value + std::conj(out[j].value));
        out[i].value = avg;
        out[j].value = std::conj(avg);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<ComplexRoot> solve_real_coeff_quartic(std::span<const double> coeffs) {
  if (coeffs.size() != 5) throw std::invalid_argument("quartic needs 5 coefficients");
  return solve_real_poly(coeffs);
}

}  // namespace sphtan
