#include "gpev/pade.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gpev {
namespace {

using big = boost::multiprecision::cpp_bin_float_50;
using rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// closure polynomials for a_1 (appendix derivation, constant-first order)
// ---------------------------------------------------------------------------

// q=3: 21233664 a^5 - 9732096 a^4 - 62464 a^3 + 137856 a^2 + 62772 a - 1247
const std::int64_t kPolyQ3[] = {-1247, 62772, 137856, -62464, -9732096,
                                21233664};
// q=4: degree 8
const std::int64_t kPolyQ4[] = {9325957,
                                1297120628,
                                248539665024,
                                -8028170208256,
                                107808283328512,
                                -642522859438080,
                                1853440540016640,
                                -2530164294549504,
                                1292033536819200};

template <class T>
T horner(const std::int64_t* c, int deg, const T& x) {
  T acc = T(c[deg]);
  for (int i = deg - 1; i >= 0; --i) acc = acc * x + T(c[i]);
  return acc;
}

template <class T>
T horner_deriv(const std::int64_t* c, int deg, const T& x) {
  T acc = T(deg) * T(c[deg]);
  for (int i = deg - 1; i >= 1; --i) acc = acc * x + T(i) * T(c[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// coefficient chain (Tables 1-2 plus the appendix-text b1 for q = 4)
// ---------------------------------------------------------------------------

template <class T>
struct Coeffs {
  std::vector<T> a, b;  // a_1..a_q, b_1..b_{q-1}
};

template <class T>
Coeffs<T> chain_q2(const T& a1) {
  T b1 = (T(5) - 32 * a1) / (T(48) - 192 * a1);
  T a2 = a1 * (b1 - T(1) / 4);
  return {{a1, a2}, {b1}};
}

template <class T>
Coeffs<T> chain_q3(const T& a1) {
  T b1 = (2304 * a1 * a1 * a1 + 656 * a1 * a1 - 421 * a1 - 28) /
         (7680 * a1 * a1 - 1680 * a1 - 330);
  T a2 = a1 * (b1 - T(1) / 4);
  T b2 = (768 * a1 * b1 - 120 * b1 - 384 * a1 * a1 + 8 * a1 + 7) /
         (4608 * a1 - 1152);
  T a3 = a1 * (192 * b2 - 48 * b1 + 16 * a1 + 5) / 192;
  return {{a1, a2, a3}, {b1, b2}};
}

template <class T>
Coeffs<T> chain_q4(const T& a1) {
  T p2 = a1 * a1, p3 = p2 * a1, p4 = p3 * a1, p5 = p4 * a1;
  T b1 = (722731008 * p5 - 326467584 * p4 - 13427712 * p3 + 11551104 * p2 +
          834006 * a1 - 12183) /
         (2972712960 * p5 - 1362493440 * p4 - 8744960 * p3 + 19299840 * p2 +
          8788080 * a1 - 174580);
  T a2 = a1 * (b1 - T(1) / 4);
  T b2 = ((737280 * p3 + 209920 * p2 - 134720 * a1 - 8960) * b1 -
          364544 * p3 + 70144 * p2 + 18256 * a1 + 393) /
         (2457600 * p2 - 537600 * a1 - 105600);
  T a3 = a1 * (192 * b2 - 48 * b1 + 16 * a1 + 5) / 192;
  T b3 = ((61440 * a1 - 9600) * b2 + (-30720 * p2 + 640 * a1 + 560) * b1 +
          8448 * p2 - 1056 * a1 - 21) /
         (368640 * a1 - 92160);
  T a4 = (4608 * a1 * b3 - 1152 * a1 * b2 + (384 * p2 + 120 * a1) * b1 -
          128 * p2 - 7 * a1) /
         4608;
  return {{a1, a2, a3, a4}, {b1, b2, b3}};
}

template <class T>
Coeffs<T> coefficient_chain(int q, const T& a1) {
  switch (q) {
    case 2: return chain_q2(a1);
    case 3: return chain_q3(a1);
    case 4: return chain_q4(a1);
  }
  throw std::invalid_argument("pade: unsupported order q=" + std::to_string(q));
}

// ---------------------------------------------------------------------------
// polynomial arithmetic in u = r^2 for the residual numerator
// ---------------------------------------------------------------------------

template <class T>
using Poly = std::vector<T>;  // c[i] = coefficient of u^i

template <class T>
Poly<T> pmul(const Poly<T>& A, const Poly<T>& B) {
  Poly<T> out(A.size() + B.size() - 1, T(0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) out[i + j] += A[i] * B[j];
  return out;
}

template <class T>
Poly<T> padd(Poly<T> A, const Poly<T>& B, const T& scale) {
  if (B.size() > A.size()) A.resize(B.size(), T(0));
  for (std::size_t i = 0; i < B.size(); ++i) A[i] += scale * B[i];
  return A;
}

template <class T>
Poly<T> pder(const Poly<T>& A) {
  if (A.size() <= 1) return {T(0)};
  Poly<T> out(A.size() - 1);
  for (std::size_t i = 1; i < A.size(); ++i) out[i - 1] = T(i) * A[i];
  return out;
}

template <class T>
Poly<T> pshift(Poly<T> A) {  // multiply by u
  A.insert(A.begin(), T(0));
  return A;
}

// Residual numerator of the steady density equation with rho = P/Q:
//   N = 4u P (R1' Q - 2 R1 Q') + 4 P Q R1 - 2u R1^2 - 2 (P^2/u) Q^2
//       + 2 P^2 Q (Q - P),        R1 = P'Q - PQ'.
// The reported coefficient of r^{2k} is coeff_{u^{k+1}}(N) / 2, matching the
// appendix normalization (k=1 gives a1^2 + 4 a1 a2 - 4 a1^2 b1).
template <class T>
std::vector<T> residual_series(const Coeffs<T>& co, int q, int k_max) {
  Poly<T> P(q + 1, T(0)), Q(q + 1, T(0));
  Q[0] = T(1);
  for (int j = 1; j <= q; ++j) P[j] = co.a[j - 1];
  for (int k = 1; k < q; ++k) Q[k] = co.b[k - 1];
  Q[q] = co.a[q - 1];

  Poly<T> Pp = pder(P), Qp = pder(Q);
  Poly<T> R1 = padd(pmul(Pp, Q), pmul(P, Qp), T(-1));
  Poly<T> R1p = pder(R1);

  Poly<T> N = pshift(pmul(P, padd(pmul(R1p, Q), pmul(R1, Qp), T(-2))));
  for (auto& c : N) c *= T(4);
  N = padd(N, pmul(pmul(P, Q), R1), T(4));
  N = padd(N, pshift(pmul(R1, R1)), T(-2));
  Poly<T> P2 = pmul(P, P);
  Poly<T> P2u(P2.begin() + 1, P2.end());  // P^2/u, exact (P has no constant)
  N = padd(N, pmul(P2u, pmul(Q, Q)), T(-2));
  N = padd(N, pmul(P2, pmul(Q, padd(Q, P, T(-1)))), T(2));

  std::vector<T> out(k_max, T(0));
  for (int k = 1; k <= k_max; ++k)
    if (std::size_t(k + 1) < N.size()) out[k - 1] = N[k + 1] / 2;
  return out;
}

// ---------------------------------------------------------------------------
// root finding and physical-root selection
// ---------------------------------------------------------------------------

bool profile_is_physical(const PadeProfile& p) {
  double prev = 0.0;
  for (int i = 1; i <= 10000; ++i) {
    double r = 100.0 * double(i) / 10000.0;
    double v = eval_rho(p, r);
    if (!(v > 0.0) || !(v < 1.0) || v <= prev) return false;
    prev = v;
  }
  return true;
}

PadeProfile to_profile(int q, const Coeffs<big>& co) {
  PadeProfile p;
  p.q = q;
  for (int j = 0; j < q; ++j) p.a[j] = double(co.a[j]);
  for (int k = 0; k + 1 < q; ++k) p.b[k] = double(co.b[k]);
  return p;
}

big refine_root(const std::int64_t* poly, int deg, big lo, big hi) {
  big flo = horner(poly, deg, lo);
  for (int it = 0; it < 120; ++it) {
    big mid = (lo + hi) / 2;
    big fm = horner(poly, deg, mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  big x = (lo + hi) / 2;
  for (int it = 0; it < 30; ++it) {
    big f = horner(poly, deg, x);
    big fp = horner_deriv(poly, deg, x);
    if (fp == 0) break;
    big step = f / fp;
    x -= step;
    if (abs(step) < big("1e-45")) break;
  }
  return x;
}

std::vector<big> bracket_roots(const std::int64_t* poly, int deg) {
  const int scan = 4096;
  const big lo("0.2"), hi("0.5");
  std::vector<big> roots;
  big x0 = lo, f0 = horner(poly, deg, x0);
  for (int i = 1; i <= scan; ++i) {
    big x1 = lo + (hi - lo) * i / scan;
    big f1 = horner(poly, deg, x1);
    if ((f0 > 0) != (f1 > 0)) roots.push_back(refine_root(poly, deg, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

big solve_a1(int q) {
  const std::int64_t* poly = q == 3 ? kPolyQ3 : kPolyQ4;
  const int deg = q == 3 ? 5 : 8;
  auto roots = bracket_roots(poly, deg);
  if (roots.empty())
    throw std::runtime_error("pade: no a1 root bracketed on [0.2, 0.5]");
  const big* selected = nullptr;
  for (const auto& r : roots) {
    auto co = coefficient_chain(q, r);
    if (profile_is_physical(to_profile(q, co))) {
      if (selected)
        throw std::runtime_error("pade: ambiguous physical a1 root");
      selected = &r;
    }
  }
  if (!selected)
    throw std::runtime_error("pade: no physically admissible a1 root");
  return *selected;
}

const big& cached_a1(int q) {
  static const big a1_q3 = solve_a1(3);
  static const big a1_q4 = solve_a1(4);
  if (q == 3) return a1_q3;
  return a1_q4;
}

}  // namespace

std::array<Rational64, 3> pade2_exact() {
  // a1 = 11/32, b1 = (5-32a1)/(48-192a1) = 1/3, a2 = a1(b1 - 1/4) = 11/384
  rat a1(11, 32);
  rat b1 = (rat(5) - 32 * a1) / (rat(48) - 192 * a1);
  rat a2 = a1 * (b1 - rat(1, 4));
  auto cvt = [](const rat& v) {
    return Rational64{numerator(v).convert_to<std::int64_t>(),
                      denominator(v).convert_to<std::int64_t>()};
  };
  return {cvt(a1), cvt(b1), cvt(a2)};
}

PadeProfile build_pade(int q) {
  if (q < 2 || q > 4)
    throw std::invalid_argument("build_pade: q must be 2, 3 or 4");
  if (q == 2) {
    auto co = chain_q2(rat(11, 32));
    PadeProfile p;
    p.q = 2;
    p.a[0] = co.a[0].convert_to<double>();
    p.a[1] = co.a[1].convert_to<double>();
    p.b[0] = co.b[0].convert_to<double>();
    return p;
  }
  return to_profile(q, coefficient_chain(q, cached_a1(q)));
}

double eval_rho(const PadeProfile& p, double r) {
  if (!(r >= 0) || !std::isfinite(r))
    throw std::invalid_argument("eval_rho: need finite r >= 0");
  const int q = p.q;
  const double u = r * r;
  if (u > 1e8) {
    // reciprocal form: both polynomials have degree q and leading
    // coefficient a_q, so rho -> 1 smoothly as u -> inf
    const double v = 1.0 / u;
    double num = p.a[q - 1], den = p.a[q - 1];
    double vp = v;
    for (int j = q - 1; j >= 1; --j, vp *= v) {
      num += p.a[j - 1] * vp;
      den += p.b[j - 1] * vp;
    }
    den += vp;  // the constant 1 becomes v^q
    return num / den;
  }
  double num = 0, den = 1, up = u;
  for (int j = 1; j <= q; ++j, up *= u) {
    num += p.a[j - 1] * up;
    den += (j < q ? p.b[j - 1] : p.a[q - 1]) * up;
  }
  return num / den;
}

double eval_rho_prime(const PadeProfile& p, double r) {
  if (!(r >= 0) || !std::isfinite(r))
    throw std::invalid_argument("eval_rho_prime: need finite r >= 0");
  const int q = p.q;
  const double u = r * r;
  if (u > 1e8) {
    // d/dr [An(v)/Ad(v)] with v = 1/u: -2 r v^2 (An'Ad - An Ad')/Ad^2
    const double v = 1.0 / u;
    double An = p.a[q - 1], Ad = p.a[q - 1], Anp = 0, Adp = 0;
    double vp = 1;
    for (int j = q - 1; j >= 1; --j) {
      // term exponent in v is (q - j)
      int e = q - j;
      Anp += p.a[j - 1] * e * (e > 1 ? std::pow(v, e - 1) : 1.0);
      Adp += p.b[j - 1] * e * (e > 1 ? std::pow(v, e - 1) : 1.0);
    }
    Adp += q * std::pow(v, q - 1);
    vp = v;
    for (int j = q - 1; j >= 1; --j, vp *= v) {
      An += p.a[j - 1] * vp;
      Ad += p.b[j - 1] * vp;
    }
    Ad += vp;
    return -2 * r * v * v * (Anp * Ad - An * Adp) / (Ad * Ad);
  }
  double P = 0, Q = 1, Pp = 0, Qp = 0, up = u, upm = 1;
  for (int j = 1; j <= q; ++j, up *= u, upm *= u) {
    const double bj = j < q ? p.b[j - 1] : p.a[q - 1];
    P += p.a[j - 1] * up;
    Q += bj * up;
    Pp += j * p.a[j - 1] * upm;
    Qp += j * bj * upm;
  }
  return 2 * r * (Pp * Q - P * Qp) / (Q * Q);
}

std::vector<double> residual_coefficients(const PadeProfile& p, int k_max) {
  const int q = p.q;
  if (k_max <= 2 * q - 1)
    throw std::invalid_argument("residual_coefficients: need k_max > 2q-1");
  std::vector<double> out(k_max);
  if (q == 2) {
    auto co = chain_q2(rat(11, 32));
    auto series = residual_series(co, 2, k_max);
    for (int k = 0; k < k_max; ++k) out[k] = series[k].convert_to<double>();
    return out;
  }
  auto co = coefficient_chain(q, cached_a1(q));
  auto series = residual_series(co, q, k_max);
  for (int k = 0; k < k_max; ++k) out[k] = double(series[k]);
  return out;
}

std::string pade_a1_decimal(int q, int digits) {
  std::ostringstream os;
  os.precision(digits);
  if (q == 2)
    os << rat(11, 32).convert_to<big>();
  else
    os << cached_a1(q);
  return os.str();
}

double pade_root_residual(int q) {
  if (q == 2) {
    // a1^2 (8 a1 + 1)(32 a1 - 11) at a1 = 11/32 is exactly zero
    rat a1(11, 32);
    rat v = a1 * a1 * (8 * a1 + 1) * (32 * a1 - 11);
    return v == 0 ? 0.0 : 1.0;
  }
  const std::int64_t* poly = q == 3 ? kPolyQ3 : kPolyQ4;
  const int deg = q == 3 ? 5 : 8;
  const big& a1 = cached_a1(q);
  big val = abs(horner(poly, deg, a1));
  big lead = abs(big(poly[deg]) * pow(a1, deg));
  return double(val / lead);
}

}  // namespace gpev
