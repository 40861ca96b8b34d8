// AVX2/FMA variants of the inner-loop kernels. This translation unit is
// compiled with -mavx2 -mfma on x86-64 and must only be entered after a
// runtime cpuid check (see dispatch.cpp).
#include "gpev/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace gpev::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [x0,x1] per 128-bit lane -> swap re/im within each complex
inline __m256d swap_reim(__m256d v) { return _mm256_permute_pd(v, 0x5); }

void cmul_v(cd* z, const cd* f, std::size_t n) {
  auto* zp = reinterpret_cast<double*>(z);
  auto* fp = reinterpret_cast<const double*>(f);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d zv = _mm256_loadu_pd(zp + 2 * i);
    __m256d fv = _mm256_loadu_pd(fp + 2 * i);
    __m256d fre = _mm256_permute_pd(fv, 0x0);
    __m256d fim = _mm256_permute_pd(fv, 0xF);
    __m256d t = _mm256_mul_pd(swap_reim(zv), fim);
    _mm256_storeu_pd(zp + 2 * i, _mm256_fmaddsub_pd(zv, fre, t));
  }
  for (; i < n; ++i) z[i] *= f[i];
}

void axpy_v(cd a, const cd* x, cd* y, std::size_t n) {
  auto* xp = reinterpret_cast<const double*>(x);
  auto* yp = reinterpret_cast<double*>(y);
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    __m256d t = _mm256_mul_pd(swap_reim(xv), aim);
    __m256d prod = _mm256_fmaddsub_pd(xv, are, t);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_v(double a, cd* x, std::size_t n) {
  auto* xp = reinterpret_cast<double*>(x);
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(xp + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xp + 2 * i), av));
  for (; i < n; ++i) x[i] *= a;
}

// sign mask that flips the even (real-slot) lanes
inline __m256d neg_even() { return _mm256_setr_pd(-0.0, 0.0, -0.0, 0.0); }

cd dotc_v(const cd* x, const cd* y, std::size_t n) {
  auto* xp = reinterpret_cast<const double*>(x);
  auto* yp = reinterpret_cast<const double*>(y);
  double re = 0, im = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    for (; i + 2 <= end; i += 2) {
      __m256d xv = _mm256_loadu_pd(xp + 2 * i);
      __m256d yv = _mm256_loadu_pd(yp + 2 * i);
      accr = _mm256_fmadd_pd(xv, yv, accr);  // xr*yr | xi*yi
      // xi*yr | xr*yi, with the even lane negated: sum -> xr*yi - xi*yr
      __m256d t = _mm256_mul_pd(swap_reim(xv), yv);
      acci = _mm256_add_pd(acci, _mm256_xor_pd(t, neg_even()));
    }
    double bre = hsum(accr), bim = hsum(acci);
    for (; i < end; ++i) {
      bre += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
      bim += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    re += bre;
    im += bim;
  }
  return {re, im};
}

cd dotu_v(const cd* x, const cd* y, std::size_t n) {
  auto* xp = reinterpret_cast<const double*>(x);
  auto* yp = reinterpret_cast<const double*>(y);
  double re = 0, im = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    for (; i + 2 <= end; i += 2) {
      __m256d xv = _mm256_loadu_pd(xp + 2 * i);
      __m256d yv = _mm256_loadu_pd(yp + 2 * i);
      // xr*yr | xi*yi, odd lane negated: sum -> xr*yr - xi*yi
      __m256d t = _mm256_mul_pd(xv, yv);
      accr = _mm256_add_pd(accr, _mm256_xor_pd(t, _mm256_setr_pd(0.0, -0.0, 0.0, -0.0)));
      acci = _mm256_fmadd_pd(swap_reim(xv), yv, acci);  // xi*yr | xr*yi
    }
    double bre = hsum(accr), bim = hsum(acci);
    for (; i < end; ++i) {
      bre += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
      bim += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    re += bre;
    im += bim;
  }
  return {re, im};
}

double nrm2sq_v(const cd* x, std::size_t n) {
  auto* xp = reinterpret_cast<const double*>(x);
  double acc = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    __m256d a = _mm256_setzero_pd();
    for (; i + 2 <= end; i += 2) {
      __m256d xv = _mm256_loadu_pd(xp + 2 * i);
      a = _mm256_fmadd_pd(xv, xv, a);
    }
    double b = hsum(a);
    for (; i < end; ++i)
      b += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    acc += b;
  }
  return acc;
}

double wnrm2sq_v(const double* w, const cd* x, std::size_t n) {
  auto* xp = reinterpret_cast<const double*>(x);
  double acc = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    __m256d a = _mm256_setzero_pd();
    for (; i + 2 <= end; i += 2) {
      __m128d wl = _mm_loadu_pd(w + i);  // [w0, w1]
      __m256d wv = _mm256_set_m128d(wl, wl);
      wv = _mm256_permute4x64_pd(wv, _MM_SHUFFLE(3, 1, 2, 0));  // w0 w0 w1 w1
      __m256d xv = _mm256_loadu_pd(xp + 2 * i);
      a = _mm256_fmadd_pd(_mm256_mul_pd(xv, xv), wv, a);
    }
    double b = hsum(a);
    for (; i < end; ++i)
      b += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    acc += b;
  }
  return acc;
}

void stencil3_v(double* out, const double* v, const double* dd,
                const double* ll, const double* uu, std::size_t n2) {
  if (n2 < 8) {
    scalar_ops().stencil3(out, v, dd, ll, uu, n2);
    return;
  }
  out[0] += dd[0] * v[0] + uu[0] * v[2];
  out[1] += dd[1] * v[1] + uu[1] * v[3];
  std::size_t k = 2;
  for (; k + 4 <= n2 - 2; k += 4) {
    __m256d acc = _mm256_loadu_pd(out + k);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(dd + k), _mm256_loadu_pd(v + k), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(ll + k), _mm256_loadu_pd(v + k - 2), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(uu + k), _mm256_loadu_pd(v + k + 2), acc);
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < n2 - 2; ++k)
    out[k] += dd[k] * v[k] + ll[k] * v[k - 2] + uu[k] * v[k + 2];
  out[n2 - 2] += dd[n2 - 2] * v[n2 - 2] + ll[n2 - 2] * v[n2 - 4];
  out[n2 - 1] += dd[n2 - 1] * v[n2 - 1] + ll[n2 - 1] * v[n2 - 3];
}

void acc3_v(double* out, double clo, const double* a, double cmid,
            const double* b, double chi, const double* c, std::size_t n2) {
  const __m256d vlo = _mm256_set1_pd(clo);
  const __m256d vmid = _mm256_set1_pd(cmid);
  const __m256d vhi = _mm256_set1_pd(chi);
  std::size_t k = 0;
  for (; k + 4 <= n2; k += 4) {
    __m256d acc = _mm256_loadu_pd(out + k);
    acc = _mm256_fmadd_pd(vmid, _mm256_loadu_pd(b + k), acc);
    if (a) acc = _mm256_fmadd_pd(vlo, _mm256_loadu_pd(a + k), acc);
    if (c) acc = _mm256_fmadd_pd(vhi, _mm256_loadu_pd(c + k), acc);
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < n2; ++k) {
    double t = cmid * b[k];
    if (a) t += clo * a[k];
    if (c) t += chi * c[k];
    out[k] += t;
  }
}

constexpr Ops avx2_table = {
    "avx2",   cmul_v,   axpy_v,    scal_v,     dotc_v,
    dotu_v,   nrm2sq_v, wnrm2sq_v, stencil3_v, acc3_v,
};

}  // namespace

const Ops* avx2_ops() { return &avx2_table; }

}  // namespace gpev::kernels

#else

namespace gpev::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace gpev::kernels

#endif
