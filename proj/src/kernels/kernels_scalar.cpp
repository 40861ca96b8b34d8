#include "gpev/kernels.hpp"

namespace gpev::kernels {
namespace {

void cmul_s(cd* z, const cd* f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] *= f[i];
}

void axpy_s(cd a, const cd* x, cd* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_s(double a, cd* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cd dotc_s(const cd* x, const cd* y, std::size_t n) {
  double re = 0, im = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    double bre = 0, bim = 0;
    for (; i < end; ++i) {
      bre += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
      bim += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    re += bre;
    im += bim;
  }
  return {re, im};
}

cd dotu_s(const cd* x, const cd* y, std::size_t n) {
  double re = 0, im = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    double bre = 0, bim = 0;
    for (; i < end; ++i) {
      bre += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
      bim += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    re += bre;
    im += bim;
  }
  return {re, im};
}

double nrm2sq_s(const cd* x, std::size_t n) {
  double acc = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    double b = 0;
    for (; i < end; ++i)
      b += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    acc += b;
  }
  return acc;
}

double wnrm2sq_s(const double* w, const cd* x, std::size_t n) {
  double acc = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i + reduction_block;
    if (end > n) end = n;
    double b = 0;
    for (; i < end; ++i)
      b += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    acc += b;
  }
  return acc;
}

void stencil3_s(double* out, const double* v, const double* dd,
                const double* ll, const double* uu, std::size_t n2) {
  if (n2 < 6) {
    for (std::size_t k = 0; k < n2; ++k) {
      double t = dd[k] * v[k];
      if (k >= 2) t += ll[k] * v[k - 2];
      if (k + 2 < n2) t += uu[k] * v[k + 2];
      out[k] += t;
    }
    return;
  }
  out[0] += dd[0] * v[0] + uu[0] * v[2];
  out[1] += dd[1] * v[1] + uu[1] * v[3];
  for (std::size_t k = 2; k < n2 - 2; ++k)
    out[k] += dd[k] * v[k] + ll[k] * v[k - 2] + uu[k] * v[k + 2];
  out[n2 - 2] += dd[n2 - 2] * v[n2 - 2] + ll[n2 - 2] * v[n2 - 4];
  out[n2 - 1] += dd[n2 - 1] * v[n2 - 1] + ll[n2 - 1] * v[n2 - 3];
}

void acc3_s(double* out, double clo, const double* a, double cmid,
            const double* b, double chi, const double* c, std::size_t n2) {
  if (a && c) {
    for (std::size_t k = 0; k < n2; ++k)
      out[k] += clo * a[k] + cmid * b[k] + chi * c[k];
  } else if (a) {
    for (std::size_t k = 0; k < n2; ++k) out[k] += clo * a[k] + cmid * b[k];
  } else if (c) {
    for (std::size_t k = 0; k < n2; ++k) out[k] += cmid * b[k] + chi * c[k];
  } else {
    for (std::size_t k = 0; k < n2; ++k) out[k] += cmid * b[k];
  }
}

constexpr Ops scalar_table = {
    "scalar", cmul_s,   axpy_s,    scal_s,     dotc_s,
    dotu_s,   nrm2sq_s, wnrm2sq_s, stencil3_s, acc3_s,
};

}  // namespace

const Ops& scalar_ops() { return scalar_table; }

}  // namespace gpev::kernels
