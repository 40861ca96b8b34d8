#pragma once

#include <complex>
#include <cstddef>

namespace gpev::kernels {

using cd = std::complex<double>;

/// Reduction kernels accumulate in fixed-size blocks so that results do not
/// depend on how a caller partitions work across threads.
inline constexpr std::size_t reduction_block = 1024;

/// Function table for the data-parallel inner loops. One scalar reference
/// implementation always exists; vector variants are selected at runtime.
///
/// The stencil kernels view complex arrays as interleaved doubles of length
/// 2n with coefficient arrays duplicated per re/im lane.
struct Ops {
  const char* name;

  void (*cmul)(cd* z, const cd* f, std::size_t n);            // z[i] *= f[i]
  void (*axpy)(cd a, const cd* x, cd* y, std::size_t n);      // y[i] += a*x[i]
  void (*scal)(double a, cd* x, std::size_t n);               // x[i] *= a
  cd (*dotc)(const cd* x, const cd* y, std::size_t n);        // sum conj(x)*y
  cd (*dotu)(const cd* x, const cd* y, std::size_t n);        // sum x*y
  double (*nrm2sq)(const cd* x, std::size_t n);               // sum |x|^2
  double (*wnrm2sq)(const double* w, const cd* x, std::size_t n);  // sum w|x|^2

  // out[k] += dd[k]*v[k] + ll[k]*v[k-2] + uu[k]*v[k+2], k = 0..n2-1 over
  // interleaved doubles; ll[0..1] and uu[n2-2..n2-1] must be zero.
  void (*stencil3)(double* out, const double* v, const double* dd,
                   const double* ll, const double* uu, std::size_t n2);
  // out[k] += clo*a[k] + cmid*b[k] + chi*c[k] over doubles. Any of a/c may be
  // null (coefficient then ignored), for boundary rows.
  void (*acc3)(double* out, double clo, const double* a, double cmid,
               const double* b, double chi, const double* c, std::size_t n2);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when the CPU or build lacks AVX2+FMA

/// Currently active table. Auto-selected on first use (honors the
/// GPEV_KERNELS environment variable: "scalar" or "avx2").
const Ops& active();

/// Force a backend by name; throws std::invalid_argument if unknown or
/// unavailable. Intended for tests and benchmarking.
void select(const char* name);
void select_auto();

}  // namespace gpev::kernels
