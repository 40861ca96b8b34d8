#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "gpev/kernels.hpp"

using gpev::kernels::cd;

namespace {

std::vector<cd> random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cd> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.1, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar and simd variants agree") {
  const auto& sc = gpev::kernels::scalar_ops();
  const auto* vx = gpev::kernels::avx2_ops();
  if (!vx) {
    MESSAGE("no SIMD backend on this host; scalar-only");
    return;
  }
  // odd sizes exercise the vector-loop tails
  for (std::size_t n : {1u, 2u, 7u, 64u, 1023u, 1024u, 1025u, 4097u}) {
    auto x = random_field(n, 1);
    auto y = random_field(n, 2);
    auto f = random_field(n, 3);
    auto w = random_real(n, 4);

    auto z1 = x, z2 = x;
    sc.cmul(z1.data(), f.data(), n);
    vx->cmul(z2.data(), f.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(z1[i] - z2[i]) <= 1e-15 * (1 + std::abs(z1[i])));

    auto y1 = y, y2 = y;
    const cd alpha{0.3, -1.7};
    sc.axpy(alpha, x.data(), y1.data(), n);
    vx->axpy(alpha, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1 + std::abs(y1[i])));

    auto s1 = x, s2 = x;
    sc.scal(0.731, s1.data(), n);
    vx->scal(0.731, s2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(s1[i] == s2[i]);

    cd d1 = sc.dotc(x.data(), y.data(), n);
    cd d2 = vx->dotc(x.data(), y.data(), n);
    CHECK(std::abs(d1 - d2) <= 1e-12 * (1 + std::abs(d1)));

    cd u1 = sc.dotu(x.data(), y.data(), n);
    cd u2 = vx->dotu(x.data(), y.data(), n);
    CHECK(std::abs(u1 - u2) <= 1e-12 * (1 + std::abs(u1)));

    CHECK(sc.nrm2sq(x.data(), n) ==
          doctest::Approx(vx->nrm2sq(x.data(), n)).epsilon(1e-13));
    CHECK(sc.wnrm2sq(w.data(), x.data(), n) ==
          doctest::Approx(vx->wnrm2sq(w.data(), x.data(), n)).epsilon(1e-13));
  }
}

TEST_CASE("stencil3 and acc3 variants agree") {
  const auto& sc = gpev::kernels::scalar_ops();
  const auto* vx = gpev::kernels::avx2_ops();
  if (!vx) return;
  for (std::size_t n : {3u, 8u, 33u, 201u}) {
    const std::size_t n2 = 2 * n;
    auto v = random_real(n2, 11);
    auto dd = random_real(n2, 12);
    auto ll = random_real(n2, 13);
    auto uu = random_real(n2, 14);
    ll[0] = ll[1] = 0.0;
    uu[n2 - 2] = uu[n2 - 1] = 0.0;
    auto o1 = random_real(n2, 15);
    auto o2 = o1;
    sc.stencil3(o1.data(), v.data(), dd.data(), ll.data(), uu.data(), n2);
    vx->stencil3(o2.data(), v.data(), dd.data(), ll.data(), uu.data(), n2);
    for (std::size_t k = 0; k < n2; ++k)
      CHECK(o1[k] == doctest::Approx(o2[k]).epsilon(1e-14));

    auto a = random_real(n2, 16);
    auto b = random_real(n2, 17);
    auto c = random_real(n2, 18);
    auto p1 = o1, p2 = o1;
    sc.acc3(p1.data(), 0.5, a.data(), -1.25, b.data(), 2.0, c.data(), n2);
    vx->acc3(p2.data(), 0.5, a.data(), -1.25, b.data(), 2.0, c.data(), n2);
    for (std::size_t k = 0; k < n2; ++k)
      CHECK(p1[k] == doctest::Approx(p2[k]).epsilon(1e-14));

    // boundary-row form with a null neighbor
    auto q1 = o1, q2 = o1;
    sc.acc3(q1.data(), 0.0, nullptr, -1.25, b.data(), 2.0, c.data(), n2);
    vx->acc3(q2.data(), 0.0, nullptr, -1.25, b.data(), 2.0, c.data(), n2);
    for (std::size_t k = 0; k < n2; ++k)
      CHECK(q1[k] == doctest::Approx(q2[k]).epsilon(1e-14));
  }
}

TEST_CASE("reductions are blockwise deterministic") {
  auto x = random_field(5000, 21);
  auto y = random_field(5000, 22);
  const auto& ops = gpev::kernels::active();
  cd a = ops.dotc(x.data(), y.data(), x.size());
  cd b = ops.dotc(x.data(), y.data(), x.size());
  CHECK(a == b);
}

TEST_CASE("select by name") {
  CHECK_THROWS(gpev::kernels::select("no-such-backend"));
  gpev::kernels::select("scalar");
  CHECK(std::string(gpev::kernels::active().name) == "scalar");
  gpev::kernels::select_auto();
}

}  // TEST_SUITE
