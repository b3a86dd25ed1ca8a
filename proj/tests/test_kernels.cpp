#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "afc/kernels.hpp"

using namespace afc::kernels;

namespace {

// Sizes chosen to hit empty, sub-vector, unaligned-tail and bulk paths.
const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 13, 64, 257, 1000};

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double lo,
                               double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<cplx> random_cvec(std::size_t n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(u(rng), u(rng));
  return v;
}

bool close_rel(double a, double b, double tol) {
  const double m = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * m;
}

// The non-scalar backend on this host, if any.
bool alt_backend(Backend& out) {
  if (backend_available(Backend::avx2)) {
    out = Backend::avx2;
    return true;
  }
  if (backend_available(Backend::neon)) {
    out = Backend::neon;
    return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dispatch: scalar always available, switching works") {
  CHECK(backend_available(Backend::scalar));
  const Backend before = active_backend();
  set_active_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  CHECK(&ops() == &table(Backend::scalar));
  set_active_backend(before);
  CHECK(std::string(backend_name(Backend::scalar)) == "scalar");
}

TEST_CASE("dispatch: unavailable backend throws") {
#if defined(__x86_64__) || defined(_M_X64)
  CHECK_THROWS_AS(set_active_backend(Backend::neon), std::invalid_argument);
#else
  CHECK_THROWS_AS(set_active_backend(Backend::avx2), std::invalid_argument);
#endif
}

TEST_CASE("semantics: peak accumulators") {
  const auto& k = table(Backend::scalar);
  std::vector<double> nu = {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  std::vector<double> out(nu.size(), 1.0);  // += on top of existing content
  double c = 0.0;

  SUBCASE("gaussian: peak value and half maximum") {
    k.accum_peaks_gaussian(out.data(), nu.data(), nu.size(), &c, nullptr, 1,
                           1.0, 3.0);
    CHECK(out[2] == doctest::Approx(4.0));              // 1 + amp at center
    CHECK(out[1] == doctest::Approx(1.0 + 1.5));        // half max at +-fwhm/2
    CHECK(out[3] == doctest::Approx(1.0 + 1.5));
  }
  SUBCASE("lorentzian: half maximum at +-fwhm/2") {
    k.accum_peaks_lorentzian(out.data(), nu.data(), nu.size(), &c, nullptr, 1,
                             1.0, 3.0);
    CHECK(out[2] == doctest::Approx(4.0));
    CHECK(out[1] == doctest::Approx(2.5));
    CHECK(out[5] == doctest::Approx(1.0 + 3.0 / 17.0));  // x=2: 1/(1+16)
  }
  SUBCASE("square: inclusive edges") {
    k.accum_peaks_square(out.data(), nu.data(), nu.size(), &c, nullptr, 1, 1.0,
                         3.0);
    CHECK(out[1] == 4.0);
    CHECK(out[2] == 4.0);
    CHECK(out[3] == 4.0);
    CHECK(out[0] == 1.0);
    CHECK(out[4] == 1.0);
  }
  SUBCASE("per-peak weights override amp") {
    std::vector<double> centers = {-0.5, 0.5};
    std::vector<double> w = {2.0, 5.0};
    k.accum_peaks_square(out.data(), nu.data(), nu.size(), centers.data(),
                         w.data(), 2, 0.25, 99.0);
    CHECK(out[1] == 3.0);
    CHECK(out[3] == 6.0);
  }
}

TEST_CASE("semantics: lorentzian_line") {
  const auto& k = table(Backend::scalar);
  std::vector<double> nu = {-5.0, 0.0, 5.0, 45.0};
  std::vector<double> out(nu.size(), 0.0);
  k.lorentzian_line(out.data(), nu.data(), nu.size(), 0.0, 10.0, 9.1);
  CHECK(out[1] == doctest::Approx(9.1));
  CHECK(out[0] == doctest::Approx(4.55));
  CHECK(out[2] == doctest::Approx(4.55));
  CHECK(out[3] == doctest::Approx(9.1 * 25.0 / 2050.0));  // far wing
}

TEST_CASE("semantics: cavity_reflection vs std::complex arithmetic") {
  const auto& k = table(Backend::scalar);
  const auto a = random_cvec(37, 11, 0.95);
  const double r1 = 0.8944271909999159, r2 = 0.9984988733093293;
  const double tc = std::sqrt((1.0 - 0.8) * (1.0 - 0.997));
  std::vector<cplx> r(a.size()), t(a.size());
  k.cavity_reflection(r.data(), t.data(), a.data(), a.size(), r1, r2, tc);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx a2 = a[i] * a[i];
    const cplx den = 1.0 - r1 * r2 * a2;
    const cplx want_r = (-r1 + r2 * a2) / den;
    const cplx want_t = tc * a[i] / den;
    CHECK(std::abs(r[i] - want_r) < 1e-14);
    CHECK(std::abs(t[i] - want_t) < 1e-14);
  }
}

TEST_CASE("semantics: known reflection magnitude for matched-ish depth") {
  // |r|^2 for R1=0.8, R2=0.997 and a real single-pass a^2 = e^{-0.223}
  const auto& k = table(Backend::scalar);
  const cplx a(std::exp(-0.5 * 0.223), 0.0);
  cplx r;
  k.cavity_reflection(&r, nullptr, &a, 1, std::sqrt(0.8), std::sqrt(0.997),
                      0.0);
  CHECK(std::norm(r) == doctest::Approx(0.11197733739881889).epsilon(1e-12));
}

TEST_CASE("semantics: rotate90 touches only [i0, i1)") {
  const auto& k = table(Backend::scalar);
  std::vector<cplx> buf = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  auto expect = buf;
  k.rotate90(buf.data(), 1, 3, +1);
  expect[1] = cplx(-4, 3);
  expect[2] = cplx(-6, 5);
  CHECK(buf == expect);
  k.rotate90(buf.data(), 1, 3, -1);
  CHECK(buf[1] == cplx(3, 4));
  CHECK(buf[2] == cplx(5, 6));
}

TEST_CASE("semantics: pump_window moves population only inside the window") {
  const auto& k = table(Backend::scalar);
  std::vector<double> det = {-2.0, -1.0, 0.0, 1.0, 2.0};
  std::vector<double> src(det.size(), 1.0), tgt(det.size(), 0.25);
  k.pump_window(src.data(), tgt.data(), det.data(), det.size(), -1.0, 1.0, 0.8);
  CHECK(src[0] == 1.0);
  CHECK(src[4] == 1.0);
  CHECK(src[2] == doctest::Approx(0.2));
  CHECK(tgt[2] == doctest::Approx(1.05));
  CHECK(tgt[0] == 0.25);
  // conservation inside the window
  CHECK(src[1] + tgt[1] == doctest::Approx(1.25));
}

TEST_CASE("semantics: relax_excited applies branching and empties e") {
  const auto& k = table(Backend::scalar);
  const double b[9] = {0.5, 0.3, 0.2, 0.1, 0.8, 0.1, 0.25, 0.25, 0.5};
  std::vector<double> g1 = {0.1}, g2 = {0.2}, g3 = {0.3};
  std::vector<double> e1 = {0.6}, e2 = {0.9}, e3 = {0.12};
  k.relax_excited(g1.data(), g2.data(), g3.data(), e1.data(), e2.data(),
                  e3.data(), 1, b);
  CHECK(g1[0] == doctest::Approx(0.1 + 0.5 * 0.6 + 0.1 * 0.9 + 0.25 * 0.12));
  CHECK(g2[0] == doctest::Approx(0.2 + 0.3 * 0.6 + 0.8 * 0.9 + 0.25 * 0.12));
  CHECK(g3[0] == doctest::Approx(0.3 + 0.2 * 0.6 + 0.1 * 0.9 + 0.5 * 0.12));
  CHECK(e1[0] == 0.0);
  CHECK(e2[0] == 0.0);
  CHECK(e3[0] == 0.0);
  CHECK(g1[0] + g2[0] + g3[0] ==
        doctest::Approx(0.1 + 0.2 + 0.3 + 0.6 + 0.9 + 0.12).epsilon(1e-14));
}

TEST_CASE("semantics: group_index_stencil matches a hand stencil") {
  const auto& k = table(Backend::scalar);
  const auto dn = random_vec(16, 3, -1e-5, 1e-5);
  const auto nu = random_vec(16, 4, -1e6, 1e6);
  std::vector<double> ng(16, -1.0);
  k.group_index_stencil(ng.data(), dn.data(), nu.data(), 16, 1.8, 4.9e14, 0.5);
  for (std::size_t i = 1; i + 1 < 16; ++i) {
    const double want =
        1.8 + dn[i] + (4.9e14 + nu[i]) * ((dn[i + 1] - dn[i - 1]) * 0.5);
    CHECK(ng[i] == want);
  }
  CHECK(ng[0] == -1.0);   // edges untouched
  CHECK(ng[15] == -1.0);
}

// ---- backend equivalence -------------------------------------------------- //

TEST_CASE("equivalence: bit-exact kernels agree across backends") {
  Backend alt;
  if (!alt_backend(alt)) {
    MESSAGE("no SIMD backend on this host; skipping");
    return;
  }
  const auto& ks = table(Backend::scalar);
  const auto& kv = table(alt);

  for (const std::size_t n : kSizes) {
    CAPTURE(n);
    const auto nu = random_vec(n, 100 + n, -5e6, 5e6);
    const auto centers = random_vec(7, 17, -4e6, 4e6);
    const auto w = random_vec(7, 18, 0.1, 2.0);

    {
      auto a = random_vec(n, 19, 0.0, 1.0);
      auto b = a;
      ks.accum_peaks_lorentzian(a.data(), nu.data(), n, centers.data(),
                                w.data(), 7, 1.3e6, 0.0);
      kv.accum_peaks_lorentzian(b.data(), nu.data(), n, centers.data(),
                                w.data(), 7, 1.3e6, 0.0);
      CHECK(a == b);
    }
    {
      auto a = random_vec(n, 20, 0.0, 1.0);
      auto b = a;
      ks.accum_peaks_square(a.data(), nu.data(), n, centers.data(), nullptr, 7,
                            2.5e6, 0.7);
      kv.accum_peaks_square(b.data(), nu.data(), n, centers.data(), nullptr, 7,
                            2.5e6, 0.7);
      CHECK(a == b);
    }
    {
      std::vector<double> a(n, 0.0), b(n, 0.0);
      ks.lorentzian_line(a.data(), nu.data(), n, 1e5, 1e7, 9.1);
      kv.lorentzian_line(b.data(), nu.data(), n, 1e5, 1e7, 9.1);
      CHECK(a == b);
    }
    {
      const auto x = random_cvec(n, 21, 0.97);
      std::vector<cplx> r1v(n), t1v(n), r2v(n), t2v(n);
      ks.cavity_reflection(r1v.data(), t1v.data(), x.data(), n, 0.89, 0.998,
                           0.077);
      kv.cavity_reflection(r2v.data(), t2v.data(), x.data(), n, 0.89, 0.998,
                           0.077);
      CHECK(r1v == r2v);
      CHECK(t1v == t2v);
      // null-transmission variant
      ks.cavity_reflection(r1v.data(), nullptr, x.data(), n, 0.89, 0.998, 0.0);
      kv.cavity_reflection(r2v.data(), nullptr, x.data(), n, 0.89, 0.998, 0.0);
      CHECK(r1v == r2v);
    }
    {
      auto a = random_cvec(n, 22, 3.0);
      auto b = a;
      const std::size_t i0 = n / 4, i1 = n - n / 4;
      ks.rotate90(a.data(), i0, i1, +1);
      kv.rotate90(b.data(), i0, i1, +1);
      CHECK(a == b);
      ks.rotate90(a.data(), i0, i1, -1);
      kv.rotate90(b.data(), i0, i1, -1);
      CHECK(a == b);
    }
    {
      const auto x = random_cvec(n, 23, 2.0);
      std::vector<double> a(n), b(n);
      ks.abs2(a.data(), x.data(), n);
      kv.abs2(b.data(), x.data(), n);
      CHECK(a == b);
    }
    {
      const auto dn = random_vec(n, 24, -1e-4, 1e-4);
      std::vector<double> a(n, 7.0), b(n, 7.0);
      ks.group_index_stencil(a.data(), dn.data(), nu.data(), n, 1.8, 4.9e14,
                             1e-3);
      kv.group_index_stencil(b.data(), dn.data(), nu.data(), n, 1.8, 4.9e14,
                             1e-3);
      CHECK(a == b);
    }
    {
      auto s1 = random_vec(n, 25, 0.0, 1.0);
      auto t1v = random_vec(n, 26, 0.0, 0.1);
      auto s2 = s1;
      auto t2v = t1v;
      ks.pump_window(s1.data(), t1v.data(), nu.data(), n, -2e6, 2e6, 0.95);
      kv.pump_window(s2.data(), t2v.data(), nu.data(), n, -2e6, 2e6, 0.95);
      CHECK(s1 == s2);
      CHECK(t1v == t2v);
    }
    {
      const double b9[9] = {0.5, 0.3, 0.2, 0.1, 0.8, 0.1, 0.25, 0.25, 0.5};
      auto g1a = random_vec(n, 27, 0.0, 1.0), g2a = random_vec(n, 28, 0.0, 1.0),
           g3a = random_vec(n, 29, 0.0, 1.0), e1a = random_vec(n, 30, 0.0, 1.0),
           e2a = random_vec(n, 31, 0.0, 1.0), e3a = random_vec(n, 32, 0.0, 1.0);
      auto g1b = g1a, g2b = g2a, g3b = g3a, e1b = e1a, e2b = e2a, e3b = e3a;
      ks.relax_excited(g1a.data(), g2a.data(), g3a.data(), e1a.data(),
                       e2a.data(), e3a.data(), n, b9);
      kv.relax_excited(g1b.data(), g2b.data(), g3b.data(), e1b.data(),
                       e2b.data(), e3b.data(), n, b9);
      CHECK(g1a == g1b);
      CHECK(g2a == g2b);
      CHECK(g3a == g3b);
    }
  }
}

TEST_CASE("equivalence: exp/sincos kernels agree to a few ulp") {
  Backend alt;
  if (!alt_backend(alt)) {
    MESSAGE("no SIMD backend on this host; skipping");
    return;
  }
  const auto& ks = table(Backend::scalar);
  const auto& kv = table(alt);
  const double tol = 1e-13;

  for (const std::size_t n : kSizes) {
    CAPTURE(n);
    const auto nu = random_vec(n, 200 + n, -5e6, 5e6);
    const auto centers = random_vec(9, 41, -4e6, 4e6);
    {
      auto a = random_vec(n, 42, 0.0, 1.0);
      auto b = a;
      ks.accum_peaks_gaussian(a.data(), nu.data(), n, centers.data(), nullptr,
                              9, 1.1e6, 0.8);
      kv.accum_peaks_gaussian(b.data(), nu.data(), n, centers.data(), nullptr,
                              9, 1.1e6, 0.8);
      for (std::size_t i = 0; i < n; ++i) CHECK(close_rel(a[i], b[i], tol));
    }
    {
      const auto d = random_vec(n, 43, 0.0, 20.0);
      const auto ph = random_vec(n, 44, -40.0, 40.0);
      std::vector<cplx> a(n), b(n);
      ks.complex_exp_field(a.data(), d.data(), ph.data(), n);
      kv.complex_exp_field(b.data(), d.data(), ph.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(close_rel(a[i].real(), b[i].real(), tol));
        CHECK(close_rel(a[i].imag(), b[i].imag(), tol));
      }
    }
    {
      const auto x = random_cvec(n, 45, 2.0);
      CHECK(close_rel(ks.energy(x.data(), n), kv.energy(x.data(), n), tol));
    }
  }
}

TEST_CASE("vectorized exp/sincos stay accurate against libm") {
  Backend alt;
  if (!alt_backend(alt)) {
    MESSAGE("no SIMD backend on this host; skipping");
    return;
  }
  const auto& kv = table(alt);
  const std::size_t n = 4096;
  const auto d = random_vec(n, 50, 0.0, 40.0);
  const auto ph = random_vec(n, 51, -100.0, 100.0);
  std::vector<cplx> got(n);
  kv.complex_exp_field(got.data(), d.data(), ph.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::exp(-0.5 * d[i]);
    CHECK(close_rel(got[i].real(), mag * std::cos(ph[i]), 1e-13));
    CHECK(close_rel(got[i].imag(), mag * std::sin(ph[i]), 1e-13));
  }
}
