#include <doctest.h>

#include <cmath>
#include <fstream>

#include "fixtures.hpp"
#include "lgce/errors.hpp"
#include "lgce/metrics.hpp"
#include "lgce/rng.hpp"
#include "reference.hpp"

using namespace lgce;

namespace {

const std::vector<RdPoint> kAnchor{{100, 30}, {200, 33}, {400, 36}, {800, 39}};

std::vector<RdPoint> shifted_psnr(const std::vector<RdPoint>& c, double d) {
  auto out = c;
  for (auto& p : out) p.psnr += d;
  return out;
}

// Independent oracle: Lagrange interpolants through the four points,
// integrated with the trapezoid rule.
double oracle_bd_rate(const std::vector<RdPoint>& a, const std::vector<RdPoint>& t) {
  std::vector<double> pa, ra, pt, rt;
  for (const auto& p : a) pa.push_back(p.psnr), ra.push_back(std::log10(p.rate));
  for (const auto& p : t) pt.push_back(p.psnr), rt.push_back(std::log10(p.rate));
  const double lo = std::max(*std::min_element(pa.begin(), pa.end()), *std::min_element(pt.begin(), pt.end()));
  const double hi = std::min(*std::max_element(pa.begin(), pa.end()), *std::max_element(pt.begin(), pt.end()));
  const double ia = ref::trapezoid([&](double x) { return ref::lagrange(pa, ra, x); }, lo, hi, 10000);
  const double it = ref::trapezoid([&](double x) { return ref::lagrange(pt, rt, x); }, lo, hi, 10000);
  return (std::pow(10.0, (it - ia) / (hi - lo)) - 1.0) * 100.0;
}

double oracle_bd_psnr(const std::vector<RdPoint>& a, const std::vector<RdPoint>& t) {
  std::vector<double> pa, ra, pt, rt;
  for (const auto& p : a) pa.push_back(p.psnr), ra.push_back(std::log10(p.rate));
  for (const auto& p : t) pt.push_back(p.psnr), rt.push_back(std::log10(p.rate));
  const double lo = std::max(ra.front(), rt.front());
  const double hi = std::min(ra.back(), rt.back());
  const double ia = ref::trapezoid([&](double x) { return ref::lagrange(ra, pa, x); }, lo, hi, 10000);
  const double it = ref::trapezoid([&](double x) { return ref::lagrange(rt, pt, x); }, lo, hi, 10000);
  return (it - ia) / (hi - lo);
}

}  // namespace

TEST_CASE("PSNR analytic cases") {
  const Plane a(8, 8, 100);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(psnr(a, Plane(8, 8, 101)) == doctest::Approx(48.1308).epsilon(1e-6));
  CHECK(std::abs(psnr(a, Plane(8, 8, 101)) - 20.0 * std::log10(255.0)) < 1e-12);
  CHECK(std::abs(psnr(Plane(4, 4, 0), Plane(4, 4, 255))) < 1e-12);
  CHECK_THROWS_AS(psnr(a, Plane(8, 7, 100)), ShapeError);
}

TEST_CASE("PSNR is symmetric, non-negative and matches the oracle") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Plane a(16, 16), b(16, 16);
    for (auto& s : a.samples) s = static_cast<std::uint8_t>(rng.uniform_index(256));
    for (auto& s : b.samples) s = static_cast<std::uint8_t>(rng.uniform_index(256));
    CHECK(psnr(a, b) == psnr(b, a));
    CHECK(psnr(a, b) >= 0.0);
    CHECK(psnr(a, b) == doctest::Approx(ref::psnr(a.samples, b.samples)).epsilon(1e-12));
  }
}

TEST_CASE("delta PSNR") {
  Rng rng(2);
  Plane orig(16, 16), base(16, 16), enh(16, 16);
  for (std::size_t i = 0; i < orig.samples.size(); ++i) {
    orig.samples[i] = static_cast<std::uint8_t>(rng.uniform_index(200) + 20);
    base.samples[i] = static_cast<std::uint8_t>(orig.samples[i] + rng.uniform_index(11) - 5);
    enh.samples[i] = static_cast<std::uint8_t>(orig.samples[i] + rng.uniform_index(5) - 2);
  }
  CHECK(delta_psnr(base, base, orig) == 0.0);
  CHECK(std::isinf(delta_psnr(orig, base, orig)));
  CHECK(delta_psnr(enh, base, orig) == doctest::Approx(psnr(enh, orig) - psnr(base, orig)));
}

TEST_CASE("cubic fit reproduces a cubic and integrates exactly") {
  const std::vector<double> x{1, 2, 3.5, 5, 7};
  std::vector<double> y;
  auto f = [](double v) { return 2.0 - 0.5 * v + 0.25 * v * v - 0.03 * v * v * v; };
  for (double v : x) y.push_back(f(v));
  const CubicFit fit = fit_cubic(x, y);
  for (double v : {1.5, 4.0, 6.9}) CHECK(fit(v) == doctest::Approx(f(v)).epsilon(1e-10));
  auto antiderivative = [](double v) { return 2.0 * v - 0.25 * v * v + 0.25 / 3.0 * v * v * v - 0.0075 * v * v * v * v; };
  CHECK(fit.integral(1.2, 6.3) == doctest::Approx(antiderivative(6.3) - antiderivative(1.2)).epsilon(1e-10));
  CHECK_THROWS_AS(fit_cubic(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), DataError);
  CHECK_THROWS_AS(fit_cubic(std::vector<double>{1, 1, 2, 2}, std::vector<double>{1, 2, 3, 4}), DataError);
}

TEST_CASE("BD-rate analytic cases") {
  CHECK(std::abs(bd_rate(kAnchor, kAnchor)) < 1e-12);
  auto scaled = kAnchor;
  for (auto& p : scaled) p.rate *= 1.1;
  CHECK(std::abs(bd_rate(kAnchor, scaled) - 10.0) < 1e-6);
}

TEST_CASE("BD-rate fixture matches the trapezoid oracle") {
  const auto test_curve = shifted_psnr(kAnchor, 1.0);
  const double got = bd_rate(kAnchor, test_curve);
  CHECK(std::abs(got - oracle_bd_rate(kAnchor, test_curve)) < 0.01);
  CHECK(got == doctest::Approx((std::pow(2.0, -1.0 / 3.0) - 1.0) * 100.0).epsilon(1e-9));

  const std::vector<RdPoint> curved{{120, 31.2}, {260, 33.9}, {490, 36.4}, {1010, 38.1}};
  CHECK(std::abs(bd_rate(kAnchor, curved) - oracle_bd_rate(kAnchor, curved)) < 0.01);
  CHECK(std::abs(bd_psnr(kAnchor, curved) - oracle_bd_psnr(kAnchor, curved)) < 0.001);
}

TEST_CASE("BD-PSNR cases") {
  CHECK(std::abs(bd_psnr(kAnchor, kAnchor)) < 1e-12);
  CHECK(bd_psnr(kAnchor, shifted_psnr(kAnchor, 0.5)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("BD identities") {
  const std::vector<RdPoint> b{{150, 31}, {280, 33.5}, {520, 36.2}, {900, 38.4}, {1500, 40.0}};
  CHECK(bd_psnr(kAnchor, b) == -bd_psnr(b, kAnchor));
  const double ab = bd_rate(kAnchor, b), ba = bd_rate(b, kAnchor);
  CHECK(std::abs((1 + ab / 100) * (1 + ba / 100) - 1.0) < 1e-9);
  for (double k : {0.001, 3.0, 1e4}) {
    auto a2 = kAnchor, b2 = b;
    for (auto& p : a2) p.rate *= k;
    for (auto& p : b2) p.rate *= k;
    CHECK(bd_rate(a2, b2) == doctest::Approx(ab).epsilon(1e-9));
  }
}

TEST_CASE("BD input validation") {
  const std::vector<RdPoint> three{{100, 30}, {200, 33}, {400, 36}};
  CHECK_THROWS_AS(bd_rate(kAnchor, three), DataError);
  const std::vector<RdPoint> disjoint{{100, 50}, {200, 52}, {400, 54}, {800, 56}};
  CHECK_THROWS_AS(bd_rate(kAnchor, disjoint), DataError);
  // Points may arrive in QP order; they are sorted by rate, but repeated
  // rates are rejected.
  const std::vector<RdPoint> reversed{kAnchor.rbegin(), kAnchor.rend()};
  CHECK(bd_rate(kAnchor, reversed) == 0.0);
  const std::vector<RdPoint> repeated{{100, 30}, {100, 33}, {400, 36}, {800, 39}};
  CHECK_THROWS_AS(bd_rate(kAnchor, repeated), DataError);
  const std::vector<RdPoint> nonpositive{{0, 30}, {200, 33}, {400, 36}, {800, 39}};
  CHECK_THROWS_AS(bd_rate(kAnchor, nonpositive), DataError);
}

TEST_CASE("RD curve parsing") {
  const auto c = parse_rd_curve("# anchor\nrate,psnr\n100,30\n\n200, 33.5\n");
  REQUIRE(c.size() == 2);
  CHECK(c[1].rate == 200.0);
  CHECK(c[1].psnr == 33.5);
  CHECK_THROWS_AS(parse_rd_curve("100,30\nabc,def\n"), DataError);
  test::TempDir dir("rd");
  std::ofstream(dir / "c.csv") << "100,30\n200,33\n";
  CHECK(read_rd_curve(dir / "c.csv").size() == 2);
}
