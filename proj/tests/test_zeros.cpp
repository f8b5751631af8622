#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "bergkern/kernel.hpp"
#include "bergkern/zeros.hpp"

using namespace bergkern;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// Two-level step A on [0, x]: alpha_n = (n+1) / (pi (1 + (A-1) x^(2n+2))).
double step_alpha(double A, double x, int n)
{
   return (n + 1) / (pi * (1.0 + (A - 1.0) * std::pow(x, 2 * n + 2)));
}

// Winding number of sum_{n<=N} alpha_n t^n (1-t)^2 on |t| = rho by dense
// phase tracking; an independent count for well-separated cases.
int brute_winding(double A, double x, double rho, int N, int samples)
{
   std::vector<double> a(N + 1);
   for (int n = 0; n <= N; ++n)
      a[n] = step_alpha(A, x, n);
   double total = 0.0, prev = 0.0;
   for (int j = 0; j <= samples; ++j) {
      const cplx t = std::polar(rho, 2.0 * pi * j / samples);
      cplx f = 0.0;
      for (int n = N; n >= 0; --n)
         f = f * t + a[n];
      const double arg = std::arg(f * (1.0 - t) * (1.0 - t));
      if (j > 0) {
         double d = arg - prev;
         d -= 2.0 * pi * std::round(d / (2.0 * pi));
         total += d;
      }
      prev = arg;
   }
   return static_cast<int>(std::lround(total / (2.0 * pi)));
}

} // namespace

TEST_CASE("second difference bound for the quarter step")
{
   const KernelSeries s(RadialWeight::step(18.0, 0.25));
   const SecondDifferenceBound b = second_difference_bound(s, 500);
   CHECK(b.all_negative);
   CHECK(b.certified);
   CHECK(b.s_bound == doctest::Approx((512.0 / 273.0 - 16.0 / 33.0) / pi - 1.0 / pi).epsilon(1e-12));
   REQUIRE(b.telescoped);
   CHECK(*b.telescoped == doctest::Approx(b.partial_sum).epsilon(1e-13));
   CHECK_FALSE(b.first_ambiguous);
   CHECK_THROWS_AS(second_difference_bound(s, 1), std::invalid_argument);

   const SecondDifferenceBound f = second_difference_bound(KernelSeries(RadialWeight::constant(1.0)), 100);
   CHECK(f.s_bound == 0.0);
}

TEST_CASE("certificate at the pinned and at a too-large epsilon")
{
   const KernelSeries s(RadialWeight::step(18.0, 0.25));
   const RoucheCertificate ok = rouche_certificate(s, 0.01);
   REQUIRE(ok.linear_root);
   CHECK(*ok.linear_root == doctest::Approx(-91.0 / 170.0).epsilon(1e-14));
   CHECK(ok.min_L == doctest::Approx(0.1310974583).epsilon(1e-9));
   CHECK(ok.min_L_sampled >= ok.min_L * (1.0 - 1e-12));
   CHECK(ok.holds);

   const RoucheCertificate bad = rouche_certificate(s, 0.05);
   CHECK(bad.min_L == doctest::Approx(0.1196).epsilon(1e-3));
   CHECK_FALSE(bad.holds);

   const auto best = largest_passing_epsilon(s, default_epsilon_grid());
   REQUIRE(best);
   // The analytic crossover is eps = 1 - (alpha_1 - alpha_0 - 1/pi + alpha_0) / (alpha_1 - 2 alpha_0) ~ 0.0335.
   CHECK(best->epsilon == doctest::Approx(0.03));

   const RoucheCertificate flat = rouche_certificate(KernelSeries(RadialWeight::constant(1.0)), 0.01);
   CHECK_FALSE(flat.linear_root);
   CHECK_FALSE(flat.holds);
   CHECK_THROWS_AS(rouche_certificate(s, 0.0), std::domain_error);
   CHECK_THROWS_AS(rouche_certificate(s, 1.0), std::domain_error);
}

TEST_CASE("perturbing alpha_0 breaks the certificate")
{
   const KernelSeries s = KernelSeries(RadialWeight::step(18.0, 0.25)).perturbed(0, 1.1);
   CHECK_FALSE(rouche_certificate(s, 0.01).holds);
}

TEST_CASE("winding counts")
{
   const KernelSeries step(RadialWeight::step(18.0, 0.25));
   const ZeroReport big = count_zeros_winding(step, 0.99);
   CHECK(big.certified);
   CHECK(big.zero_count == 1);
   REQUIRE(big.zeros.size() == 1);
   CHECK(big.zeros[0].t.real() == doctest::Approx(-0.4768747).epsilon(1e-6));
   CHECK(std::abs(big.zeros[0].t.imag()) < 1e-12);

   const ZeroReport small = count_zeros_winding(step, 0.3);
   CHECK(small.certified);
   CHECK(small.zero_count == 0);

   const ZeroReport flat = count_zeros_winding(KernelSeries(RadialWeight::constant(1.0)), 0.999);
   CHECK(flat.certified);
   CHECK(flat.zero_count == 0);
   CHECK_THROWS_AS(count_zeros_winding(step, 1.0), std::domain_error);
}

TEST_CASE("no zero of the quarter step inside |t| <= 0.3 on a dense grid")
{
   // |F'| <= L on the disc, so every point is within h of a grid node and
   // |F| >= least - L h there; the coefficients beyond n = 80 add < 1e-30.
   const int radial = 300, angular = 720;
   double L = 0.0;
   for (int n = 1; n <= 80; ++n)
      L += n * step_alpha(18.0, 0.25, n) * std::pow(0.3, n - 1);
   const double h = std::hypot(0.3 / radial, 0.3 * pi / angular);
   double least = INFINITY;
   for (int i = 0; i <= radial; ++i)
      for (int j = 0; j < angular; ++j) {
         const cplx t = std::polar(0.3 * i / radial, 2.0 * pi * j / angular);
         cplx f = 0.0;
         for (int n = 80; n >= 0; --n)
            f = f * t + step_alpha(18.0, 0.25, n);
         least = std::min(least, std::abs(f));
      }
   CHECK(least - L * h > 0.0);
}

TEST_CASE("winding count matches dense phase tracking on random steps")
{
   std::mt19937_64 rng(5);
   std::uniform_real_distribution<double> ua(1.5, 40.0), ux(0.1, 0.6);
   for (int trial = 0; trial < 8; ++trial) {
      const double A = ua(rng), x = ux(rng);
      const ZeroReport r = count_zeros_winding(KernelSeries(RadialWeight::step(A, x)), 0.9);
      if (!r.certified)
         continue;
      CHECK(r.zero_count == brute_winding(A, x, 0.9, 800, 20000));
      for (const LocatedZero& z : r.zeros)
         CHECK(std::abs(z.t) < 0.9);
   }
}

TEST_CASE("sweep cells")
{
   const auto cells = sweep_step_weights(Range::parse("1:1:1"), Range::parse("0.2:0.6:0.2"), 0.99, 2);
   REQUIRE(cells.size() == 3);
   for (const SweepCell& c : cells) {
      CHECK(c.zero_count == 0);
      CHECK(c.certified);
   }
   const auto quarter = sweep_step_weights(Range::parse("18:18:1"), Range::parse("0.25:0.25:1"), 0.99, 1);
   CHECK(quarter.at(0).zero_count >= 1);
   const auto near_flat = sweep_step_weights(Range::parse("1.000001:1.000001:1"), Range::parse("0.25:0.25:1"), 0.99, 1);
   CHECK(near_flat.at(0).zero_count == 0);
   CHECK(near_flat.at(0).certified);

   std::ostringstream a, b;
   write_sweep_csv(a, cells, 0.99);
   write_sweep_csv(b, sweep_step_weights(Range::parse("1:1:1"), Range::parse("0.2:0.6:0.2"), 0.99, 1), 0.99);
   CHECK(a.str() == b.str());
   CHECK(a.str().rfind("# ", 0) == 0);
   CHECK(a.str().find("A,x,zero_count,certified,rho_used,error\n") != std::string::npos);
}

TEST_CASE("ranges")
{
   CHECK(Range::parse("0.05:0.95:0.05").values().size() == 19);
   CHECK(Range::parse("1:40:0.5").values().back() == doctest::Approx(40.0));
   CHECK_THROWS_AS(Range::parse("1:2"), std::invalid_argument);
   CHECK_THROWS_AS(Range::parse("1:2:0"), std::invalid_argument);
   CHECK_THROWS_AS(Range::parse("3:2:1"), std::invalid_argument);
}

TEST_CASE("mollified quarter step still has a zero")
{
   const ZeroReport r = count_zeros_winding(KernelSeries(mollify_weight(RadialWeight::step(18.0, 0.25), 1e-3)), 0.99);
   CHECK(r.certified);
   CHECK(r.zero_count >= 1);
}

TEST_CASE("Dirac threshold")
{
   CHECK_FALSE(dirac_zero_threshold(0.0).has_zero_in_disc);
   CHECK_FALSE(dirac_zero_threshold(1.0).has_zero_in_disc);
   CHECK_FALSE(dirac_zero_threshold(pi / 3.0).has_zero_in_disc);
   const DiracAnalysis ten = dirac_zero_threshold(10.0);
   REQUIRE(ten.zero);
   CHECK(*ten.zero == doctest::Approx(1.0 - std::sqrt(1.0 + pi / 10.0)).epsilon(1e-14));
   CHECK(std::abs(dirac_diagonal(10.0, *ten.zero)) < 1e-14);
   // Tiny masses push the zero towards -1 without losing it.
   const DiracAnalysis near = dirac_zero_threshold(pi / 3.0 * (1.0 + 1e-9));
   CHECK(near.has_zero_in_disc);
   CHECK(*near.zero > -1.0);
   CHECK_THROWS_AS(dirac_zero_threshold(-1.0), std::domain_error);
}

TEST_CASE("Dirac series agrees with its closed form")
{
   const KernelSeries s(RadialWeight::dirac(10.0));
   for (double t : {-0.9, -0.3, 0.0, 0.4}) {
      CHECK(diagonal_eval(s, t, 1e-12).value.real() == doctest::Approx(dirac_diagonal(10.0, t)).epsilon(1e-10));
   }
   const ZeroReport r = count_zeros_winding(s, 0.5);
   CHECK(r.certified);
   CHECK(r.zero_count == 1);
}

TEST_CASE("inflation identity")
{
   const RadialWeight step = RadialWeight::step(18.0, 0.25);
   const InflationCheck origin = inflation_check(step, 0.0, 0.0);
   CHECK(origin.lhs.real() == doctest::Approx(16.0 / (33.0 * pi * pi)).epsilon(1e-12));
   CHECK(origin.agree);
   CHECK(inflation_check(step, 0.5, 0.5).agree);

   const cplx z(0.3), t(0.0, -0.2);
   const InflationCheck flat = inflation_check(RadialWeight::constant(1.0), z, t);
   CHECK(std::abs(flat.lhs - 1.0 / (pi * pi * std::pow(1.0 - z * std::conj(t), 2))) <= 1e-8);
   CHECK(hartogs_monomial_norm_sq(RadialWeight::constant(1.0), 2, 1) == doctest::Approx(pi * pi / 6.0).epsilon(1e-12));
   CHECK_THROWS_AS(inflation_check(step, 1.0, 0.0), std::domain_error);
   CHECK_THROWS_AS(inflation_check(RadialWeight::dirac(1.0), 0.1, 0.1), std::invalid_argument);
}
