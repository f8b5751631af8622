#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "bergkern/errors.hpp"
#include "bergkern/kernel.hpp"

using namespace bergkern;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// F(t) for the 18-on-a-quarter step from its coefficient formula.
cplx step_diagonal(cplx t)
{
   cplx sum = 0.0, tn = 1.0;
   for (int n = 0; n < 60; ++n) {
      sum += static_cast<double>(n + 1) * tn / (std::pow(16.0, n + 1) + 17.0);
      tn *= t;
   }
   return (1.0 / ((1.0 - t) * (1.0 - t)) - 17.0 * sum) / pi;
}

} // namespace

TEST_CASE("tail bound closed form")
{
   const KernelSeries flat(RadialWeight::constant(1.0));
   CHECK(tail_bound(flat, 0.0, 5) == 0.0);
   CHECK(tail_bound(flat, 0.5, 0) == doctest::Approx(3.0 / pi).epsilon(1e-14));
   // Majorizes the actual tail sum_{n>N} (n+1) rho^n / pi.
   for (std::size_t N : {0u, 3u, 10u, 50u}) {
      double tail = 0.0;
      for (std::size_t n = N + 1; n < 5000; ++n)
         tail += (n + 1.0) * std::pow(0.9, static_cast<double>(n)) / pi;
      CHECK(tail_bound(flat, 0.9, N) >= tail * (1.0 - 1e-12));
   }
   const KernelSeries step(RadialWeight::step(18.0, 0.25));
   double prev = INFINITY;
   for (std::size_t N = 0; N < 400; N += 20) {
      const double b = tail_bound(step, 0.9, N);
      CHECK(b < prev);
      prev = b;
   }
   CHECK_THROWS_AS(tail_bound(flat, 1.0, 3), std::domain_error);
   CHECK_THROWS_AS(tail_bound(flat, -0.1, 3), std::domain_error);
}

TEST_CASE("truncation_for returns the smallest admissible N")
{
   const KernelSeries s(RadialWeight::step(18.0, 0.25));
   const auto N = truncation_for(s, 0.95, 1e-12);
   REQUIRE(N);
   CHECK(tail_bound(s, 0.95, *N) <= 1e-12);
   CHECK(tail_bound(s, 0.95, *N - 1) > 1e-12);
   CHECK_FALSE(truncation_for(s, 0.999999, 1e-14, 1000));
}

TEST_CASE("unweighted kernel")
{
   const KernelSeries s(RadialWeight::constant(1.0));
   const KernelValue v = kernel_eval(s, 0.5, 0.5, 1e-13);
   CHECK(v.value.real() == doctest::Approx(16.0 / (9.0 * pi)).epsilon(1e-12));
   CHECK(v.err_bound <= 1e-12);
   std::mt19937_64 rng(3);
   std::uniform_real_distribution<double> u(-0.65, 0.65);
   for (int i = 0; i < 50; ++i) {
      const cplx z(u(rng), u(rng)), w(u(rng), u(rng));
      const cplx ref = 1.0 / (pi * std::pow(1.0 - z * std::conj(w), 2));
      const KernelValue k = kernel_eval(s, z, w, 1e-12);
      CHECK(std::abs(k.value - ref) <= 1e-11);
   }
}

TEST_CASE("kernel at the origin is alpha_0")
{
   for (const RadialWeight& w : {RadialWeight::step(18.0, 0.25), RadialWeight::constant(3.0)}) {
      const KernelSeries s(w);
      CHECK(kernel_eval(s, 0.0, cplx(0.3, 0.7)).value.real() == doctest::Approx(s.alpha(0)));
   }
}

TEST_CASE("diagonal at the linear root matches the coefficient formula")
{
   const KernelSeries s(RadialWeight::step(18.0, 0.25));
   for (cplx t : {cplx(-91.0 / 170.0), cplx(-0.97, 0.1), cplx(0.5, -0.5)}) {
      const KernelValue v = diagonal_eval(s, t, 1e-12);
      CHECK(std::abs(v.value - step_diagonal(t)) <= 1e-11);
   }
}

TEST_CASE("kernel_eval errors")
{
   const KernelSeries s(RadialWeight::constant(1.0));
   CHECK_THROWS_AS(kernel_eval(s, 1.0, 0.5), std::domain_error);
   CHECK_THROWS_AS(kernel_eval(s, cplx(0.0, 1.2), 0.5), std::domain_error);
   try {
      kernel_eval(s, 0.9999, 0.9999, 1e-12, 100);
      FAIL("expected convergence_error");
   } catch (const convergence_error& e) {
      CHECK(e.achieved_bound() > 1e-12);
   }
}

TEST_CASE("diagonal polynomial coefficients")
{
   const KernelSeries flat(RadialWeight::constant(1.0));
   const auto g = diagonal_poly(flat, 4);
   REQUIRE(g.size() == 7);
   CHECK(g[0] == doctest::Approx(1.0 / pi));
   CHECK(g[1] == doctest::Approx(0.0).epsilon(1e-15));
   for (int k = 2; k <= 4; ++k)
      CHECK(std::abs(g[k]) < 1e-14);

   const KernelSeries step(RadialWeight::step(18.0, 0.25));
   const auto h = diagonal_poly(step, 60);
   CHECK(h[1] == doctest::Approx(8160.0 / (9009.0 * pi)).epsilon(1e-13));
   for (std::size_t k = 2; k <= 60; ++k)
      CHECK(step.second_difference(k).sign == Sign::negative);
   CHECK_THROWS_AS(diagonal_poly(step, 1), std::invalid_argument);
}

TEST_CASE("second difference signs survive double underflow")
{
   using boost::multiprecision::cpp_rational;
   using big = boost::multiprecision::cpp_bin_float_100;
   // Two-level steps A on [0, x], 1 beyond: pi alpha_n = (n+1) / (1 + (A-1) x^(2n+2)),
   // evaluated in exact rational arithmetic from the binary values of A and x.
   std::mt19937_64 rng(11);
   std::uniform_real_distribution<double> ua(0.2, 40.0), ux(0.05, 0.95);
   for (int trial = 0; trial < 10; ++trial) {
      const double A = ua(rng), x = ux(rng);
      const KernelSeries s(RadialWeight::step(A, x));
      const cpp_rational c = cpp_rational(A) - 1;
      const cpp_rational xx = cpp_rational(x) * cpp_rational(x);
      auto pa = [&](int n) {
         cpp_rational p = 1;
         for (int i = 0; i <= n; ++i)
            p *= xx;
         return cpp_rational(n + 1) / (1 + c * p);
      };
      for (int k : {2, 3, 10, 60, 200}) {
         const cpp_rational d = pa(k) - 2 * pa(k - 1) + pa(k - 2);
         const SecondDifference sd = s.second_difference(k);
         if (d == 0)
            continue;
         CHECK(sd.sign == (d < 0 ? Sign::negative : Sign::positive));
         const double ref_log = static_cast<double>(log10(abs(big(d)) / big(pi)));
         CHECK(sd.log10_abs == doctest::Approx(ref_log).epsilon(1e-9));
      }
   }
}

TEST_CASE("scaling and perturbation")
{
   const KernelSeries s(RadialWeight::step(18.0, 0.25));
   const KernelSeries t = s.scaled(2.0 * pi);
   CHECK(t.alpha(3) == doctest::Approx(2.0 * pi * s.alpha(3)));
   CHECK(t.first_difference(600) == doctest::Approx(2.0).epsilon(1e-12));
   REQUIRE(s.limit_first_difference());
   CHECK(*s.limit_first_difference() == doctest::Approx(1.0 / pi));
   const KernelSeries p = s.perturbed(0, 1.1);
   CHECK(p.alpha(0) == doctest::Approx(1.1 * s.alpha(0)));
   CHECK(p.alpha(1) == s.alpha(1));
   CHECK(p.perturbation_inflation() == doctest::Approx(1.1));
   CHECK(s.second_difference_remainder(500) < 1e-300);
   CHECK(std::isinf(KernelSeries(RadialWeight::sampled({0.0, 1.0}, {1.0, 2.0})).second_difference_remainder(50)));
}
