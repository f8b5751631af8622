#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bergkern/projector.hpp"

using namespace bergkern;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

double max_diff(const GridFunction& a, const GridFunction& b)
{
   double m = 0.0;
   for (std::size_t i = 0; i < a.values.size(); ++i)
      m = std::max(m, std::abs(a.values[i] - b.values[i]));
   return m;
}

double max_abs(const GridFunction& a)
{
   double m = 0.0;
   for (const cplx& v : a.values)
      m = std::max(m, std::abs(v));
   return m;
}

const RadialWeight quarter = RadialWeight::step(18.0, 0.25);

} // namespace

TEST_CASE("projection fixes holomorphic monomials and kills conjugates")
{
   for (const RadialWeight& w : {RadialWeight::constant(1.0), quarter}) {
      const DiscreteProjector P(w, 10);
      const GridFunction cube = P.sample([](cplx z) { return z * z * z; });
      CHECK(max_diff(P.project(cube), cube) <= 1e-10);
      const GridFunction bar = P.sample([](cplx z) { return std::conj(z * z); });
      CHECK(max_abs(P.project(bar)) <= 1e-10);
      CHECK(P.orthogonality_defect() <= 1e-13);
   }
}

TEST_CASE("radial functions project to their weighted mean")
{
   const DiscreteProjector P(RadialWeight::constant(1.0), 12);
   const GridFunction f = P.sample([](cplx z) { return 1.0 - std::norm(z); });
   const GridFunction pf = P.project(f);
   for (const cplx& v : pf.values)
      CHECK(std::abs(v - 0.5) <= 1e-12);
}

TEST_CASE("discrete moments match the closed form")
{
   const DiscreteProjector P(quarter, 30);
   for (int n : {0, 1, 7, 30}) {
      const double p = std::pow(16.0, n + 1);
      CHECK(P.moments()[n] == doctest::Approx(pi * (p + 17.0) / ((n + 1) * p)).epsilon(1e-13));
   }
}

TEST_CASE("L^p norms")
{
   const DiscreteProjector flat(RadialWeight::constant(1.0), 4);
   CHECK(lp_norm(flat.sample([](cplx) { return cplx(1.0); }), 2.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
   CHECK(lp_norm(flat.sample([](cplx z) { return z; }), 2.0) == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-13));
   // int |z|^4 dA = pi/3.
   CHECK(lp_norm(flat.sample([](cplx z) { return z; }), 4.0) == doctest::Approx(std::pow(pi / 3.0, 0.25)).epsilon(1e-13));

   const DiscreteProjector step(quarter, 4);
   const GridFunction z = step.sample([](cplx z) { return z; });
   CHECK(lp_norm(z, 2.0) == doctest::Approx(std::sqrt(273.0 * pi / 512.0)).epsilon(1e-13));
   CHECK(lp_norm(z, 2.0, Measure::lebesgue) == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-13));
   CHECK_THROWS_AS(lp_norm(z, 1.0), std::domain_error);
   CHECK_THROWS_AS(lp_norm(z, INFINITY), std::domain_error);
}

TEST_CASE("algebraic invariants on random inputs")
{
   std::mt19937_64 rng(21);
   std::uniform_real_distribution<double> u(-1.0, 1.0);
   const DiscreteProjector P(quarter, 40);
   const auto family = default_family(40, 99);
   for (int trial = 0; trial < 6; ++trial) {
      const TestFunction& f = family[family.size() - 1 - trial];
      const TestFunction& g = family[family.size() - 1 - (trial + 1) % 8];
      const GridFunction fs = P.sample(std::cref(f));
      const GridFunction gs = P.sample(std::cref(g));
      const GridFunction pf = P.project(fs);
      CHECK(max_diff(P.project(pf), pf) <= 1e-9);
      CHECK(std::abs(P.inner(pf, gs) - P.inner(fs, P.project(gs))) <= 1e-9);
      // f - Pf is orthogonal to every monomial.
      GridFunction residual = fs;
      for (std::size_t i = 0; i < residual.values.size(); ++i)
         residual.values[i] -= pf.values[i];
      for (const cplx& c : P.monomial_coefficients(residual))
         CHECK(std::abs(c) <= 1e-11);
   }
   std::vector<cplx> c(41);
   for (cplx& ck : c)
      ck = cplx(u(rng), u(rng)) / 41.0;
   const GridFunction poly = P.sample([&](cplx z) {
      cplx acc = 0.0;
      for (std::size_t n = c.size(); n-- > 0;)
         acc = acc * z + c[n];
      return acc;
   });
   CHECK(max_diff(P.project(poly), poly) <= 1e-10);
}

TEST_CASE("projector construction errors")
{
   GridSpec spec;
   spec.angular = 4 * 10 + 3;
   CHECK_THROWS_AS(DiscreteProjector(quarter, 10, spec), std::invalid_argument);
   spec.angular = 4 * 10 + 4;
   CHECK_NOTHROW(DiscreteProjector(quarter, 10, spec));
   CHECK_THROWS_AS(DiscreteProjector(RadialWeight::dirac(1.0), 10), std::invalid_argument);

   const DiscreteProjector a(quarter, 5), b(quarter, 5);
   CHECK_THROWS_AS(a.project(b.sample([](cplx z) { return z; })), std::invalid_argument);
}

TEST_CASE("probe ratios")
{
   const LpProbe fixed = lp_probe(RadialWeight::constant(1.0), 2.0, {TestFunction::monomial(2)}, 8);
   CHECK(fixed.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
   const LpProbe killed = lp_probe(RadialWeight::constant(1.0), 2.0, {TestFunction::monomial(3, true)}, 8);
   CHECK(killed.max_ratio <= 1e-12);

   // A zero function is skipped rather than dividing by zero.
   const LpProbe zero = lp_probe(quarter, 3.0, {TestFunction::trig_radial({}, 1.0), TestFunction::bump(0.5, 0.1)}, 8);
   CHECK(zero.rows[0].skipped);
   CHECK(zero.argmax == "bump(0.5;0.1)");

   // L^2 ratios never exceed 1 for an orthogonal projection.
   const auto fam = default_family(12);
   const LpProbe two = lp_probe(quarter, 2.0, fam, 12);
   CHECK(two.max_ratio <= 1.0 + 1e-12);

   // Growing the family never lowers the maximum.
   std::vector<TestFunction> part(fam.begin(), fam.begin() + 5);
   double prev = lp_probe(quarter, 3.0, part, 12).max_ratio;
   for (std::size_t i = 5; i < fam.size(); i += 7) {
      part.insert(part.end(), fam.begin() + i, fam.begin() + std::min(fam.size(), i + 7));
      const double now = lp_probe(quarter, 3.0, part, 12).max_ratio;
      CHECK(now >= prev);
      prev = now;
   }
}

TEST_CASE("default family is deterministic")
{
   const auto a = default_family(10, 123), b = default_family(10, 123), c = default_family(10, 124);
   REQUIRE(a.size() == b.size());
   CHECK(a.size() == 11 + 10 + 3 + 3 + 8);
   for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i](cplx(0.3, -0.4)) == b[i](cplx(0.3, -0.4)));
   CHECK(a.back()(cplx(0.3, -0.4)) != c.back()(cplx(0.3, -0.4)));
}

TEST_CASE("test functions from JSON")
{
   const auto m = TestFunction::from_json(nlohmann::json::parse(R"({"type":"monomial","m":3,"conjugate":true})"));
   CHECK(m(cplx(0.0, 0.5)) == std::conj(std::pow(cplx(0.0, 0.5), 3)));
   const auto r = TestFunction::from_json(nlohmann::json::parse(R"({"type":"radial_power","s":0.5})"));
   CHECK(r(cplx(0.6, 0.0)).real() == doctest::Approx(0.8));
   const auto t = TestFunction::from_json(nlohmann::json::parse(R"({"type":"trig_radial","s":1,"modes":[[-2,1,0]]})"));
   CHECK(std::abs(t(cplx(0.0, 0.5)) - std::conj(cplx(0.0, 0.5) * cplx(0.0, 0.5)) * 0.75) < 1e-15);
   CHECK_THROWS_AS(TestFunction::from_json(nlohmann::json::parse(R"({"type":"spline"})")), std::invalid_argument);
   CHECK_THROWS_AS(TestFunction::from_json(nlohmann::json::parse(R"({"type":"monomial"})")), std::invalid_argument);
   CHECK_THROWS_AS(TestFunction::monomial(-1), std::invalid_argument);
}

TEST_CASE("Cauchy-Schwarz split")
{
   CsGridSpec spec;
   spec.N = 20;
   const CsWitness a = cs_split_witness(quarter, TestFunction::radial_power(0.0), 2.0, spec);
   CHECK(a.holds);
   CHECK(a.lhs > 0.0);
   const CsWitness b = cs_split_witness(RadialWeight::constant(1.0), TestFunction::monomial(1), 2.0, spec);
   CHECK(b.holds);
   const CsWitness z = cs_split_witness(quarter, TestFunction::trig_radial({}, 1.0), 3.0, spec);
   CHECK(z.lhs == 0.0);
   CHECK(z.rhs == 0.0);
   CHECK(z.holds);
}
