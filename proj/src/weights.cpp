#include "bergkern/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bergkern/errors.hpp"
#include "bergkern/quadrature.hpp"

namespace bergkern {

namespace {

constexpr double pi = std::numbers::pi;

double comparability_of(double lo, double hi)
{
   return std::max({1.0, hi, 1.0 / lo});
}

void require_positive(double v, const char* what)
{
   if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// b^m - a^m for 0 <= a < b, without cancellation when a is close to b.
double power_gap(double a, double b, double m)
{
   const double bm = std::pow(b, m);
   if (a <= 0.0)
      return bm;
   return -bm * std::expm1(m * std::log(a / b));
}

} // namespace

RadialWeight::RadialWeight(Variant v) : variant_(std::move(v))
{
   std::visit(
      [this](const auto& w) {
         using T = std::decay_t<decltype(w)>;
         if constexpr (std::is_same_v<T, ConstantWeight>) {
            comparability_ = comparability_of(w.value, w.value);
         } else if constexpr (std::is_same_v<T, StepWeight>) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = 0.0;
            for (const auto& s : w.segments) {
               lo = std::min(lo, s.value);
               hi = std::max(hi, s.value);
            }
            comparability_ = comparability_of(lo, hi);
         } else if constexpr (std::is_same_v<T, SampledWeight>) {
            const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
            comparability_ = comparability_of(*lo, *hi);
         } else {
            comparability_ = 1.0;
         }
      },
      variant_);
}

RadialWeight RadialWeight::constant(double value)
{
   require_positive(value, "constant weight value");
   return RadialWeight(ConstantWeight{value});
}

RadialWeight RadialWeight::step(std::vector<StepSegment> segments)
{
   if (segments.empty())
      throw std::invalid_argument("step weight needs at least one segment");
   double prev = 0.0;
   for (const auto& s : segments) {
      if (!(s.breakpoint > prev) || s.breakpoint > 1.0)
         throw std::invalid_argument("step breakpoints must be strictly increasing in (0, 1]");
      require_positive(s.value, "step segment value");
      prev = s.breakpoint;
   }
   if (segments.back().breakpoint != 1.0)
      throw std::invalid_argument("last step breakpoint must be 1");
   return RadialWeight(StepWeight{std::move(segments)});
}

RadialWeight RadialWeight::step(double height, double radius)
{
   if (!(radius > 0.0 && radius < 1.0))
      throw std::invalid_argument("step radius must lie in (0, 1)");
   return step({{radius, height}, {1.0, 1.0}});
}

RadialWeight RadialWeight::sampled(std::vector<double> radii, std::vector<double> values)
{
   if (radii.empty() || radii.size() != values.size())
      throw std::invalid_argument("sampled weight needs matching, non-empty radii and values");
   for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] >= 0.0 && radii[i] <= 1.0))
         throw std::invalid_argument("sampled radii must lie in [0, 1]");
      if (i > 0 && !(radii[i] > radii[i - 1]))
         throw std::invalid_argument("sampled radii must be strictly increasing");
      require_positive(values[i], "sampled weight value");
   }
   return RadialWeight(SampledWeight{std::move(radii), std::move(values)});
}

RadialWeight RadialWeight::dirac(double mass)
{
   if (!(mass >= 0.0) || !std::isfinite(mass))
      throw std::invalid_argument("Dirac mass must be non-negative and finite");
   return RadialWeight(DiracWeight{mass});
}

double RadialWeight::operator()(double r) const
{
   return std::visit(
      [r](const auto& w) -> double {
         using T = std::decay_t<decltype(w)>;
         if constexpr (std::is_same_v<T, ConstantWeight>) {
            return w.value;
         } else if constexpr (std::is_same_v<T, StepWeight>) {
            for (const auto& s : w.segments)
               if (r <= s.breakpoint)
                  return s.value;
            return w.segments.back().value;
         } else if constexpr (std::is_same_v<T, SampledWeight>) {
            const auto& x = w.radii;
            if (r <= x.front())
               return w.values.front();
            if (r >= x.back())
               return w.values.back();
            const auto it = std::upper_bound(x.begin(), x.end(), r);
            const std::size_t i = static_cast<std::size_t>(it - x.begin());
            const double s = (r - x[i - 1]) / (x[i] - x[i - 1]);
            return w.values[i - 1] + s * (w.values[i] - w.values[i - 1]);
         } else {
            return 1.0;
         }
      },
      variant_);
}

std::vector<double> RadialWeight::breakpoints() const
{
   std::vector<double> out;
   if (const auto* s = std::get_if<StepWeight>(&variant_)) {
      for (const auto& seg : s->segments)
         if (seg.breakpoint < 1.0)
            out.push_back(seg.breakpoint);
   } else if (const auto* w = std::get_if<SampledWeight>(&variant_)) {
      for (double r : w->radii)
         if (r > 0.0 && r < 1.0)
            out.push_back(r);
   }
   return out;
}

std::vector<StepSegment> RadialWeight::as_segments() const
{
   if (const auto* c = std::get_if<ConstantWeight>(&variant_))
      return {{1.0, c->value}};
   if (const auto* s = std::get_if<StepWeight>(&variant_))
      return s->segments;
   throw std::logic_error("weight is not piecewise constant");
}

std::string RadialWeight::describe() const
{
   std::ostringstream os;
   os.precision(17);
   std::visit(
      [&os](const auto& w) {
         using T = std::decay_t<decltype(w)>;
         if constexpr (std::is_same_v<T, ConstantWeight>) {
            os << "constant(" << w.value << ")";
         } else if constexpr (std::is_same_v<T, StepWeight>) {
            os << "step[";
            for (std::size_t i = 0; i < w.segments.size(); ++i)
               os << (i ? "," : "") << "(" << w.segments[i].breakpoint << ","
                  << w.segments[i].value << ")";
            os << "]";
         } else if constexpr (std::is_same_v<T, SampledWeight>) {
            os << "sampled(" << w.radii.size() << " knots)";
         } else {
            os << "dirac(" << w.mass << ")";
         }
      },
      variant_);
   return os.str();
}

const char* to_string(MomentMethod m)
{
   return m == MomentMethod::closed_form ? "closed_form" : "quadrature";
}

Moment moment_closed_form_step(const RadialWeight& weight, int n)
{
   if (n < 0)
      throw std::domain_error("moment index must be non-negative");
   const auto nn = static_cast<double>(n);
   constexpr double eps = std::numeric_limits<double>::epsilon();

   Moment m;
   m.n = static_cast<std::size_t>(n);
   m.method = MomentMethod::closed_form;

   if (const auto* d = std::get_if<DiracWeight>(&weight.variant())) {
      m.mu = n == 0 ? pi + d->mass : pi / (nn + 1.0);
      m.alpha = 1.0 / m.mu;
      m.err = 4.0 * eps;
      return m;
   }
   if (weight.is_sampled())
      throw std::invalid_argument("closed-form moments need a piecewise-constant weight");

   const auto segments = weight.as_segments();
   const double power = 2.0 * nn + 2.0;
   double sum = 0.0;
   double prev = 0.0;
   for (const auto& s : segments) {
      sum += s.value * power_gap(prev, s.breakpoint, power);
      prev = s.breakpoint;
   }
   m.mu = pi / (nn + 1.0) * sum;
   m.alpha = 1.0 / m.mu;
   m.err = eps * (4.0 + 2.0 * static_cast<double>(segments.size()));
   return m;
}

double moment_quadrature_power(const RadialWeight& weight, int n, int power, double tol, double* err)
{
   if (n < 0)
      throw std::domain_error("moment index must be non-negative");
   if (weight.is_dirac())
      throw std::invalid_argument("Dirac weights have no density to integrate");
   if (!(tol > 0.0))
      throw std::invalid_argument("quadrature tolerance must be positive");

   std::vector<double> breaks{0.0};
   for (double b : weight.breakpoints())
      breaks.push_back(b);
   breaks.push_back(1.0);

   const double exponent = 2.0 * n + 1.0;
   auto integrand = [&](double r) {
      return 2.0 * pi * std::pow(r, exponent) * std::pow(weight(r), power);
   };
   AdaptiveOptions options;
   options.rel_tol = tol;
   const QuadratureResult q = integrate_adaptive(integrand, breaks, options);
   if (err)
      *err = q.value > 0.0 ? q.error / q.value : q.error;
   return q.value;
}

Moment moment_quadrature(const RadialWeight& weight, int n, double tol)
{
   Moment m;
   double err = 0.0;
   m.mu = moment_quadrature_power(weight, n, 1, tol, &err);
   m.n = static_cast<std::size_t>(n);
   m.alpha = 1.0 / m.mu;
   m.method = MomentMethod::quadrature;
   m.err = std::max(err, 4.0 * std::numeric_limits<double>::epsilon());
   return m;
}

MomentTable moment_table(const RadialWeight& weight, std::size_t N, double tol)
{
   MomentTable table;
   table.entries.reserve(N + 1);
   const double C = weight.comparability();
   for (std::size_t n = 0; n <= N; ++n) {
      Moment m;
      if (weight.is_sampled()) {
         try {
            m = moment_quadrature(weight, static_cast<int>(n), tol);
         } catch (const convergence_error& e) {
            throw convergence_error("moment " + std::to_string(n) + ": " + e.what(),
                                    e.achieved_bound());
         }
      } else {
         m = moment_closed_form_step(weight, static_cast<int>(n));
      }
      if (!weight.is_dirac()) {
         const double base = (static_cast<double>(n) + 1.0) / pi;
         const double slack = 10.0 * m.err;
         if (m.alpha < base / C * (1.0 - slack) || m.alpha > base * C * (1.0 + slack))
            throw std::logic_error("moment " + std::to_string(n) +
                                   " violates the comparability sandwich");
      }
      table.entries.push_back(m);
   }
   return table;
}

} // namespace bergkern
