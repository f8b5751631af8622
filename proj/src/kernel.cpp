#include "bergkern/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bergkern/errors.hpp"
#include "bergkern/parallel.hpp"

namespace bergkern {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

using wide = boost::multiprecision::cpp_bin_float_50;

// For constant, step and Dirac weights
//    alpha_n = (n + 1) / (pi v) * (1 - e_n),
// where v is the value of the outermost segment and e_n -> 0 geometrically.
// The linear part has vanishing second differences, so those come from e_n
// alone. e_n is kept in a wide-exponent type because it underflows doubles
// long before the indices we need.
struct ExcessModel {
   double outer_value = 1.0;
   // step: d_i = (v_i - v_(i+1)) / v_last and squared breakpoints r_i^2
   std::vector<double> jumps;
   std::vector<double> squared_radii;
   double dirac_mass = -1.0;  // >= 0 for a Dirac weight

   wide excess(std::size_t n, std::vector<wide>& powers) const
   {
      if (dirac_mass >= 0.0)
         return n == 0 ? wide(dirac_mass) / (wide(pi) + dirac_mass) : wide(0);
      wide delta = 0;
      for (std::size_t i = 0; i < jumps.size(); ++i)
         delta += jumps[i] * powers[i];
      return delta / (1 + delta);
   }

   // Sum |d_i| and max r_i^2 for the remainder bound.
   double jump_mass() const
   {
      double s = 0.0;
      for (double d : jumps)
         s += std::abs(d);
      return s;
   }

   double max_squared_radius() const
   {
      double q = 0.0;
      for (double r2 : squared_radii)
         q = std::max(q, r2);
      return q;
   }
};

std::optional<ExcessModel> excess_model_for(const RadialWeight& weight)
{
   if (weight.is_sampled())
      return std::nullopt;
   ExcessModel model;
   if (const auto* d = std::get_if<DiracWeight>(&weight.variant())) {
      model.dirac_mass = d->mass;
      return model;
   }
   const auto segments = weight.as_segments();
   model.outer_value = segments.back().value;
   for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
      model.jumps.push_back((segments[i].value - segments[i + 1].value) / model.outer_value);
      model.squared_radii.push_back(segments[i].breakpoint * segments[i].breakpoint);
   }
   return model;
}

double to_double_saturating(const wide& x)
{
   return x.convert_to<double>();
}

} // namespace

const char* to_string(Sign s)
{
   switch (s) {
   case Sign::negative:
      return "negative";
   case Sign::zero:
      return "zero";
   case Sign::positive:
      return "positive";
   case Sign::ambiguous:
      return "ambiguous";
   }
   return "?";
}

struct KernelSeries::Shared {
   Shared(RadialWeight w, double t) : weight(std::move(w)), tol(t), model(excess_model_for(weight))
   {
      if (model)
         powers = std::vector<wide>(model->squared_radii.begin(), model->squared_radii.end());
   }

   RadialWeight weight;
   double tol;
   std::optional<ExcessModel> model;

   mutable std::mutex mutex;
   mutable std::vector<double> alpha;
   mutable std::vector<wide> excess;
   mutable std::vector<wide> powers;  // r_i^(2n+2) for n = excess.size()

   void extend_alpha(std::size_t N) const
   {
      if (alpha.size() > N)
         return;
      const std::size_t first = alpha.size();
      alpha.resize(N + 1);
      if (weight.is_sampled()) {
         parallel_for(N + 1 - first, [&](std::size_t i) {
            alpha[first + i] = moment_quadrature(weight, static_cast<int>(first + i), tol).alpha;
         });
      } else {
         for (std::size_t n = first; n <= N; ++n)
            alpha[n] = moment_closed_form_step(weight, static_cast<int>(n)).alpha;
      }
   }

   void extend_excess(std::size_t N) const
   {
      while (excess.size() <= N) {
         excess.push_back(model->excess(excess.size(), powers));
         for (std::size_t i = 0; i < powers.size(); ++i)
            powers[i] *= model->squared_radii[i];
      }
   }
};

KernelSeries::KernelSeries(RadialWeight weight, double tol)
   : shared_(std::make_shared<Shared>(std::move(weight), tol))
{
   if (!(tol > 0.0))
      throw std::invalid_argument("coefficient tolerance must be positive");
}

KernelSeries KernelSeries::scaled(double f) const
{
   if (!(f > 0.0) || !std::isfinite(f))
      throw std::invalid_argument("scale factor must be positive");
   KernelSeries copy = *this;
   copy.scale_ *= f;
   return copy;
}

KernelSeries KernelSeries::perturbed(std::size_t index, double f) const
{
   if (!(f > 0.0) || !std::isfinite(f))
      throw std::invalid_argument("perturbation factor must be positive");
   KernelSeries copy = *this;
   copy.perturbations_.emplace_back(index, f);
   return copy;
}

const RadialWeight& KernelSeries::weight() const noexcept { return shared_->weight; }

double KernelSeries::comparability() const noexcept { return shared_->weight.comparability(); }

double KernelSeries::coefficient_error() const noexcept
{
   return shared_->weight.is_sampled() ? shared_->tol : 8.0 * eps;
}

double KernelSeries::perturbation_inflation() const noexcept
{
   double m = 1.0;
   for (std::size_t i = 0; i < perturbations_.size(); ++i)
      m = std::max(m, factor(perturbations_[i].first));
   return m;
}

bool KernelSeries::has_closed_form() const noexcept { return shared_->model.has_value(); }

double KernelSeries::factor(std::size_t n) const noexcept
{
   double f = scale_;
   for (const auto& [index, value] : perturbations_)
      if (index == n)
         f *= value;
   return f;
}

bool KernelSeries::touches_perturbation(std::size_t lo, std::size_t hi) const noexcept
{
   for (const auto& p : perturbations_)
      if (p.first >= lo && p.first <= hi)
         return true;
   return false;
}

double KernelSeries::alpha(std::size_t n) const
{
   std::lock_guard lock(shared_->mutex);
   shared_->extend_alpha(n);
   return shared_->alpha[n] * factor(n);
}

std::vector<double> KernelSeries::alphas(std::size_t N) const
{
   std::vector<double> out;
   {
      std::lock_guard lock(shared_->mutex);
      shared_->extend_alpha(N);
      out.assign(shared_->alpha.begin(), shared_->alpha.begin() + static_cast<std::ptrdiff_t>(N + 1));
   }
   for (double& a : out)
      a *= scale_;
   for (const auto& [index, value] : perturbations_)
      if (index <= N)
         out[index] *= value;
   return out;
}

double KernelSeries::first_difference(std::size_t n) const
{
   if (!has_closed_form() || touches_perturbation(n, n + 1))
      return alpha(n + 1) - alpha(n);
   wide e0, e1;
   {
      std::lock_guard lock(shared_->mutex);
      shared_->extend_excess(n + 1);
      e0 = shared_->excess[n];
      e1 = shared_->excess[n + 1];
   }
   const double nn = static_cast<double>(n);
   const wide bracket = 1 - (nn + 2) * e1 + (nn + 1) * e0;
   return scale_ / (pi * shared_->model->outer_value) * to_double_saturating(bracket);
}

SecondDifference KernelSeries::second_difference(std::size_t k) const
{
   if (k < 2)
      throw std::invalid_argument("second differences start at k = 2");
   SecondDifference out;
   out.k = k;

   if (!has_closed_form() || touches_perturbation(k - 2, k)) {
      const double a0 = alpha(k - 2);
      const double a1 = alpha(k - 1);
      const double a2 = alpha(k);
      out.value = a2 - 2.0 * a1 + a0;
      const double noise = (4.0 * coefficient_error() + 8.0 * eps) * (a2 + 2.0 * a1 + a0);
      out.log10_abs = out.value == 0.0 ? -std::numeric_limits<double>::infinity()
                                       : std::log10(std::abs(out.value));
      if (std::abs(out.value) <= noise)
         out.sign = Sign::ambiguous;
      else
         out.sign = out.value < 0.0 ? Sign::negative : Sign::positive;
      return out;
   }

   wide e0, e1, e2;
   {
      std::lock_guard lock(shared_->mutex);
      shared_->extend_excess(k);
      e0 = shared_->excess[k - 2];
      e1 = shared_->excess[k - 1];
      e2 = shared_->excess[k];
   }
   const double kk = static_cast<double>(k);
   const wide t2 = (kk + 1) * e2;
   const wide t1 = 2 * kk * e1;
   const wide t0 = (kk - 1) * e0;
   const wide bracket = t2 - t1 + t0;
   const wide prefactor = wide(scale_) / (wide(pi) * shared_->model->outer_value);
   const wide delta2 = -prefactor * bracket;

   out.value = to_double_saturating(delta2);
   if (bracket == 0) {
      out.sign = Sign::zero;
      out.log10_abs = -std::numeric_limits<double>::infinity();
      return out;
   }
   out.log10_abs = to_double_saturating(log10(abs(delta2)));
   const wide magnitude = abs(t2) + abs(t1) + abs(t0);
   if (abs(bracket) <= wide(1e-40) * magnitude)
      out.sign = Sign::ambiguous;
   else
      out.sign = delta2 < 0 ? Sign::negative : Sign::positive;
   return out;
}

std::optional<double> KernelSeries::limit_first_difference() const
{
   if (!has_closed_form())
      return std::nullopt;
   return scale_ / (pi * shared_->model->outer_value);
}

double KernelSeries::second_difference_remainder(std::size_t N) const
{
   constexpr double inf = std::numeric_limits<double>::infinity();
   if (!has_closed_form())
      return inf;
   for (const auto& p : perturbations_)
      if (p.first + 1 >= N)
         return inf;

   const ExcessModel& model = *shared_->model;
   if (model.dirac_mass >= 0.0) {
      // Only k = 2 is non-zero.
      return N < 2 ? std::abs(second_difference(2).value) : 0.0;
   }
   if (model.jumps.empty())
      return 0.0;

   const double D = model.jump_mass();
   const double q = model.max_squared_radius();
   const double nn = static_cast<double>(N);
   const double qN = std::pow(q, nn);
   if (!(D * qN < 1.0))
      return inf;
   const double c = D / (1.0 - D * qN);
   const double geometric = qN * ((nn + 2.0) - (nn + 1.0) * q) / ((1.0 - q) * (1.0 - q));
   const double bound = scale_ * 4.0 * c / (pi * model.outer_value) * geometric;
   // Rounding in the evaluation of the bound itself.
   return bound * (1.0 + 16.0 * eps);
}

double tail_bound(const KernelSeries& series, double rho, std::size_t N)
{
   if (!(rho >= 0.0 && rho < 1.0))
      throw std::domain_error("tail_bound needs 0 <= rho < 1");
   if (rho == 0.0)
      return 0.0;
   const double nn = static_cast<double>(N);
   const double C = series.comparability() * series.scale() * series.perturbation_inflation();
   const double log_head = (nn + 1.0) * std::log(rho);
   const double body = ((nn + 2.0) - (nn + 1.0) * rho) / ((1.0 - rho) * (1.0 - rho));
   return C / pi * std::exp(log_head) * body;
}

std::optional<std::size_t> truncation_for(const KernelSeries& series, double rho, double tol,
                                          std::size_t max_terms)
{
   if (tail_bound(series, rho, max_terms) > tol)
      return std::nullopt;
   // tail_bound is strictly decreasing in N.
   std::size_t lo = 0;
   std::size_t hi = max_terms;
   while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (tail_bound(series, rho, mid) <= tol)
         hi = mid;
      else
         lo = mid + 1;
   }
   return lo;
}

KernelValue diagonal_eval(const KernelSeries& series, std::complex<double> t, double tol,
                          std::size_t max_terms)
{
   const double rho = std::abs(t);
   if (!(rho < 1.0))
      throw std::domain_error("diagonal_eval needs |t| < 1");
   if (!(tol > 0.0))
      throw std::invalid_argument("tolerance must be positive");
   const auto N = truncation_for(series, rho, tol, max_terms);
   if (!N)
      throw convergence_error("kernel evaluation needs more than " + std::to_string(max_terms) +
                                 " coefficients",
                              tail_bound(series, rho, max_terms));

   const std::vector<double> a = series.alphas(*N);
   std::complex<double> value = 0.0;
   double majorant = 0.0;
   for (std::size_t i = a.size(); i-- > 0;) {
      value = value * t + a[i];
      majorant = majorant * rho + a[i];
   }
   const double rounding = (series.coefficient_error() + 2.0 * (static_cast<double>(*N) + 1.0) * eps) * majorant;
   return {value, tail_bound(series, rho, *N) + rounding, *N};
}

KernelValue kernel_eval(const KernelSeries& series, std::complex<double> z, std::complex<double> w,
                        double tol, std::size_t max_terms)
{
   if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
      throw std::domain_error("kernel_eval needs z and w inside the unit disc");
   return diagonal_eval(series, z * std::conj(w), tol, max_terms);
}

std::vector<double> diagonal_poly(const KernelSeries& series, std::size_t N)
{
   if (N < 2)
      throw std::invalid_argument("diagonal_poly needs N >= 2");
   const std::vector<double> a = series.alphas(N);
   std::vector<double> c(N + 3);
   c[0] = a[0];
   c[1] = a[1] - 2.0 * a[0];
   for (std::size_t k = 2; k <= N; ++k)
      c[k] = series.second_difference(k).value;
   c[N + 1] = a[N - 1] - 2.0 * a[N];
   c[N + 2] = a[N];
   return c;
}

} // namespace bergkern
