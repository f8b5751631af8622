#include "bergkern/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bergkern {

namespace {

constexpr double pi = std::numbers::pi;

double median(std::vector<double> v)
{
   if (v.empty())
      return 0.0;
   const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
   std::nth_element(v.begin(), mid, v.end());
   if (v.size() % 2 == 1)
      return *mid;
   const double upper = *mid;
   const double lower = *std::max_element(v.begin(), mid);
   return 0.5 * (lower + upper);
}

double slope(const std::vector<double>& x, const std::vector<double>& y)
{
   const double n = static_cast<double>(x.size());
   double sx = 0, sy = 0, sxx = 0, sxy = 0;
   for (std::size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
   }
   const double den = n * sxx - sx * sx;
   return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

bool non_increasing(const std::vector<double>& v)
{
   for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1] * (1.0 + 1e-9) + 1e-300)
         return false;
   return true;
}

// Splits values indexed by `index` into a reference window (first half) and
// a tail window (last half) of the range [first, last].
struct Windows {
   std::vector<double> ref_x, ref_y, tail_x, tail_y;
};

Windows split(std::size_t first, std::size_t last, const std::function<double(std::size_t)>& value)
{
   Windows w;
   const std::size_t half = (last + 1) / 2;
   for (std::size_t n = first; n <= last; ++n) {
      const double y = value(n);
      if (n < half) {
         w.ref_x.push_back(static_cast<double>(n));
         w.ref_y.push_back(y);
      } else {
         w.tail_x.push_back(static_cast<double>(n));
         w.tail_y.push_back(y);
      }
   }
   return w;
}

void require_length(const CoefficientSequence& seq)
{
   if (seq.size() < 11)
      throw std::invalid_argument("coefficient checks need at least beta_0..beta_10");
}

} // namespace

CoefficientSequence::CoefficientSequence(std::vector<std::complex<double>> betas, Source source,
                                         std::optional<double> comparability)
   : betas_(std::move(betas)), source_(source), comparability_(comparability)
{
   if (betas_.size() < 3)
      throw std::invalid_argument("coefficient sequence needs N >= 2");
   for (const auto& b : betas_)
      if (!std::isfinite(b.real()) || !std::isfinite(b.imag()))
         throw std::invalid_argument("coefficient sequence has non-finite entries");
}

CoefficientSequence CoefficientSequence::from_series(const KernelSeries& series, std::size_t N)
{
   const auto a = series.alphas(N);
   std::optional<double> C;
   if (!series.weight().is_dirac())
      C = series.comparability();
   return CoefficientSequence({a.begin(), a.end()}, Source::kernel_coefficients, C);
}

CoefficientSequence CoefficientSequence::from_values(std::vector<std::complex<double>> betas)
{
   return CoefficientSequence(std::move(betas), Source::user_supplied, std::nullopt);
}

CoefficientSequence CoefficientSequence::from_real(const std::vector<double>& betas)
{
   return CoefficientSequence({betas.begin(), betas.end()}, Source::user_supplied, std::nullopt);
}

CoefficientSequence CoefficientSequence::generate(std::size_t N,
                                                  const std::function<std::complex<double>(std::size_t)>& f)
{
   std::vector<std::complex<double>> b(N + 1);
   for (std::size_t n = 0; n <= N; ++n)
      b[n] = f(n);
   return from_values(std::move(b));
}

CoefficientSequence CoefficientSequence::constant(double value, std::size_t N)
{
   return from_values(std::vector<std::complex<double>>(N + 1, value));
}

double CoefficientSequence::sup_abs() const
{
   double s = 0.0;
   for (const auto& b : betas_)
      s = std::max(s, std::abs(b));
   return s;
}

NecessaryWitness necessary_check(const CoefficientSequence& seq)
{
   require_length(seq);
   const auto& b = seq.betas();
   const Windows w = split(1, seq.last_index(), [&](std::size_t n) {
      return std::abs(b[n]) / static_cast<double>(n);
   });
   NecessaryWitness out;
   out.limsup_estimate = *std::max_element(w.tail_y.begin(), w.tail_y.end());
   out.tail_slope = slope(w.tail_x, w.tail_y);
   out.reference_median = median(w.ref_y);
   out.finite_trend = non_increasing(w.tail_y) || out.limsup_estimate <= 2.0 * out.reference_median;
   return out;
}

Decomposition decompose_b(const CoefficientSequence& seq)
{
   const auto& beta = seq.betas();
   Decomposition d;
   d.b.resize(beta.size());
   std::complex<double> previous = 0.0;
   for (std::size_t n = 0; n < beta.size(); ++n) {
      d.b[n] = beta[n] - previous;
      previous = beta[n];
      d.sup_abs = std::max(d.sup_abs, std::abs(d.b[n]));
   }
   d.reconstructs = true;
   std::complex<double> running = 0.0;
   double mass = 0.0;
   for (std::size_t n = 0; n < beta.size(); ++n) {
      running += d.b[n];
      mass += std::abs(d.b[n]);
      if (std::abs(running - beta[n]) > 1e-13 * std::max(1.0, mass))
         d.reconstructs = false;
   }
   return d;
}

SufficientWitness sufficient_check(const CoefficientSequence& seq)
{
   require_length(seq);
   const auto& b = seq.betas();
   const Windows w = split(0, seq.last_index() - 1, [&](std::size_t n) { return std::abs(b[n + 1] - b[n]); });

   SufficientWitness out;
   for (double y : w.ref_y)
      out.sup_diff = std::max(out.sup_diff, y);
   double tail_max = 0.0;
   for (double y : w.tail_y)
      tail_max = std::max(tail_max, y);
   out.sup_diff = std::max(out.sup_diff, tail_max);
   out.tail_slope = slope(w.tail_x, w.tail_y);
   out.bounded_verdict = non_increasing(w.tail_y) || tail_max <= 2.0 * median(w.ref_y);

   if (seq.source() == CoefficientSequence::Source::kernel_coefficients && seq.comparability()) {
      ComparabilityChain chain;
      chain.C = *seq.comparability();
      chain.min_normalized = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n + 1 < b.size(); ++n) {
         const double normalized = pi * (b[n + 1].real() - b[n].real());
         chain.min_normalized = std::min(chain.min_normalized, normalized);
         chain.max_normalized = std::max(chain.max_normalized, normalized);
      }
      const double c3 = chain.C * chain.C * chain.C;
      // Allow for rounding in differences of large coefficients.
      const double slack = 1e-9;
      chain.holds = chain.min_normalized >= (1.0 - slack) / c3 && chain.max_normalized <= c3 * (1.0 + slack);
      out.chain = chain;
   }
   return out;
}

double log_beta(double a, double b)
{
   return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

SchurIntegral schur_integral(const CoefficientSequence& seq, double epsilon, double z_radius)
{
   if (!(epsilon > -1.0 && epsilon < 0.0))
      throw std::domain_error("Schur exponent must lie in (-1, 0)");
   if (!(z_radius >= 0.0 && z_radius < 1.0))
      throw std::domain_error("|z| must lie in [0, 1)");

   const auto& b = seq.betas();
   const double r2 = z_radius * z_radius;
   const double lg_eps = std::lgamma(epsilon + 1.0);
   SchurIntegral out;
   double rp = 1.0;  // |z|^(2n)
   for (std::size_t n = 0; n < b.size(); ++n) {
      const double nn = static_cast<double>(n);
      const double beta_fn = std::exp(std::lgamma(nn + 1.0) + lg_eps - std::lgamma(nn + epsilon + 2.0));
      out.value += std::norm(b[n]) * rp * pi * beta_fn;
      rp *= r2;
      ++out.terms;
      if (rp == 0.0)
         break;
   }
   const double sup = seq.sup_abs();
   // rp is now |z|^(2(N+1)) (or 0 after underflow); B(n+1, eps+1) <= 1/(eps+1).
   out.tail_bound = out.terms < b.size() ? 0.0 : sup * sup * pi / (epsilon + 1.0) * rp / (1.0 - r2);
   return out;
}

double schur_constant(double epsilon)
{
   return pi * (1.0 / (epsilon + 1.0) - 1.0 / epsilon);
}

double conjugate_epsilon(double p)
{
   if (!(p > 1.0) || !std::isfinite(p))
      throw std::domain_error("p must lie in (1, inf)");
   const double q = p / (p - 1.0);
   return -1.0 / (p * q);
}

SchurReport schur_bound_check(const CoefficientSequence& seq, double epsilon, const std::vector<double>& grid)
{
   SchurReport report;
   report.epsilon = epsilon;
   report.z_grid = grid;
   report.theoretical_C = schur_constant(epsilon);
   report.sup_beta = seq.sup_abs();
   const double norm = report.sup_beta * report.sup_beta;
   for (double r : grid) {
      const SchurIntegral I = schur_integral(seq, epsilon, r);
      const double ratio = norm == 0.0 ? 0.0 : (I.value + I.tail_bound) / norm / std::pow(1.0 - r * r, epsilon);
      report.ratios.push_back(ratio);
      report.empirical_C = std::max(report.empirical_C, ratio);
   }
   report.passes = report.empirical_C <= report.theoretical_C * (1.0 + 1e-6);
   return report;
}

} // namespace bergkern
