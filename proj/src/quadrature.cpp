#include "bergkern/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "bergkern/errors.hpp"

namespace bergkern {

namespace {

GaussRule compute_rule(std::size_t n)
{
   GaussRule rule;
   rule.nodes.resize(n);
   rule.weights.resize(n);
   const std::size_t half = (n + 1) / 2;
   for (std::size_t i = 0; i < half; ++i) {
      // Tricomi's initial guess, then Newton on P_n.
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
         double p0 = 1.0;
         double p1 = x;
         for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
         }
         const double pn = n == 0 ? 1.0 : (n == 1 ? x : p1);
         const double pm = n == 1 ? 1.0 : p0;
         dp = static_cast<double>(n) * (x * pn - pm) / (x * x - 1.0);
         const double dx = pn / dp;
         x -= dx;
         if (std::abs(dx) < 1e-16)
            break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      rule.nodes[i] = -x;
      rule.nodes[n - 1 - i] = x;
      rule.weights[i] = w;
      rule.weights[n - 1 - i] = w;
   }
   if (n % 2 == 1)
      rule.nodes[n / 2] = 0.0;
   return rule;
}

double apply_rule(const GaussRule& rule, const std::function<double(double)>& f, double a, double b)
{
   const double mid = 0.5 * (a + b);
   const double half = 0.5 * (b - a);
   double sum = 0.0;
   for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
   return sum * half;
}

struct Panel {
   double a;
   double b;
   double value;  // refined (two-half) estimate
   double error;
   bool operator<(const Panel& other) const { return error < other.error; }
};

} // namespace

const GaussRule& gauss_legendre(std::size_t n)
{
   if (n == 0)
      throw std::invalid_argument("gauss_legendre: order must be positive");
   static std::mutex mutex;
   static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
   std::lock_guard lock(mutex);
   auto& slot = cache[n];
   if (!slot)
      slot = std::make_unique<GaussRule>(compute_rule(n));
   return *slot;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks,
                                    const AdaptiveOptions& options)
{
   if (breaks.size() < 2)
      throw std::invalid_argument("integrate_adaptive: need at least one interval");
   if (!(options.rel_tol > 0.0))
      throw std::invalid_argument("integrate_adaptive: rel_tol must be positive");

   const GaussRule& rule = gauss_legendre(options.order);
   auto make_panel = [&](double a, double b) {
      const double mid = 0.5 * (a + b);
      const double coarse = apply_rule(rule, f, a, b);
      const double fine = apply_rule(rule, f, a, mid) + apply_rule(rule, f, mid, b);
      if (!std::isfinite(fine) || !std::isfinite(coarse))
         throw convergence_error("integrate_adaptive: non-finite integrand near [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "]",
                                 std::numeric_limits<double>::infinity());
      return Panel{a, b, fine, std::abs(fine - coarse)};
   };

   std::priority_queue<Panel> queue;
   double total = 0.0;
   double total_error = 0.0;
   for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      if (!(breaks[i] < breaks[i + 1]))
         throw std::invalid_argument("integrate_adaptive: breakpoints must increase");
      Panel p = make_panel(breaks[i], breaks[i + 1]);
      total += p.value;
      total_error += p.error;
      queue.push(p);
   }

   std::size_t panels = queue.size();
   while (total_error > options.rel_tol * std::abs(total)) {
      if (panels >= options.max_panels) {
         const double achieved = total == 0.0 ? total_error : total_error / std::abs(total);
         throw convergence_error("integrate_adaptive: panel budget of " +
                                    std::to_string(options.max_panels) +
                                    " exhausted", achieved);
      }
      Panel worst = queue.top();
      queue.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      Panel left = make_panel(worst.a, mid);
      Panel right = make_panel(mid, worst.b);
      total += left.value + right.value - worst.value;
      total_error += left.error + right.error - worst.error;
      queue.push(left);
      queue.push(right);
      ++panels;
      // Running sums drift; recompute once in a while.
      if (panels % 512 == 0) {
         auto copy = queue;
         total = 0.0;
         total_error = 0.0;
         while (!copy.empty()) {
            total += copy.top().value;
            total_error += copy.top().error;
            copy.pop();
         }
      }
   }
   return {total, total_error, panels};
}

} // namespace bergkern
