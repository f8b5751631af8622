#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bergkern/weights.hpp"

namespace bergkern {

inline constexpr std::size_t kMaxTerms = 200000;

enum class Sign { negative, zero, positive, ambiguous };

const char* to_string(Sign s);

// Second difference alpha_k - 2 alpha_(k-1) + alpha_(k-2). For constant,
// step and Dirac weights it is computed from the closed form in extended
// range, so `sign` and `log10_abs` stay exact even when `value` underflows.
struct SecondDifference {
   std::size_t k = 0;
   double value = 0.0;
   Sign sign = Sign::zero;
   double log10_abs = 0.0;  // -inf for an exact zero
};

// Coefficients alpha_n of B_lambda(z, w) = sum alpha_n (z conj(w))^n, i.e. of
// the diagonal function F(t) = sum alpha_n t^n with t = z conj(w).
//
// Coefficients are computed lazily and cached; copies made through scaled()
// and perturbed() share the cache. All members are safe to call concurrently.
class KernelSeries {
public:
   explicit KernelSeries(RadialWeight weight, double tol = kDefaultTol);

   // Every alpha_n multiplied by `factor` > 0.
   KernelSeries scaled(double factor) const;
   // alpha_index multiplied by `factor` > 0 (on top of earlier perturbations).
   KernelSeries perturbed(std::size_t index, double factor) const;

   const RadialWeight& weight() const noexcept;
   double comparability() const noexcept;
   double scale() const noexcept { return scale_; }
   // Relative accuracy of each coefficient.
   double coefficient_error() const noexcept;
   // Largest multiplicative perturbation (>= 1), used to keep bounds valid.
   double perturbation_inflation() const noexcept;

   double alpha(std::size_t n) const;
   std::vector<double> alphas(std::size_t N) const;  // alpha_0 .. alpha_N

   // alpha_(n+1) - alpha_n.
   double first_difference(std::size_t n) const;
   // Requires k >= 2.
   SecondDifference second_difference(std::size_t k) const;

   // lim alpha_(n+1) - alpha_n when the weight has a closed form.
   std::optional<double> limit_first_difference() const;
   // Certified bound on sum_{k > N} |second difference k|, +inf when no
   // bound is available (sampled weights).
   double second_difference_remainder(std::size_t N) const;

   // True when second differences come from the extended-range closed form.
   bool has_closed_form() const noexcept;

private:
   struct Shared;

   double factor(std::size_t n) const noexcept;
   bool touches_perturbation(std::size_t lo, std::size_t hi) const noexcept;

   std::shared_ptr<Shared> shared_;
   double scale_ = 1.0;
   std::vector<std::pair<std::size_t, double>> perturbations_;
};

// (C/pi) rho^(N+1) ((N+2) - (N+1) rho) / (1 - rho)^2, which majorizes
// |sum_{n>N} alpha_n t^n| on |t| <= rho because alpha_n <= C (n+1)/pi.
// Throws std::domain_error unless 0 <= rho < 1.
double tail_bound(const KernelSeries& series, double rho, std::size_t N);

// Smallest N with tail_bound(rho, N) <= tol, or nullopt beyond max_terms.
std::optional<std::size_t> truncation_for(const KernelSeries& series, double rho, double tol,
                                          std::size_t max_terms = kMaxTerms);

struct KernelValue {
   std::complex<double> value;
   double err_bound = 0.0;  // tail + coefficient + rounding
   std::size_t N_used = 0;  // partial sum runs over n = 0..N_used
};

// F(t) with a certified error bound <= tol (plus rounding). Throws
// convergence_error carrying the achieved bound when tol needs more than
// max_terms coefficients.
KernelValue diagonal_eval(const KernelSeries& series, std::complex<double> t, double tol = 1e-10,
                          std::size_t max_terms = kMaxTerms);

// B_lambda(z, w). Throws std::domain_error unless |z|, |w| < 1.
KernelValue kernel_eval(const KernelSeries& series, std::complex<double> z, std::complex<double> w,
                        double tol = 1e-10, std::size_t max_terms = kMaxTerms);

// Coefficients of G_N(t) = (1 - t)^2 sum_{n<=N} alpha_n t^n, degree N + 2.
// Throws std::invalid_argument for N < 2.
std::vector<double> diagonal_poly(const KernelSeries& series, std::size_t N);

} // namespace bergkern
