#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "bergkern/kernel.hpp"

namespace bergkern {

// Coefficients beta_0..beta_N of K(z, w) = sum beta_n (z conj(w))^n.
// Everything in this module is a numerical witness over a finite range,
// never a proof about the infinite sequence.
class CoefficientSequence {
public:
   enum class Source { kernel_coefficients, user_supplied };

   // alpha_0..alpha_N of a kernel series; remembers the weight's constant C.
   static CoefficientSequence from_series(const KernelSeries& series, std::size_t N);
   static CoefficientSequence from_values(std::vector<std::complex<double>> betas);
   static CoefficientSequence from_real(const std::vector<double>& betas);
   static CoefficientSequence generate(std::size_t N, const std::function<std::complex<double>(std::size_t)>& f);
   static CoefficientSequence constant(double value, std::size_t N);

   const std::vector<std::complex<double>>& betas() const noexcept { return betas_; }
   std::size_t size() const noexcept { return betas_.size(); }
   std::size_t last_index() const noexcept { return betas_.size() - 1; }
   Source source() const noexcept { return source_; }
   std::optional<double> comparability() const noexcept { return comparability_; }
   double sup_abs() const;

private:
   CoefficientSequence(std::vector<std::complex<double>> betas, Source source,
                       std::optional<double> comparability);

   std::vector<std::complex<double>> betas_;
   Source source_;
   std::optional<double> comparability_;
};

// limsup |beta_n| / n is estimated by the maximum over the last half of the
// range. finite_trend is set when those ratios are non-increasing or stay
// within twice the median ratio of the first half.
struct NecessaryWitness {
   double limsup_estimate = 0.0;
   double tail_slope = 0.0;  // least-squares slope of |beta_n|/n over the tail
   double reference_median = 0.0;
   bool finite_trend = false;
};

// Throws std::invalid_argument for fewer than 11 coefficients.
NecessaryWitness necessary_check(const CoefficientSequence& seq);

// b_n = beta_n - beta_(n-1) with beta_(-1) = 0.
struct Decomposition {
   std::vector<std::complex<double>> b;
   double sup_abs = 0.0;
   bool reconstructs = false;  // running sums give back every beta_n up to rounding
};

Decomposition decompose_b(const CoefficientSequence& seq);

// For kernel coefficients of a weight with constant C,
//    pi (alpha_(n+1) - alpha_n)  lies in  [C^-3, C^3]
// because the difference is a ratio of three integrals, each within a
// factor C of its unweighted value, and the unweighted ratio is 1/pi.
struct ComparabilityChain {
   double C = 1.0;
   double min_normalized = 0.0;
   double max_normalized = 0.0;
   bool holds = false;
};

struct SufficientWitness {
   double sup_diff = 0.0;  // max |beta_(n+1) - beta_n| over the range
   double tail_slope = 0.0;
   bool bounded_verdict = false;
   std::optional<ComparabilityChain> chain;  // kernel coefficient sequences only
};

// Throws std::invalid_argument for fewer than 11 coefficients.
SufficientWitness sufficient_check(const CoefficientSequence& seq);

double log_beta(double a, double b);

struct SchurIntegral {
   double value = 0.0;       // sum over the known coefficients
   double tail_bound = 0.0;  // beyond the range, assuming |beta_n| <= sup |beta|
   std::size_t terms = 0;
};

// I(eps, z) = int_D |sum beta_n (z conj(w))^n|^2 (1 - |w|^2)^eps dA(w)
//           = sum |beta_n|^2 |z|^(2n) pi B(n + 1, eps + 1).
// Throws std::domain_error unless -1 < eps < 0 and 0 <= |z| < 1.
SchurIntegral schur_integral(const CoefficientSequence& seq, double epsilon, double z_radius);

// pi (1/(eps + 1) - 1/eps).
double schur_constant(double epsilon);

// The exponent -1/(p q) with 1/p + 1/q = 1.
double conjugate_epsilon(double p);

struct SchurReport {
   double epsilon = 0.0;
   std::vector<double> z_grid;
   std::vector<double> ratios;  // (I + tail) / sup|beta|^2 / (1 - |z|^2)^eps
   double empirical_C = 0.0;
   double theoretical_C = 0.0;
   double sup_beta = 0.0;
   bool passes = false;
};

SchurReport schur_bound_check(const CoefficientSequence& seq, double epsilon,
                              const std::vector<double>& grid);

} // namespace bergkern
