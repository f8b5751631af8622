#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bergkern/kernel.hpp"
#include "bergkern/weights.hpp"

namespace bergkern {

// ---------------------------------------------------------------------------
// Second differences and the Rouche certificate
//
// (1 - t)^2 F(t) = L(t) + S(t) with the linear part
//    L(t) = alpha_0 + (alpha_1 - 2 alpha_0) t
// and the series part S(t) = sum_{k>=2} (alpha_k - 2 alpha_(k-1) + alpha_(k-2)) t^k.
// On |t| = 1 - eps, |S| is at most the sum of absolute second differences.
// ---------------------------------------------------------------------------

struct SecondDifferenceBound {
   std::size_t n_cutoff = 0;
   double partial_sum = 0.0;      // sum_{k=2}^{n_cutoff} |second difference|
   double remainder_bound = 0.0;  // certified bound on the k > n_cutoff part
   double s_bound = 0.0;          // partial_sum + remainder_bound
   bool all_negative = false;     // every difference 2..n_cutoff strictly negative
   bool certified = false;        // s_bound is finite and every sign is resolved
   // (alpha_1 - alpha_0) - (alpha_N - alpha_(N-1)); equals partial_sum when
   // all differences are negative.
   std::optional<double> telescoped;
   std::optional<double> limit_first_difference;
   std::optional<std::size_t> first_ambiguous;  // smallest k whose sign is unresolved
};

// Throws std::invalid_argument for n_cutoff < 2.
SecondDifferenceBound second_difference_bound(const KernelSeries& series, std::size_t n_cutoff);

// min over |t| = radius of |a + b t| for the affine L, which is
// | |a| - |b| radius |.
double affine_min_modulus(double a, double b, double radius);

struct RoucheCertificate {
   double epsilon = 0.0;
   double ring_radius = 0.0;
   std::optional<double> linear_root;  // -alpha_0 / (alpha_1 - 2 alpha_0)
   double min_L = 0.0;                 // analytic
   double min_L_sampled = 0.0;         // dense sampling cross-check
   double S_bound = 0.0;
   bool s_bound_certified = false;
   // min_L > S_bound and the linear root lies inside the ring. When true,
   // F has a zero in |t| < 1 - eps and B_lambda vanishes in D x D.
   bool holds = false;
};

// Throws std::domain_error unless 0 < epsilon < 1.
RoucheCertificate rouche_certificate(const KernelSeries& series, double epsilon,
                                     std::size_t n_cutoff = 500);

// Log-spaced epsilons from 1e-3 to 3e-2.
std::vector<double> default_epsilon_grid();

// Largest epsilon in `grid` whose certificate holds.
std::optional<RoucheCertificate> largest_passing_epsilon(const KernelSeries& series,
                                                         const std::vector<double>& grid,
                                                         std::size_t n_cutoff = 500);

// ---------------------------------------------------------------------------
// Argument-principle zero counting
// ---------------------------------------------------------------------------

struct LocatedZero {
   std::complex<double> t;
   double residual = 0.0;  // |F_N(t)| + tail_bound(|t|, N)
   int iterations = 0;     // Newton steps
};

struct ZeroReport {
   double requested_rho = 0.0;
   double rho = 0.0;  // radius actually used after perturbation retries
   std::size_t N = 0;
   int zero_count = 0;
   std::vector<LocatedZero> zeros;  // real zeros once, complex ones in conjugate pairs
   // Winding computed on G_N with min |G_N| on the contour (after the
   // sampling correction) larger than (1 + rho)^2 tail_bound(rho, N).
   bool certified = false;
   double min_modulus = 0.0;     // sampled minimum of |G_N|
   double modulus_floor = 0.0;   // sampled minimum minus the Lipschitz correction
   double truncation_gap = 0.0;  // (1 + rho)^2 tail_bound(rho, N)
   std::size_t contour_samples = 0;
   int retries = 0;
   std::string diagnostics;
};

struct WindingOptions {
   std::optional<std::size_t> N;  // fixed truncation instead of the adaptive choice
   std::size_t max_terms = 100000;
   std::size_t max_samples = std::size_t{1} << 20;
   int max_retries = 4;
   double retry_step = 1e-3;
   bool locate = true;
};

// Counts zeros of F in |t| < rho by the winding number of G_N along |t| = rho.
// Throws std::domain_error unless 0 < rho < 1.
ZeroReport count_zeros_winding(const KernelSeries& series, double rho,
                               const WindingOptions& options = {});

// ---------------------------------------------------------------------------
// Weight families
// ---------------------------------------------------------------------------

// Inclusive start:stop:step grid, e.g. "1:40:0.5".
struct Range {
   double start = 0.0;
   double stop = 0.0;
   double step = 1.0;

   static Range parse(const std::string& text);
   std::vector<double> values() const;
};

struct SweepCell {
   double A = 0.0;
   double x = 0.0;
   int zero_count = -1;
   bool certified = false;
   double rho_used = 0.0;
   std::string error;  // per-cell failure, empty on success
};

// Step weights A on [0, x], 1 on (x, 1], one winding count per grid cell.
// Cells are independent; failures are recorded in the cell.
std::vector<SweepCell> sweep_step_weights(const Range& A, const Range& x, double rho,
                                          unsigned threads);

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells, double rho);

// Replaces every interior jump of a piecewise-constant weight by a
// C-infinity smoothstep over a window of total length `width` centred on the
// breakpoint, sampled at `knots_per_transition` points. Outside those
// windows the result equals the step weight. A constant weight comes back as
// a single-knot sampled weight with the same value.
// Throws std::invalid_argument unless 0 < width < smallest breakpoint gap.
RadialWeight mollify_weight(const RadialWeight& step, double width,
                            std::size_t knots_per_transition = 65);

// ---------------------------------------------------------------------------
// Lebesgue + k delta_0
// ---------------------------------------------------------------------------

// F_k(t) = 1/(pi + k) - 1/pi + 1/(pi (1 - t)^2) vanishes at
// t = 1 - sqrt(1 + pi/k), which lies in the disc iff k > pi/3.
struct DiracAnalysis {
   double mass = 0.0;
   bool has_zero_in_disc = false;
   std::optional<double> zero;  // set when has_zero_in_disc
};

// Throws std::domain_error for k < 0.
DiracAnalysis dirac_zero_threshold(double k);

// F_k evaluated from its closed form.
double dirac_diagonal(double k, double t);

// ---------------------------------------------------------------------------
// Hartogs-domain inflation
// ---------------------------------------------------------------------------

// ||z^m w^j||^2 over Omega = {(z, w): |z| < 1, |w|^2 < lambda(|z|)}, which is
// (pi / (j + 1)) int_D |z|^(2m) lambda^(j+1) dA, by quadrature.
double hartogs_monomial_norm_sq(const RadialWeight& weight, int m, int j, double tol = kDefaultTol);

struct InflationCheck {
   std::complex<double> lhs;  // B_Omega[(z, 0), (t, 0)] from Omega's monomial norms
   std::complex<double> rhs;  // B_lambda(z, t) / pi
   double difference = 0.0;
   double tol = 0.0;
   std::size_t terms = 0;
   bool agree = false;
};

// Throws std::domain_error unless |z|, |t| < 1, std::invalid_argument for a
// Dirac weight.
InflationCheck inflation_check(const RadialWeight& weight, std::complex<double> z,
                               std::complex<double> t, double tol = 1e-8);

} // namespace bergkern
