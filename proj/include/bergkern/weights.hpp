#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace bergkern {

inline constexpr double kDefaultTol = 1e-12;

struct ConstantWeight {
   double value = 1.0;
};

// Segment i carries `value` on (breakpoint[i-1], breakpoint[i]], with an
// implicit breakpoint 0 before the first segment. The last breakpoint is 1.
struct StepSegment {
   double breakpoint;
   double value;
};

struct StepWeight {
   std::vector<StepSegment> segments;
};

// Piecewise-linear interpolant through (radii[i], values[i]), extended as a
// constant to the left of the first knot and to the right of the last one.
struct SampledWeight {
   std::vector<double> radii;
   std::vector<double> values;
};

// Lebesgue measure plus `mass` times the Dirac measure at the origin. This is
// a singular measure, not a density; it never goes through quadrature.
struct DiracWeight {
   double mass = 0.0;
};

// A radial weight lambda(|z|) on the unit disc.
class RadialWeight {
public:
   using Variant = std::variant<ConstantWeight, StepWeight, SampledWeight, DiracWeight>;

   static RadialWeight constant(double value);
   static RadialWeight step(std::vector<StepSegment> segments);
   // `height` on [0, radius], 1 on (radius, 1].
   static RadialWeight step(double height, double radius);
   static RadialWeight sampled(std::vector<double> radii, std::vector<double> values);
   static RadialWeight dirac(double mass);

   const Variant& variant() const noexcept { return variant_; }

   bool is_constant() const noexcept { return std::holds_alternative<ConstantWeight>(variant_); }
   bool is_step() const noexcept { return std::holds_alternative<StepWeight>(variant_); }
   bool is_sampled() const noexcept { return std::holds_alternative<SampledWeight>(variant_); }
   bool is_dirac() const noexcept { return std::holds_alternative<DiracWeight>(variant_); }

   // Smallest C >= 1 with 1/C <= lambda <= C. For a Dirac weight this is the
   // constant of the absolutely continuous part (1).
   double comparability() const noexcept { return comparability_; }

   // Density value at radius r in [0, 1]. A Dirac weight reports its
   // Lebesgue part.
   double operator()(double r) const;

   // Radii in (0, 1) where the density is not smooth. Quadrature panels and
   // projector grids use them as hard boundaries.
   std::vector<double> breakpoints() const;

   // Piecewise-constant view: Constant(c) becomes the single segment (1, c).
   // Throws std::logic_error for sampled or Dirac weights.
   std::vector<StepSegment> as_segments() const;

   std::string describe() const;

private:
   explicit RadialWeight(Variant v);

   Variant variant_;
   double comparability_ = 1.0;
};

enum class MomentMethod { closed_form, quadrature };

const char* to_string(MomentMethod m);

// mu_n = 2 pi int_0^1 r^(2n+1) lambda(r) dr is the squared norm of z^n in
// A^2(lambda) and alpha_n = 1 / mu_n the kernel coefficient.
struct Moment {
   std::size_t n = 0;
   double mu = 0.0;
   double alpha = 0.0;
   MomentMethod method = MomentMethod::closed_form;
   double err = 0.0;  // relative error bound on mu
};

struct MomentTable {
   std::vector<Moment> entries;
};

// Exact evaluation for constant, step and Dirac weights:
//   mu_n = pi/(n+1) * sum_i v_i (r_i^(2n+2) - r_(i-1)^(2n+2)).
// Throws std::domain_error for n < 0 and std::invalid_argument for a sampled
// weight.
Moment moment_closed_form_step(const RadialWeight& weight, int n);

// Adaptive panel quadrature with breakpoints as hard panel boundaries.
// Throws convergence_error when the relative tolerance cannot be met.
Moment moment_quadrature(const RadialWeight& weight, int n, double tol = kDefaultTol);

// 2 pi int_0^1 r^(2n+1) lambda(r)^power dr by the same quadrature. Used for
// Hartogs-domain monomial norms, where power = j + 1.
double moment_quadrature_power(const RadialWeight& weight, int n, int power,
                               double tol = kDefaultTol, double* err = nullptr);

// Entries 0..N, closed form where available. Every entry is checked against
// the comparability sandwich (n+1)/(C pi) <= alpha_n <= C (n+1)/pi; a
// violation throws std::logic_error. Quadrature failures are rethrown with
// the offending index in the message.
MomentTable moment_table(const RadialWeight& weight, std::size_t N, double tol = kDefaultTol);

} // namespace bergkern
