#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergkern/weights.hpp"

namespace bergkern {

// Polar tensor grid: Gauss-Legendre radii on each smooth piece of the weight
// times equispaced angles. Point (i, j) sits at r_i e^(i theta_j) and is
// stored at index i * angular_count + j.
class PolarGrid {
public:
   PolarGrid(const RadialWeight& weight, std::size_t radial_per_segment, std::size_t angular);

   std::size_t radial_count() const noexcept { return radii_.size(); }
   std::size_t angular_count() const noexcept { return angular_; }
   std::size_t size() const noexcept { return radii_.size() * angular_; }

   const std::vector<double>& radii() const noexcept { return radii_; }
   // int_0^1 g(r) r dr ~ sum radial_weights[i] g(r_i)
   const std::vector<double>& radial_weights() const noexcept { return radial_weights_; }
   const std::vector<double>& lambda() const noexcept { return lambda_; }

   double theta(std::size_t j) const noexcept;
   std::complex<double> point(std::size_t i, std::size_t j) const noexcept;
   // Lebesgue area weight of a point on ring i.
   double area_weight(std::size_t i) const noexcept;

private:
   std::vector<double> radii_;
   std::vector<double> radial_weights_;
   std::vector<double> lambda_;
   std::size_t angular_;
};

struct GridFunction {
   std::shared_ptr<const PolarGrid> grid;
   std::vector<std::complex<double>> values;
};

GridFunction sample(std::shared_ptr<const PolarGrid> grid,
                    const std::function<std::complex<double>(std::complex<double>)>& f);

enum class Measure { weighted, lebesgue };

// (int |f|^p lambda dA)^(1/p), or with dA alone for Measure::lebesgue.
// Throws std::domain_error unless 1 < p < inf.
double lp_norm(const GridFunction& f, double p, Measure measure = Measure::weighted);

struct GridSpec {
   std::size_t radial_per_segment = 200;
   std::optional<std::size_t> angular;  // default 4N + 8

   GridSpec refined() const;  // twice the nodes in both directions
};

// Truncated weighted Bergman projection
//    P f(z) = sum_{n<=N} alpha_n z^n <f, w^n>_lambda
// with the inner products taken by the grid quadrature, and alpha_n = 1/mu_n
// from the discrete moments so that P is an exact orthogonal projection for
// the discrete inner product.
class DiscreteProjector {
public:
   // Throws std::invalid_argument for a Dirac weight or fewer than 4N + 4
   // angular nodes.
   DiscreteProjector(const RadialWeight& weight, std::size_t N, const GridSpec& spec = {});

   std::shared_ptr<const PolarGrid> grid() const noexcept { return grid_; }
   std::size_t truncation() const noexcept { return N_; }
   const std::vector<double>& moments() const noexcept { return mu_; }

   GridFunction sample(const std::function<std::complex<double>(std::complex<double>)>& f) const;

   // <f, w^n>_lambda for n = 0..N.
   std::vector<std::complex<double>> monomial_coefficients(const GridFunction& f) const;

   // Throws std::invalid_argument when f lives on a different grid.
   GridFunction project(const GridFunction& f) const;

   std::complex<double> inner(const GridFunction& f, const GridFunction& g) const;

   // max_{m != n <= N} |<z^m, z^n>_lambda| / min mu.
   double orthogonality_defect() const;

private:
   void check_grid(const GridFunction& f) const;

   std::shared_ptr<const PolarGrid> grid_;
   std::size_t N_;
   std::vector<double> mu_;
   // twiddle_[n * M + j] = e^(i n theta_j)
   std::vector<std::complex<double>> twiddle_;
};

// Members of the probe family.
struct TestFunction {
   enum class Kind { monomial, radial_power, bump, trig_radial };

   Kind kind = Kind::monomial;
   int m = 0;               // monomial degree
   bool conjugate = false;  // monomial: conj(z)^m
   double s = 1.0;          // radial_power: (1 - |z|^2)^s; trig_radial profile exponent
   double center = 0.5;     // bump: exp(-((|z| - center)/width)^2)
   double width = 0.1;
   std::vector<std::pair<int, std::complex<double>>> modes;  // trig_radial

   std::complex<double> operator()(std::complex<double> z) const;
   std::string describe() const;

   static TestFunction monomial(int m, bool conjugate = false);
   static TestFunction radial_power(double s);
   static TestFunction bump(double center, double width);
   // sum_k c_k |z|^|k| e^(i k theta) (1 - |z|^2)^s
   static TestFunction trig_radial(std::vector<std::pair<int, std::complex<double>>> modes, double s);

   // {"type":"monomial","m":3,"conjugate":true}, {"type":"radial_power","s":0.5},
   // {"type":"bump","center":0.5,"width":0.1},
   // {"type":"trig_radial","s":0.5,"modes":[[k, re, im], ...]}
   static TestFunction from_json(const nlohmann::json& j);
};

inline constexpr std::uint64_t kDefaultSeed = 20260611;

// z^m (m <= N), conj(z)^m (1 <= m <= N), (1 - |z|^2)^s for s in {1/4, 1/2, 1},
// three radial bumps and eight seeded random trigonometric-radial products.
std::vector<TestFunction> default_family(std::size_t N, std::uint64_t seed = kDefaultSeed);

struct ProbeRow {
   std::string name;
   double norm_f = 0.0;
   double norm_Pf = 0.0;
   double ratio = 0.0;
   bool skipped = false;  // ||f|| = 0
};

struct LpProbe {
   double p = 2.0;
   double max_ratio = 0.0;
   std::string argmax;
   std::vector<ProbeRow> rows;
};

// Lower-bound witness of ||P||_{L^p(lambda) -> L^p(lambda)}: the maximum
// of ||P f||/||f|| over the family. One result per exponent.
std::vector<LpProbe> lp_probe(const RadialWeight& weight, const std::vector<double>& ps,
                              const std::vector<TestFunction>& family, std::size_t N,
                              const GridSpec& spec = {});

LpProbe lp_probe(const RadialWeight& weight, double p, const std::vector<TestFunction>& family,
                 std::size_t N, const GridSpec& spec = {});

struct CsGridSpec {
   std::size_t radial_per_segment = 16;
   std::size_t angular = 32;
   std::size_t N = 40;
};

// With b_n = alpha_n - alpha_(n-1), the kernel factors as
//    K(z, w) = K1 K2,  K1 = 1/(1 - z conj(w)),  K2 = sum_{n<=N} b_n (z conj(w))^n.
// T f = int K f dA and S_i f = int |K_i|^2 f dA on L^p(dA). Pointwise
// Cauchy-Schwarz gives |T f| <= (S_1|f|)^(1/2) (S_2|f|)^(1/2), hence
//    ||T f||_p^(2p) <= ||S_1|f|||_p^p ||S_2|f|||_p^p.
struct CsWitness {
   double lhs = 0.0;
   double rhs = 0.0;
   bool holds = false;
};

CsWitness cs_split_witness(const RadialWeight& weight, const TestFunction& f, double p,
                           const CsGridSpec& spec = {});

} // namespace bergkern
