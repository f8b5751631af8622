#include "bergkern/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bergkern/errors.hpp"
#include "bergkern/parallel.hpp"

namespace bergkern {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
using cplx = std::complex<double>;

// Horner evaluation of p and p' at t.
std::pair<cplx, cplx> eval_with_derivative(const std::vector<double>& c, cplx t)
{
   cplx p = 0.0;
   cplx dp = 0.0;
   for (std::size_t i = c.size(); i-- > 0;) {
      dp = dp * t + p;
      p = p * t + c[i];
   }
   return {p, dp};
}

cplx eval_poly(const std::vector<double>& c, cplx t)
{
   cplx p = 0.0;
   for (std::size_t i = c.size(); i-- > 0;)
      p = p * t + c[i];
   return p;
}

struct ContourScan {
   std::size_t samples = 0;
   int winding = 0;
   double min_modulus = 0.0;
   double floor = 0.0;           // guaranteed lower bound of |G_N| on the circle
   double max_phase_step = 0.0;
   bool phase_safe = false;      // every step certified by the Lipschitz disc
};

// Uniform scan of |t| = rho with M points. Between neighbouring samples
// |G(t) - G(t_j)| <= L h, with L = sum k |c_k| rho^(k-1) and h the chord
// spacing, so the image of each arc stays in a disc around the larger
// sample; if that disc misses 0 the phase increment is the principal one.
ContourScan scan_contour(const std::vector<double>& c, double rho, std::size_t M)
{
   double lipschitz = 0.0;
   {
      double rp = 1.0;
      for (std::size_t k = 1; k < c.size(); ++k) {
         lipschitz += static_cast<double>(k) * std::abs(c[k]) * rp;
         rp *= rho;
      }
   }
   std::vector<cplx> g(M);
   for (std::size_t j = 0; j < M; ++j)
      g[j] = eval_poly(c, std::polar(rho, 2.0 * pi * static_cast<double>(j) / static_cast<double>(M)));

   const double h = 2.0 * pi * rho / static_cast<double>(M);
   ContourScan scan;
   scan.samples = M;
   scan.min_modulus = std::numeric_limits<double>::infinity();
   scan.floor = std::numeric_limits<double>::infinity();
   scan.phase_safe = true;
   double total_phase = 0.0;
   for (std::size_t j = 0; j < M; ++j) {
      const cplx a = g[j];
      const cplx b = g[(j + 1) % M];
      const double local_floor = std::max(std::abs(a), std::abs(b)) - lipschitz * h;
      scan.min_modulus = std::min(scan.min_modulus, std::abs(a));
      scan.floor = std::min(scan.floor, local_floor);
      if (!(local_floor > 0.0))
         scan.phase_safe = false;
      const double step = std::arg(b / a);
      scan.max_phase_step = std::max(scan.max_phase_step, std::abs(step));
      total_phase += step;
   }
   scan.winding = static_cast<int>(std::lround(total_phase / (2.0 * pi)));
   return scan;
}

// Newton on the truncated F with real coefficients a.
LocatedZero polish(const std::vector<double>& a, cplx t)
{
   LocatedZero z;
   for (int it = 0; it < 60; ++it) {
      const auto [f, df] = eval_with_derivative(a, t);
      if (df == cplx(0.0))
         break;
      const cplx step = f / df;
      t -= step;
      z.iterations = it + 1;
      if (std::abs(step) <= 4.0 * eps * std::max(1.0, std::abs(t)))
         break;
   }
   z.t = t;
   return z;
}

// Delves-Lyness: power sums of the zeros inside the circle from the
// trapezoid rule applied to t^(p+1) G'(t)/G(t), then Newton's identities and
// the companion matrix. Only used to seed Newton.
std::vector<cplx> contour_zero_seeds(const std::vector<double>& c, double rho, int count,
                                     std::size_t M)
{
   std::vector<cplx> sums(static_cast<std::size_t>(count) + 1, 0.0);
   for (std::size_t j = 0; j < M; ++j) {
      const cplx t = std::polar(rho, 2.0 * pi * static_cast<double>(j) / static_cast<double>(M));
      const auto [g, dg] = eval_with_derivative(c, t);
      const cplx ratio = dg / g;
      cplx tp = t;
      for (int p = 0; p <= count; ++p) {
         sums[static_cast<std::size_t>(p)] += tp * ratio;
         tp *= t;
      }
   }
   for (auto& s : sums)
      s /= static_cast<double>(M);

   // sums[p] ~ sum z^p for p = 0..count; sums[0] is the count itself.
   // Monic polynomial prod (t - z_i) = t^k + e_1 t^(k-1) + ... via Newton's identities.
   const int k = count;
   std::vector<cplx> e(static_cast<std::size_t>(k) + 1, 0.0);
   e[0] = 1.0;
   for (int m = 1; m <= k; ++m) {
      cplx acc = 0.0;
      for (int i = 1; i <= m; ++i)
         acc += e[static_cast<std::size_t>(m - i)] * sums[static_cast<std::size_t>(i)];
      e[static_cast<std::size_t>(m)] = -acc / static_cast<double>(m);
   }
   Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(k, k);
   for (int i = 1; i < k; ++i)
      companion(i, i - 1) = 1.0;
   for (int i = 0; i < k; ++i)
      companion(i, k - 1) = -e[static_cast<std::size_t>(k - i)];
   Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
   std::vector<cplx> seeds;
   for (int i = 0; i < k; ++i)
      seeds.push_back(solver.eigenvalues()(i));
   return seeds;
}

struct Attempt {
   ZeroReport report;
   std::vector<double> poly;
};

Attempt attempt_winding(const KernelSeries& series, double rho, const WindingOptions& options)
{
   Attempt at;
   ZeroReport& r = at.report;
   r.rho = rho;
   const double a0 = series.alpha(0);

   std::vector<std::size_t> truncations;
   if (options.N) {
      truncations.push_back(std::max<std::size_t>(*options.N, 2));
   } else {
      for (double rel : {1e-6, 1e-10, 1e-14}) {
         const auto N = truncation_for(series, rho, rel * a0 / ((1 + rho) * (1 + rho)), options.max_terms);
         if (N)
            truncations.push_back(std::max<std::size_t>(*N, 2));
      }
      if (truncations.empty())
         truncations.push_back(options.max_terms);
   }

   std::ostringstream diag;
   for (std::size_t N : truncations) {
      r.N = N;
      at.poly = diagonal_poly(series, N);
      r.truncation_gap = (1.0 + rho) * (1.0 + rho) * tail_bound(series, rho, N);

      ContourScan scan;
      for (std::size_t M = 1024; M <= options.max_samples; M *= 2) {
         scan = scan_contour(at.poly, rho, M);
         if (scan.phase_safe && scan.max_phase_step < pi / 2 && scan.floor > r.truncation_gap)
            break;
         // Refining cannot help once the samples themselves are below the gap.
         if (scan.min_modulus <= r.truncation_gap)
            break;
      }
      r.contour_samples = scan.samples;
      r.zero_count = scan.winding;
      r.min_modulus = scan.min_modulus;
      r.modulus_floor = scan.floor;
      r.certified = scan.phase_safe && scan.max_phase_step < pi / 2 && scan.floor > r.truncation_gap;
      if (r.certified)
         break;
      diag << "N=" << N << ": min|G_N|=" << scan.min_modulus << ", floor=" << scan.floor
           << ", truncation gap=" << r.truncation_gap << ", samples=" << scan.samples << "; ";
   }
   r.diagnostics = diag.str();
   return at;
}

void locate_zeros(const KernelSeries& series, Attempt& at)
{
   ZeroReport& r = at.report;
   if (r.zero_count <= 0)
      return;
   if (r.zero_count > 24) {
      r.diagnostics += "too many zeros to locate from contour moments; ";
      return;
   }
   const std::vector<double> a = series.alphas(r.N);
   const std::size_t M = std::max<std::size_t>(8192, r.contour_samples);
   const auto seeds = contour_zero_seeds(at.poly, r.rho, r.zero_count, M);

   std::vector<LocatedZero> found;
   for (cplx s : seeds) {
      LocatedZero z = polish(a, s);
      if (std::abs(z.t.imag()) <= 1e-12 * std::max(1.0, std::abs(z.t))) {
         z.t = cplx(z.t.real(), 0.0);
         LocatedZero again = polish(a, z.t);
         z.t = cplx(again.t.real(), 0.0);
         z.iterations += again.iterations;
      }
      if (!(std::abs(z.t) < r.rho))
         continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const LocatedZero& f) {
         return std::abs(f.t - z.t) <= 1e-8 * std::max(1.0, std::abs(z.t));
      });
      if (duplicate)
         continue;
      z.residual = std::abs(eval_poly(a, z.t)) + tail_bound(series, std::abs(z.t), r.N);
      found.push_back(z);
   }
   std::sort(found.begin(), found.end(), [](const LocatedZero& x, const LocatedZero& y) {
      if (x.t.real() != y.t.real())
         return x.t.real() < y.t.real();
      return x.t.imag() < y.t.imag();
   });
   int multiplicity_gap = r.zero_count - static_cast<int>(found.size());
   if (multiplicity_gap != 0)
      r.diagnostics += "located " + std::to_string(found.size()) + " distinct zeros for winding " +
                       std::to_string(r.zero_count) + "; ";
   r.zeros = std::move(found);
}

double smoothstep(double s)
{
   auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
   if (s <= 0.0)
      return 0.0;
   if (s >= 1.0)
      return 1.0;
   return f(s) / (f(s) + f(1.0 - s));
}

} // namespace

// ---------------------------------------------------------------------------

SecondDifferenceBound second_difference_bound(const KernelSeries& series, std::size_t n_cutoff)
{
   if (n_cutoff < 2)
      throw std::invalid_argument("second_difference_bound needs n_cutoff >= 2");
   SecondDifferenceBound b;
   b.n_cutoff = n_cutoff;
   b.all_negative = true;
   for (std::size_t k = 2; k <= n_cutoff; ++k) {
      const SecondDifference d = series.second_difference(k);
      b.partial_sum += std::abs(d.value);
      if (d.sign != Sign::negative)
         b.all_negative = false;
      if (d.sign == Sign::ambiguous && !b.first_ambiguous)
         b.first_ambiguous = k;
   }
   b.remainder_bound = series.second_difference_remainder(n_cutoff);
   // Summation rounding on top of the per-term accuracy.
   const double rounding = 4.0 * (static_cast<double>(n_cutoff) + 1.0) * eps * b.partial_sum;
   b.s_bound = b.partial_sum + rounding + b.remainder_bound;
   b.certified = std::isfinite(b.s_bound) && !b.first_ambiguous;
   b.telescoped = series.first_difference(0) - series.first_difference(n_cutoff - 1);
   b.limit_first_difference = series.limit_first_difference();
   return b;
}

double affine_min_modulus(double a, double b, double radius)
{
   return std::abs(std::abs(a) - std::abs(b) * radius);
}

RoucheCertificate rouche_certificate(const KernelSeries& series, double epsilon, std::size_t n_cutoff)
{
   if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::domain_error("epsilon must lie in (0, 1)");
   RoucheCertificate cert;
   cert.epsilon = epsilon;
   cert.ring_radius = 1.0 - epsilon;

   const double a = series.alpha(0);
   const double b = series.first_difference(0) - a;  // alpha_1 - 2 alpha_0
   if (b != 0.0)
      cert.linear_root = -a / b;
   cert.min_L = affine_min_modulus(a, b, cert.ring_radius);

   constexpr std::size_t samples = 4096;
   cert.min_L_sampled = std::numeric_limits<double>::infinity();
   for (std::size_t j = 0; j < samples; ++j) {
      const cplx t = std::polar(cert.ring_radius, 2.0 * pi * static_cast<double>(j) / samples);
      cert.min_L_sampled = std::min(cert.min_L_sampled, std::abs(a + b * t));
   }

   const SecondDifferenceBound sb = second_difference_bound(series, n_cutoff);
   cert.S_bound = sb.s_bound;
   cert.s_bound_certified = sb.certified;
   cert.holds = cert.linear_root && std::abs(*cert.linear_root) < cert.ring_radius &&
                sb.certified && cert.min_L > cert.S_bound;
   return cert;
}

std::vector<double> default_epsilon_grid()
{
   std::vector<double> grid;
   constexpr int steps = 15;
   for (int i = 0; i <= steps; ++i)
      grid.push_back(1e-3 * std::pow(30.0, static_cast<double>(i) / steps));
   return grid;
}

std::optional<RoucheCertificate> largest_passing_epsilon(const KernelSeries& series,
                                                         const std::vector<double>& grid,
                                                         std::size_t n_cutoff)
{
   std::optional<RoucheCertificate> best;
   for (double e : grid) {
      RoucheCertificate c = rouche_certificate(series, e, n_cutoff);
      if (c.holds && (!best || e > best->epsilon))
         best = c;
   }
   return best;
}

ZeroReport count_zeros_winding(const KernelSeries& series, double rho, const WindingOptions& options)
{
   if (!(rho > 0.0 && rho < 1.0))
      throw std::domain_error("count_zeros_winding needs 0 < rho < 1");

   std::vector<double> radii{rho};
   for (int i = 1; static_cast<int>(radii.size()) <= options.max_retries; ++i) {
      const double up = rho + i * options.retry_step;
      const double down = rho - i * options.retry_step;
      if (up < 1.0)
         radii.push_back(up);
      if (down > 0.0 && static_cast<int>(radii.size()) <= options.max_retries)
         radii.push_back(down);
      if (up >= 1.0 && down <= 0.0)
         break;
   }

   Attempt at;
   std::string history;
   for (std::size_t i = 0; i < radii.size(); ++i) {
      at = attempt_winding(series, radii[i], options);
      at.report.retries = static_cast<int>(i);
      if (at.report.certified)
         break;
      history += "rho=" + std::to_string(radii[i]) + " uncertified (" + at.report.diagnostics + ") ";
   }
   at.report.requested_rho = rho;
   if (!at.report.certified)
      at.report.diagnostics = history;
   else if (options.locate)
      locate_zeros(series, at);
   return at.report;
}

// ---------------------------------------------------------------------------

Range Range::parse(const std::string& text)
{
   Range r;
   char c1 = 0;
   char c2 = 0;
   std::istringstream is(text);
   if (!(is >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' ||
       !(is >> std::ws).eof())
      throw std::invalid_argument("range must be start:stop:step (got '" + text + "')");
   if (!(r.step > 0.0) || r.stop < r.start)
      throw std::invalid_argument("range needs step > 0 and stop >= start (got '" + text + "')");
   return r;
}

std::vector<double> Range::values() const
{
   std::vector<double> out;
   const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
   for (std::size_t i = 0; i < count; ++i)
      out.push_back(start + static_cast<double>(i) * step);
   return out;
}

std::vector<SweepCell> sweep_step_weights(const Range& A, const Range& x, double rho, unsigned threads)
{
   const auto as = A.values();
   const auto xs = x.values();
   std::vector<SweepCell> cells(as.size() * xs.size());
   for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j)
         cells[i * xs.size() + j] = SweepCell{as[i], xs[j], -1, false, rho, {}};

   WindingOptions options;
   options.locate = false;
   parallel_for(cells.size(), [&](std::size_t i) {
      SweepCell& cell = cells[i];
      try {
         if (!(cell.A > 0.0))
            throw std::invalid_argument("A must be positive");
         const KernelSeries series(RadialWeight::step(cell.A, cell.x));
         const ZeroReport report = count_zeros_winding(series, rho, options);
         cell.zero_count = report.zero_count;
         cell.certified = report.certified;
         cell.rho_used = report.rho;
         if (!report.certified)
            cell.error = "uncertified";
      } catch (const std::exception& e) {
         cell.error = e.what();
      }
   }, threads);
   return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells, double rho)
{
   const auto old = os.precision(15);
   os << "# step weights lambda = A on [0,x], 1 on (x,1]; zero_count = zeros of "
         "F(t) = sum alpha_n t^n in |t| < rho_used; requested rho = "
      << rho << "; units: alpha_n = 1/mu_n (unscaled)\n";
   os << "A,x,zero_count,certified,rho_used,error\n";
   for (const auto& c : cells) {
      std::string err = c.error;
      std::replace(err.begin(), err.end(), ',', ';');
      os << c.A << ',' << c.x << ',' << c.zero_count << ',' << (c.certified ? 1 : 0) << ','
         << c.rho_used << ',' << err << '\n';
   }
   os.precision(old);
}

RadialWeight mollify_weight(const RadialWeight& step, double width, std::size_t knots_per_transition)
{
   if (!(width > 0.0))
      throw std::invalid_argument("mollifier width must be positive");
   if (knots_per_transition < 3)
      throw std::invalid_argument("need at least three knots per transition");
   const auto segments = step.as_segments();

   double prev = 0.0;
   double smallest_gap = std::numeric_limits<double>::infinity();
   for (const auto& s : segments) {
      smallest_gap = std::min(smallest_gap, s.breakpoint - prev);
      prev = s.breakpoint;
   }
   if (segments.size() > 1 && !(width < smallest_gap))
      throw std::invalid_argument("mollifier width must be smaller than the smallest breakpoint gap");

   std::vector<double> radii{0.0};
   std::vector<double> values{segments.front().value};
   for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
      const double b = segments[i].breakpoint;
      const double left = segments[i].value;
      const double right = segments[i + 1].value;
      const double start = b - 0.5 * width;
      for (std::size_t j = 0; j < knots_per_transition; ++j) {
         const double s = static_cast<double>(j) / static_cast<double>(knots_per_transition - 1);
         const double r = start + s * width;
         if (r <= radii.back())
            continue;
         radii.push_back(r);
         values.push_back(left + (right - left) * smoothstep(s));
      }
   }
   return RadialWeight::sampled(std::move(radii), std::move(values));
}

DiracAnalysis dirac_zero_threshold(double k)
{
   if (!(k >= 0.0) || !std::isfinite(k))
      throw std::domain_error("Dirac mass must be non-negative");
   DiracAnalysis out;
   out.mass = k;
   if (k == 0.0)
      return out;
   out.has_zero_in_disc = k > pi / 3.0;
   if (out.has_zero_in_disc) {
      const double x = pi / k;
      out.zero = -x / (1.0 + std::sqrt(1.0 + x));  // 1 - sqrt(1 + x) without cancellation
   }
   return out;
}

double dirac_diagonal(double k, double t)
{
   return 1.0 / (pi + k) - 1.0 / pi + 1.0 / (pi * (1.0 - t) * (1.0 - t));
}

double hartogs_monomial_norm_sq(const RadialWeight& weight, int m, int j, double tol)
{
   if (j < 0)
      throw std::domain_error("fibre exponent must be non-negative");
   return pi / (j + 1.0) * moment_quadrature_power(weight, m, j + 1, tol);
}

InflationCheck inflation_check(const RadialWeight& weight, cplx z, cplx t, double tol)
{
   if (weight.is_dirac())
      throw std::invalid_argument("the inflated domain needs a weight with a density");
   if (!(std::abs(z) < 1.0) || !(std::abs(t) < 1.0))
      throw std::domain_error("inflation_check needs z and t inside the unit disc");
   if (!(tol > 0.0))
      throw std::invalid_argument("tolerance must be positive");

   InflationCheck out;
   out.tol = tol;
   const KernelSeries series(weight);
   const KernelValue kv = kernel_eval(series, z, t, 0.25 * tol * pi);
   out.rhs = kv.value / pi;

   const cplx u = z * std::conj(t);
   const auto N = truncation_for(series, std::abs(u), 0.25 * tol * pi);
   if (!N)
      throw convergence_error("inflation_check: series truncation budget exceeded",
                              tail_bound(series, std::abs(u), kMaxTerms));
   std::vector<double> norms(*N + 1);
   parallel_for(norms.size(), [&](std::size_t m) {
      norms[m] = hartogs_monomial_norm_sq(weight, static_cast<int>(m), 0, 1e-13);
   });
   cplx lhs = 0.0;
   for (std::size_t m = norms.size(); m-- > 0;)
      lhs = lhs * u + 1.0 / norms[m];
   out.lhs = lhs;
   out.terms = *N + 1;
   out.difference = std::abs(out.lhs - out.rhs);
   out.agree = out.difference <= tol;
   return out;
}

} // namespace bergkern
