#include "bergkern/projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bergkern/kernel.hpp"
#include "bergkern/parallel.hpp"
#include "bergkern/quadrature.hpp"

namespace bergkern {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

cplx int_power(cplx z, int m)
{
   cplx out = 1.0;
   for (int i = 0; i < m; ++i)
      out *= z;
   return out;
}

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical on every platform.
double unit_uniform(std::mt19937_64& rng)
{
   return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

// ---------------------------------------------------------------------------

PolarGrid::PolarGrid(const RadialWeight& weight, std::size_t radial_per_segment, std::size_t angular)
   : angular_(angular)
{
   if (weight.is_dirac())
      throw std::invalid_argument("projector grids need a weight with a density");
   if (radial_per_segment == 0 || angular == 0)
      throw std::invalid_argument("grid sizes must be positive");
   std::vector<double> breaks{0.0};
   for (double b : weight.breakpoints())
      breaks.push_back(b);
   breaks.push_back(1.0);

   const GaussRule& rule = gauss_legendre(radial_per_segment);
   for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
      const double mid = 0.5 * (breaks[s] + breaks[s + 1]);
      const double half = 0.5 * (breaks[s + 1] - breaks[s]);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
         const double r = mid + half * rule.nodes[k];
         radii_.push_back(r);
         radial_weights_.push_back(half * rule.weights[k] * r);
         lambda_.push_back(weight(r));
      }
   }
}

double PolarGrid::theta(std::size_t j) const noexcept
{
   return 2.0 * pi * static_cast<double>(j) / static_cast<double>(angular_);
}

cplx PolarGrid::point(std::size_t i, std::size_t j) const noexcept
{
   return std::polar(radii_[i], theta(j));
}

double PolarGrid::area_weight(std::size_t i) const noexcept
{
   return radial_weights_[i] * 2.0 * pi / static_cast<double>(angular_);
}

GridFunction sample(std::shared_ptr<const PolarGrid> grid, const std::function<cplx(cplx)>& f)
{
   GridFunction out;
   out.values.resize(grid->size());
   const std::size_t M = grid->angular_count();
   for (std::size_t i = 0; i < grid->radial_count(); ++i)
      for (std::size_t j = 0; j < M; ++j)
         out.values[i * M + j] = f(grid->point(i, j));
   out.grid = std::move(grid);
   return out;
}

double lp_norm(const GridFunction& f, double p, Measure measure)
{
   if (!(p > 1.0) || !std::isfinite(p))
      throw std::domain_error("L^p norms need 1 < p < inf");
   const PolarGrid& g = *f.grid;
   const std::size_t M = g.angular_count();
   double sum = 0.0;
   for (std::size_t i = 0; i < g.radial_count(); ++i) {
      double ring = 0.0;
      for (std::size_t j = 0; j < M; ++j)
         ring += std::pow(std::abs(f.values[i * M + j]), p);
      const double w = g.area_weight(i) * (measure == Measure::weighted ? g.lambda()[i] : 1.0);
      sum += ring * w;
   }
   return std::pow(sum, 1.0 / p);
}

GridSpec GridSpec::refined() const
{
   GridSpec out = *this;
   out.radial_per_segment *= 2;
   if (out.angular)
      *out.angular *= 2;
   return out;
}

// ---------------------------------------------------------------------------

DiscreteProjector::DiscreteProjector(const RadialWeight& weight, std::size_t N, const GridSpec& spec)
   : N_(N)
{
   const std::size_t M = spec.angular.value_or(4 * N + 8);
   if (M < 4 * N + 4)
      throw std::invalid_argument("projector needs at least 4N + 4 angular nodes");
   grid_ = std::make_shared<PolarGrid>(weight, spec.radial_per_segment, M);

   twiddle_.resize((N + 1) * M);
   for (std::size_t n = 0; n <= N; ++n)
      for (std::size_t j = 0; j < M; ++j)
         twiddle_[n * M + j] = std::polar(1.0, static_cast<double>(n) * grid_->theta(j));

   mu_.assign(N + 1, 0.0);
   const auto& r = grid_->radii();
   for (std::size_t i = 0; i < r.size(); ++i) {
      const double w = 2.0 * pi * grid_->radial_weights()[i] * grid_->lambda()[i];
      double rp = 1.0;
      for (std::size_t n = 0; n <= N; ++n) {
         mu_[n] += w * rp;
         rp *= r[i] * r[i];
      }
   }
}

GridFunction DiscreteProjector::sample(const std::function<cplx(cplx)>& f) const
{
   return bergkern::sample(grid_, f);
}

void DiscreteProjector::check_grid(const GridFunction& f) const
{
   if (f.grid != grid_ || f.values.size() != grid_->size())
      throw std::invalid_argument("function is not sampled on this projector's grid");
}

std::vector<cplx> DiscreteProjector::monomial_coefficients(const GridFunction& f) const
{
   check_grid(f);
   const std::size_t M = grid_->angular_count();
   const auto& r = grid_->radii();
   std::vector<cplx> c(N_ + 1, 0.0);
   for (std::size_t i = 0; i < r.size(); ++i) {
      const cplx* row = &f.values[i * M];
      const double w = grid_->area_weight(i) * grid_->lambda()[i];
      double rp = w;
      for (std::size_t n = 0; n <= N_; ++n) {
         const cplx* tw = &twiddle_[n * M];
         cplx acc = 0.0;
         for (std::size_t j = 0; j < M; ++j)
            acc += row[j] * std::conj(tw[j]);
         c[n] += acc * rp;
         rp *= r[i];
      }
   }
   return c;
}

GridFunction DiscreteProjector::project(const GridFunction& f) const
{
   const std::vector<cplx> c = monomial_coefficients(f);
   const std::size_t M = grid_->angular_count();
   const auto& r = grid_->radii();
   GridFunction out;
   out.grid = grid_;
   out.values.assign(grid_->size(), 0.0);
   std::vector<cplx> h(N_ + 1);
   for (std::size_t i = 0; i < r.size(); ++i) {
      double rp = 1.0;
      for (std::size_t n = 0; n <= N_; ++n) {
         h[n] = c[n] / mu_[n] * rp;
         rp *= r[i];
      }
      cplx* row = &out.values[i * M];
      for (std::size_t n = 0; n <= N_; ++n) {
         if (h[n] == cplx(0.0))
            continue;
         const cplx* tw = &twiddle_[n * M];
         for (std::size_t j = 0; j < M; ++j)
            row[j] += h[n] * tw[j];
      }
   }
   return out;
}

cplx DiscreteProjector::inner(const GridFunction& f, const GridFunction& g) const
{
   check_grid(f);
   check_grid(g);
   const std::size_t M = grid_->angular_count();
   cplx sum = 0.0;
   for (std::size_t i = 0; i < grid_->radial_count(); ++i) {
      cplx ring = 0.0;
      for (std::size_t j = 0; j < M; ++j)
         ring += f.values[i * M + j] * std::conj(g.values[i * M + j]);
      sum += ring * grid_->area_weight(i) * grid_->lambda()[i];
   }
   return sum;
}

double DiscreteProjector::orthogonality_defect() const
{
   const std::size_t M = grid_->angular_count();
   const auto& r = grid_->radii();
   // Radial factor sum_i r_i^(m+n) lambda_i w_i for every m + n <= 2N.
   std::vector<double> radial(2 * N_ + 1, 0.0);
   for (std::size_t i = 0; i < r.size(); ++i) {
      const double w = grid_->radial_weights()[i] * grid_->lambda()[i];
      double rp = 1.0;
      for (std::size_t k = 0; k <= 2 * N_; ++k) {
         radial[k] += w * rp;
         rp *= r[i];
      }
   }
   double worst = 0.0;
   for (std::size_t m = 0; m <= N_; ++m) {
      for (std::size_t n = m + 1; n <= N_; ++n) {
         cplx angular = 0.0;
         for (std::size_t j = 0; j < M; ++j)
            angular += twiddle_[m * M + j] * std::conj(twiddle_[n * M + j]);
         angular *= 2.0 * pi / static_cast<double>(M);
         worst = std::max(worst, std::abs(angular * radial[m + n]));
      }
   }
   return worst / *std::min_element(mu_.begin(), mu_.end());
}

// ---------------------------------------------------------------------------

cplx TestFunction::operator()(cplx z) const
{
   const double r2 = std::norm(z);
   switch (kind) {
   case Kind::monomial:
      return int_power(conjugate ? std::conj(z) : z, m);
   case Kind::radial_power:
      return std::pow(std::max(0.0, 1.0 - r2), s);
   case Kind::bump: {
      const double u = (std::sqrt(r2) - center) / width;
      return std::exp(-u * u);
   }
   case Kind::trig_radial: {
      cplx acc = 0.0;
      for (const auto& [k, c] : modes)
         acc += c * (k >= 0 ? int_power(z, k) : int_power(std::conj(z), -k));
      return acc * std::pow(std::max(0.0, 1.0 - r2), s);
   }
   }
   return 0.0;
}

std::string TestFunction::describe() const
{
   std::ostringstream os;
   switch (kind) {
   case Kind::monomial:
      os << (conjugate ? "conj(z)^" : "z^") << m;
      break;
   case Kind::radial_power:
      os << "(1-|z|^2)^" << s;
      break;
   case Kind::bump:
      os << "bump(" << center << ";" << width << ")";
      break;
   case Kind::trig_radial:
      os << "trig_radial(" << modes.size() << " modes;s=" << s << ")";
      break;
   }
   return os.str();
}

TestFunction TestFunction::monomial(int m, bool conjugate)
{
   if (m < 0)
      throw std::invalid_argument("monomial degree must be non-negative");
   TestFunction f;
   f.kind = Kind::monomial;
   f.m = m;
   f.conjugate = conjugate;
   return f;
}

TestFunction TestFunction::radial_power(double s)
{
   if (!(s >= 0.0))
      throw std::invalid_argument("radial power exponent must be non-negative");
   TestFunction f;
   f.kind = Kind::radial_power;
   f.s = s;
   return f;
}

TestFunction TestFunction::bump(double center, double width)
{
   if (!(width > 0.0))
      throw std::invalid_argument("bump width must be positive");
   TestFunction f;
   f.kind = Kind::bump;
   f.center = center;
   f.width = width;
   return f;
}

TestFunction TestFunction::trig_radial(std::vector<std::pair<int, cplx>> modes, double s)
{
   if (!(s >= 0.0))
      throw std::invalid_argument("profile exponent must be non-negative");
   TestFunction f;
   f.kind = Kind::trig_radial;
   f.modes = std::move(modes);
   f.s = s;
   return f;
}

TestFunction TestFunction::from_json(const nlohmann::json& j)
{
   try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "monomial")
         return monomial(j.at("m").get<int>(), j.value("conjugate", false));
      if (type == "radial_power")
         return radial_power(j.at("s").get<double>());
      if (type == "bump")
         return bump(j.value("center", 0.5), j.value("width", 0.1));
      if (type == "trig_radial") {
         std::vector<std::pair<int, cplx>> modes;
         for (const auto& m : j.at("modes"))
            modes.emplace_back(m.at(0).get<int>(), cplx(m.at(1).get<double>(), m.at(2).get<double>()));
         return trig_radial(std::move(modes), j.value("s", 1.0));
      }
      throw std::invalid_argument("unknown test function type '" + type + "'");
   } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed test function: ") + e.what());
   }
}

std::vector<TestFunction> default_family(std::size_t N, std::uint64_t seed)
{
   std::vector<TestFunction> family;
   for (std::size_t m = 0; m <= N; ++m)
      family.push_back(TestFunction::monomial(static_cast<int>(m)));
   for (std::size_t m = 1; m <= N; ++m)
      family.push_back(TestFunction::monomial(static_cast<int>(m), true));
   for (double s : {0.25, 0.5, 1.0})
      family.push_back(TestFunction::radial_power(s));
   for (double c : {0.2, 0.5, 0.8})
      family.push_back(TestFunction::bump(c, 0.1));

   std::mt19937_64 rng(seed);
   for (int f = 0; f < 8; ++f) {
      const int count = 3 + static_cast<int>(unit_uniform(rng) * 3.0);
      std::vector<std::pair<int, cplx>> modes;
      for (int i = 0; i < count; ++i) {
         const int k = static_cast<int>(std::floor(unit_uniform(rng) * 17.0)) - 8;
         const double re = 2.0 * unit_uniform(rng) - 1.0;
         const double im = 2.0 * unit_uniform(rng) - 1.0;
         modes.emplace_back(k, cplx(re, im));
      }
      family.push_back(TestFunction::trig_radial(std::move(modes), 0.25 + 0.75 * unit_uniform(rng)));
   }
   return family;
}

std::vector<LpProbe> lp_probe(const RadialWeight& weight, const std::vector<double>& ps,
                              const std::vector<TestFunction>& family, std::size_t N, const GridSpec& spec)
{
   if (family.empty())
      throw std::invalid_argument("lp_probe needs a non-empty family");
   for (double p : ps)
      if (!(p > 1.0) || !std::isfinite(p))
         throw std::domain_error("L^p norms need 1 < p < inf");

   const DiscreteProjector projector(weight, N, spec);
   std::vector<std::vector<ProbeRow>> rows(family.size(), std::vector<ProbeRow>(ps.size()));
   parallel_for(family.size(), [&](std::size_t i) {
      const GridFunction f = projector.sample([&](cplx z) { return family[i](z); });
      const GridFunction pf = projector.project(f);
      for (std::size_t k = 0; k < ps.size(); ++k) {
         ProbeRow& row = rows[i][k];
         row.name = family[i].describe();
         row.norm_f = lp_norm(f, ps[k]);
         row.norm_Pf = lp_norm(pf, ps[k]);
         if (row.norm_f == 0.0) {
            row.skipped = true;
            continue;
         }
         row.ratio = row.norm_Pf / row.norm_f;
      }
   });

   std::vector<LpProbe> out(ps.size());
   for (std::size_t k = 0; k < ps.size(); ++k) {
      out[k].p = ps[k];
      for (std::size_t i = 0; i < family.size(); ++i) {
         const ProbeRow& row = rows[i][k];
         if (!row.skipped && (out[k].argmax.empty() || row.ratio > out[k].max_ratio)) {
            out[k].max_ratio = row.ratio;
            out[k].argmax = row.name;
         }
         out[k].rows.push_back(row);
      }
   }
   return out;
}

LpProbe lp_probe(const RadialWeight& weight, double p, const std::vector<TestFunction>& family,
                 std::size_t N, const GridSpec& spec)
{
   return lp_probe(weight, std::vector<double>{p}, family, N, spec).front();
}

CsWitness cs_split_witness(const RadialWeight& weight, const TestFunction& f, double p, const CsGridSpec& spec)
{
   if (!(p > 1.0) || !std::isfinite(p))
      throw std::domain_error("L^p norms need 1 < p < inf");
   const PolarGrid grid(weight, spec.radial_per_segment, spec.angular);
   const std::size_t M = grid.angular_count();
   const std::size_t P = grid.size();

   const std::vector<double> alpha = KernelSeries(weight).alphas(spec.N);
   std::vector<double> b(alpha.size());
   for (std::size_t n = 0; n < alpha.size(); ++n)
      b[n] = alpha[n] - (n == 0 ? 0.0 : alpha[n - 1]);

   std::vector<cplx> points(P);
   std::vector<double> area(P);
   std::vector<double> absf(P);
   std::vector<cplx> fv(P);
   for (std::size_t i = 0; i < grid.radial_count(); ++i)
      for (std::size_t j = 0; j < M; ++j) {
         const std::size_t idx = i * M + j;
         points[idx] = grid.point(i, j);
         area[idx] = grid.area_weight(i);
         fv[idx] = f(points[idx]);
         absf[idx] = std::abs(fv[idx]);
      }

   std::vector<cplx> Tf(P);
   std::vector<double> S1(P), S2(P);
   parallel_for(P, [&](std::size_t a) {
      cplx t_acc = 0.0;
      double s1 = 0.0;
      double s2 = 0.0;
      for (std::size_t c = 0; c < P; ++c) {
         const cplx t = points[a] * std::conj(points[c]);
         const cplx k1 = 1.0 / (1.0 - t);
         cplx k2 = 0.0;
         for (std::size_t n = b.size(); n-- > 0;)
            k2 = k2 * t + b[n];
         t_acc += k1 * k2 * fv[c] * area[c];
         s1 += std::norm(k1) * absf[c] * area[c];
         s2 += std::norm(k2) * absf[c] * area[c];
      }
      Tf[a] = t_acc;
      S1[a] = s1;
      S2[a] = s2;
   });

   double t_norm = 0.0, s1_norm = 0.0, s2_norm = 0.0;
   for (std::size_t a = 0; a < P; ++a) {
      t_norm += std::pow(std::abs(Tf[a]), p) * area[a];
      s1_norm += std::pow(S1[a], p) * area[a];
      s2_norm += std::pow(S2[a], p) * area[a];
   }
   CsWitness w;
   w.lhs = t_norm * t_norm;
   w.rhs = s1_norm * s2_norm;
   w.holds = w.lhs <= w.rhs;
   return w;
}

} // namespace bergkern
