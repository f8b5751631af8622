#include "bergkern/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergkern/errors.hpp"
#include "bergkern/kernel.hpp"
#include "bergkern/parallel.hpp"
#include "bergkern/projector.hpp"
#include "bergkern/regularity.hpp"
#include "bergkern/repro.hpp"
#include "bergkern/weight_io.hpp"
#include "bergkern/weights.hpp"
#include "bergkern/zeros.hpp"

namespace bergkern::cli {

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;
using json = nlohmann::ordered_json;

// Raised for bad flag values discovered after parsing; maps to kUsage.
struct usage_error : std::invalid_argument {
   using std::invalid_argument::invalid_argument;
};

struct Common {
   std::string weight;
   std::string step;
   double tol = kDefaultTol;
   bool scaled = false;
   unsigned threads = 0;
   std::string out;
};

double unit_scale(const Common& c) { return c.scaled ? 2.0 * pi : 1.0; }

const char* units(const Common& c)
{
   return c.scaled ? "scaled: alpha_n = 2 pi / mu_n" : "true: alpha_n = 1 / mu_n, mu_n = 2 pi int r^(2n+1) lambda dr";
}

RadialWeight resolve_weight(const Common& c)
{
   if (!c.weight.empty() && !c.step.empty())
      throw usage_error("--weight and --step are mutually exclusive");
   if (!c.step.empty())
      return parse_step_shorthand(c.step);
   if (!c.weight.empty())
      return load_weight(c.weight);
   throw usage_error("a weight is required: pass --weight <file|constant1> or --step A,x");
}

KernelSeries make_series(const Common& c)
{
   KernelSeries s(resolve_weight(c), c.tol);
   return c.scaled ? s.scaled(2.0 * pi) : s;
}

json header(const Common& c, const RadialWeight& w)
{
   json j;
   j["units"] = units(c);
   j["weight"] = weight_to_json(w);
   return j;
}

// Writes to --out when given, otherwise to `out`.
class Sink {
public:
   Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
   {
      if (!path.empty()) {
         file_.open(path);
         if (!file_)
            throw usage_error("cannot open --out file '" + path + "'");
         stream_ = &file_;
      }
   }
   std::ostream& operator*() { return *stream_; }

private:
   std::ofstream file_;
   std::ostream* stream_;
};

void emit(const Common& c, std::ostream& out, const json& j)
{
   Sink sink(c.out, out);
   *sink << j.dump(2) << "\n";
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string csv_escape(std::string s)
{
   for (char& ch : s)
      if (ch == ',')
         ch = ';';
   return s;
}

// ---------------------------------------------------------------------------

int cmd_moments(const Common& c, std::ostream& out, std::size_t N)
{
   const RadialWeight w = resolve_weight(c);
   const MomentTable table = moment_table(w, N, c.tol);
   json j = header(c, w);
   json rows = json::array();
   for (const Moment& m : table.entries)
      rows.push_back({{"n", m.n},
                      {"mu", m.mu / unit_scale(c)},
                      {"alpha", m.alpha * unit_scale(c)},
                      {"method", to_string(m.method)},
                      {"rel_err", m.err}});
   j["comparability"] = w.comparability();
   j["moments"] = rows;
   emit(c, out, j);
   return kOk;
}

int cmd_kernel_eval(const Common& c, std::ostream& out, cplx z, cplx w, double tol)
{
   const KernelSeries s = make_series(c);
   const KernelValue v = kernel_eval(s, z, w, tol);
   json j = header(c, s.weight());
   j["z"] = complex_json(z);
   j["w"] = complex_json(w);
   j["value_re"] = v.value.real();
   j["value_im"] = v.value.imag();
   j["err_bound"] = v.err_bound;
   j["N_used"] = v.N_used;
   emit(c, out, j);
   return kOk;
}

json zero_report_json(const ZeroReport& r)
{
   json zs = json::array();
   for (const LocatedZero& z : r.zeros)
      zs.push_back({{"re", z.t.real()}, {"im", z.t.imag()}, {"residual", z.residual}, {"newton_steps", z.iterations}});
   return json{{"requested_rho", r.requested_rho},
               {"rho", r.rho},
               {"N", r.N},
               {"zero_count", r.zero_count},
               {"certified", r.certified},
               {"min_modulus", r.min_modulus},
               {"modulus_floor", r.modulus_floor},
               {"truncation_gap", r.truncation_gap},
               {"contour_samples", r.contour_samples},
               {"retries", r.retries},
               {"zeros", zs},
               {"diagnostics", r.diagnostics}};
}

int cmd_find_zeros(const Common& c, std::ostream& out, double rho, std::optional<std::size_t> N, bool locate)
{
   const KernelSeries s = make_series(c);
   WindingOptions opt;
   opt.N = N;
   opt.locate = locate;
   const ZeroReport r = count_zeros_winding(s, rho, opt);
   json j = header(c, s.weight());
   j.update(zero_report_json(r));
   emit(c, out, j);
   return r.certified ? kOk : kFailure;
}

int cmd_rouche(const Common& c, std::ostream& out, std::optional<double> eps, std::size_t cutoff)
{
   const KernelSeries s = make_series(c);
   RoucheCertificate cert;
   bool searched = false;
   if (eps) {
      cert = rouche_certificate(s, *eps, cutoff);
   } else {
      searched = true;
      const auto grid = default_epsilon_grid();
      const auto best = largest_passing_epsilon(s, grid, cutoff);
      cert = best ? *best : rouche_certificate(s, grid.front(), cutoff);
   }
   const SecondDifferenceBound b = second_difference_bound(s, cutoff);

   json j = header(c, s.weight());
   j["epsilon"] = cert.epsilon;
   j["epsilon_searched"] = searched;
   j["ring_radius"] = cert.ring_radius;
   j["alpha0"] = s.alpha(0);
   j["alpha1"] = s.alpha(1);
   if (cert.linear_root)
      j["t_star"] = *cert.linear_root;
   else
      j["t_star"] = nullptr;
   j["min_L"] = cert.min_L;
   j["min_L_sampled"] = cert.min_L_sampled;
   j["S_bound"] = cert.S_bound;
   j["s_bound_certified"] = cert.s_bound_certified;
   j["holds"] = cert.holds;
   j["second_differences"] = {
      {"cutoff", b.n_cutoff},
      {"all_negative", b.all_negative},
      {"partial_sum", b.partial_sum},
      {"remainder_bound", b.remainder_bound},
      {"telescoped", b.telescoped ? json(*b.telescoped) : json(nullptr)},
      {"limit_first_difference", b.limit_first_difference ? json(*b.limit_first_difference) : json(nullptr)},
   };
   emit(c, out, j);
   return cert.s_bound_certified ? kOk : kFailure;
}

int cmd_sweep(const Common& c, std::ostream& out, const std::string& A, const std::string& x, double rho)
{
   const Range ra = Range::parse(A);
   const Range rx = Range::parse(x);
   const auto cells = sweep_step_weights(ra, rx, rho, default_threads());
   Sink sink(c.out, out);
   write_sweep_csv(*sink, cells, rho);
   for (const SweepCell& cell : cells)
      if (!cell.certified || !cell.error.empty())
         return kFailure;
   return kOk;
}

int cmd_dirac(const Common& c, std::ostream& out, double k)
{
   const DiracAnalysis a = dirac_zero_threshold(k);
   json j;
   j["units"] = units(c);
   j["weight"] = weight_to_json(RadialWeight::dirac(k));
   j["k"] = k;
   j["threshold"] = pi / 3.0;
   j["has_zero"] = a.has_zero_in_disc;
   if (a.zero) {
      j["zero"] = *a.zero;
      j["F_at_zero"] = dirac_diagonal(k, *a.zero) * unit_scale(c);
   } else {
      j["zero"] = nullptr;
   }
   emit(c, out, j);
   return kOk;
}

int cmd_inflate(const Common& c, std::ostream& out, cplx z, cplx t, double tol)
{
   const RadialWeight w = resolve_weight(c);
   const InflationCheck r = inflation_check(w, z, t, tol);
   json j = header(c, w);
   j["units"] = "true: B_Omega slice vs B_lambda / pi";
   j["z"] = complex_json(z);
   j["t"] = complex_json(t);
   j["B_Omega_slice"] = complex_json(r.lhs);
   j["B_lambda_over_pi"] = complex_json(r.rhs);
   j["difference"] = r.difference;
   j["tol"] = r.tol;
   j["terms"] = r.terms;
   j["agree"] = r.agree;
   emit(c, out, j);
   return r.agree ? kOk : kFailure;
}

// One coefficient per line: "re" or "re,im". Blank lines and '#' comments
// are skipped.
CoefficientSequence read_coefficients(const std::string& path)
{
   std::ifstream in(path);
   if (!in)
      throw usage_error("cannot open --coeffs file '" + path + "'");
   std::vector<cplx> betas;
   std::string line;
   while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#')
         continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream is(line);
      double re = 0.0, im = 0.0;
      if (!(is >> re))
         throw usage_error("malformed coefficient line '" + line + "'");
      is >> im;
      betas.emplace_back(re, im);
   }
   return CoefficientSequence::from_values(std::move(betas));
}

CoefficientSequence coefficient_source(const Common& c, const std::string& coeffs, std::size_t N, bool honour_scale)
{
   if (!coeffs.empty()) {
      if (!c.weight.empty() || !c.step.empty())
         throw usage_error("--coeffs cannot be combined with --weight or --step");
      return read_coefficients(coeffs);
   }
   if (honour_scale)
      return CoefficientSequence::from_series(make_series(c), N);
   return CoefficientSequence::from_series(KernelSeries(resolve_weight(c), c.tol), N);
}

int cmd_schur(const Common& c, std::ostream& out, const std::string& coeffs, std::size_t N, double eps,
              const std::string& grid)
{
   const CoefficientSequence seq = coefficient_source(c, coeffs, N, true);
   const SchurReport r = schur_bound_check(seq, eps, Range::parse(grid).values());
   Sink sink(c.out, out);
   std::ostream& os = *sink;
   os.precision(15);
   os << "# ratio = (I(eps,z) + tail) / (sup|beta|^2 (1-|z|^2)^eps), I = int_D |sum beta_n (z conj w)^n|^2 "
         "(1-|w|^2)^eps dA(w)\n";
   os << "# coefficients: " << (coeffs.empty() ? units(c) : "user supplied") << "; terms = " << seq.size() << "\n";
   os << "# eps = " << r.epsilon << "; sup_beta = " << r.sup_beta << "; empirical_C = " << r.empirical_C
      << "; theoretical_C = " << r.theoretical_C << "; passes = " << (r.passes ? 1 : 0) << "\n";
   os << "z,ratio\n";
   for (std::size_t i = 0; i < r.z_grid.size(); ++i)
      os << r.z_grid[i] << ',' << r.ratios[i] << '\n';
   return r.passes ? kOk : kFailure;
}

int cmd_coeff_check(const Common& c, std::ostream& out, const std::string& coeffs, std::size_t N)
{
   // The comparability chain is a statement in true units, so the checks
   // run on unscaled coefficients; --scaled-units only rescales the output.
   const CoefficientSequence seq = coefficient_source(c, coeffs, N, false);
   const double scale = coeffs.empty() ? unit_scale(c) : 1.0;
   const NecessaryWitness nec = necessary_check(seq);
   const SufficientWitness suf = sufficient_check(seq);
   const Decomposition dec = decompose_b(seq);
   json j;
   j["units"] = coeffs.empty() ? units(c) : "user supplied";
   if (coeffs.empty())
      j["weight"] = weight_to_json(resolve_weight(c));
   j["terms"] = seq.size();
   j["note"] = "finite-range numerical witnesses, not proofs about the infinite sequence";
   j["necessary"] = {{"limsup_abs_beta_over_n", nec.limsup_estimate * scale},
                     {"tail_slope", nec.tail_slope * scale},
                     {"reference_median", nec.reference_median * scale},
                     {"finite_trend", nec.finite_trend}};
   json sj = {{"sup_abs_difference", suf.sup_diff * scale},
              {"tail_slope", suf.tail_slope * scale},
              {"bounded_verdict", suf.bounded_verdict}};
   if (suf.chain) {
      sj["comparability_chain"] = {{"quantity", "pi (alpha_(n+1) - alpha_n), true units"},
                                   {"C", suf.chain->C},
                                   {"lower", std::pow(suf.chain->C, -3.0)},
                                   {"upper", std::pow(suf.chain->C, 3.0)},
                                   {"min_normalized", suf.chain->min_normalized},
                                   {"max_normalized", suf.chain->max_normalized},
                                   {"holds", suf.chain->holds}};
   }
   j["sufficient"] = sj;
   j["decomposition"] = {{"sup_abs_b", dec.sup_abs}, {"reconstructs", dec.reconstructs}};
   emit(c, out, j);
   return kOk;
}

std::vector<TestFunction> read_family(const std::string& path)
{
   std::ifstream in(path);
   if (!in)
      throw usage_error("cannot open --family file '" + path + "'");
   nlohmann::json j;
   try {
      in >> j;
   } catch (const nlohmann::json::exception& e) {
      throw usage_error(std::string("--family is not valid JSON: ") + e.what());
   }
   std::vector<TestFunction> family;
   if (!j.is_array())
      throw usage_error("--family must hold a JSON array of test functions");
   for (const auto& f : j)
      family.push_back(TestFunction::from_json(f));
   return family;
}

int cmd_lp_probe(const Common& c, std::ostream& out, const std::string& ps, std::size_t N, std::size_t radial,
                 std::optional<std::size_t> angular, const std::string& family_path, std::uint64_t seed)
{
   const RadialWeight w = resolve_weight(c);
   const std::vector<double> p = parse_list(ps);
   const std::vector<TestFunction> family = family_path.empty() ? default_family(N, seed) : read_family(family_path);
   GridSpec spec;
   spec.radial_per_segment = radial;
   spec.angular = angular;
   const std::vector<LpProbe> probes = lp_probe(w, p, family, N, spec);

   Sink sink(c.out, out);
   std::ostream& os = *sink;
   os.precision(15);
   os << "# lower-bound witness of the L^p(lambda) operator norm of the truncated projection; weight "
      << w.describe() << "; N = " << N << "; radial nodes per segment = " << radial
      << "; angular nodes = " << angular.value_or(4 * N + 8) << "; seed = " << seed << "\n";
   os << "# norms are (int |f|^p lambda dA)^(1/p) with true units\n";
   for (const LpProbe& pr : probes)
      os << "# p = " << pr.p << ": max_ratio = " << pr.max_ratio << " attained by " << csv_escape(pr.argmax) << "\n";
   os << "p,function,norm_f,norm_Pf,ratio,skipped\n";
   for (const LpProbe& pr : probes)
      for (const ProbeRow& row : pr.rows)
         os << pr.p << ',' << csv_escape(row.name) << ',' << row.norm_f << ',' << row.norm_Pf << ',' << row.ratio
            << ',' << (row.skipped ? 1 : 0) << '\n';
   return kOk;
}

int cmd_repro(const Common& c, std::ostream& out, const std::string& only, double perturb)
{
   ReproOptions opt;
   if (!only.empty())
      opt.only = only;
   opt.perturb = perturb;
   const auto results = run_acceptance(opt);
   Sink sink(c.out, out);
   print_report(*sink, results);
   for (const CriterionResult& r : results)
      if (!r.pass)
         return kFailure;
   return kOk;
}

} // namespace

// ---------------------------------------------------------------------------

cplx parse_complex(const std::string& text)
{
   static const std::string num = R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
   static const std::regex real_only("^\\s*(" + num + ")\\s*$");
   static const std::regex imag_only("^\\s*(" + num + ")?\\s*[ij]\\s*$");
   static const std::regex both("^\\s*(" + num + ")\\s*([+-])\\s*((?:\\d+\\.?\\d*|\\.\\d+)(?:[eE][+-]?\\d+)?)?\\s*[ij]\\s*$");
   std::smatch m;
   if (std::regex_match(text, m, real_only))
      return {std::stod(m[1]), 0.0};
   if (std::regex_match(text, m, imag_only)) {
      const std::string s = m[1].str();
      return {0.0, s.empty() || s == "+" ? 1.0 : (s == "-" ? -1.0 : std::stod(s))};
   }
   if (std::regex_match(text, m, both)) {
      const double im = m[3].matched ? std::stod(m[3]) : 1.0;
      return {std::stod(m[1]), m[2] == "-" ? -im : im};
   }
   throw std::invalid_argument("cannot parse complex number '" + text + "' (expected a+bi)");
}

std::vector<double> parse_list(const std::string& text)
{
   std::vector<double> out;
   std::stringstream ss(text);
   std::string item;
   while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
         v = std::stod(item, &used);
      } catch (const std::exception&) {
         used = 0;
      }
      if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
         throw std::invalid_argument("cannot parse number '" + item + "' in list '" + text + "'");
      out.push_back(v);
   }
   if (out.empty())
      throw std::invalid_argument("empty number list");
   return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
   CLI::App app{"Weighted Bergman kernels on the unit disc: coefficients, zeros and L^p regularity checks",
                "bergkern"};
   app.require_subcommand(1);
   app.fallthrough();

   Common c;
   app.add_option("--weight", c.weight, "Weight definition file (JSON) or the name constant1");
   app.add_option("--step", c.step, "Step weight shorthand A,x: A on [0,x], 1 on (x,1]");
   app.add_option("--tol", c.tol, "Relative tolerance for moments and coefficients")->check(CLI::PositiveNumber);
   app.add_flag("--scaled-units", c.scaled, "Report coefficients multiplied by 2 pi");
   app.add_option("--threads", c.threads, "Worker thread cap (overrides BERGKERN_THREADS)")->check(CLI::PositiveNumber);
   app.add_option("--out", c.out, "Write the result to this file instead of stdout");

   std::size_t N = 10;
   auto* moments = app.add_subcommand("moments", "Moments mu_n and coefficients alpha_n for n = 0..N");
   moments->add_option("-N,--terms", N, "Largest index")->check(CLI::NonNegativeNumber);

   std::string zs, ws;
   double eval_tol = 1e-10;
   auto* keval = app.add_subcommand("kernel-eval", "Evaluate B_lambda(z, w) with a certified error bound");
   keval->add_option("--z", zs, "First point a+bi")->required();
   keval->add_option("--w", ws, "Second point c+di")->required();
   keval->add_option("--eval-tol", eval_tol, "Absolute error target")->check(CLI::PositiveNumber);

   double rho = 0.99;
   std::optional<std::size_t> fixed_N;
   bool no_locate = false;
   auto* fz = app.add_subcommand("find-zeros", "Certified count of zeros of F(t) in |t| < rho");
   fz->add_option("--rho", rho, "Contour radius in (0,1)");
   fz->add_option("-N,--terms", fixed_N, "Fixed truncation instead of the adaptive choice");
   fz->add_flag("--no-locate", no_locate, "Count only, skip zero location");

   std::optional<double> eps;
   std::size_t cutoff = 500;
   auto* rouche = app.add_subcommand("rouche", "Rouche certificate on |t| = 1 - eps (searches eps when omitted)");
   rouche->add_option("--eps", eps, "Ring offset eps in (0,1)");
   rouche->add_option("--cutoff", cutoff, "Second differences summed explicitly up to this index")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));

   std::string A = "1:40:0.5", X = "0.05:0.95:0.05";
   double sweep_rho = 0.99;
   auto* sweep = app.add_subcommand("sweep", "Zero counts over a grid of step weights, as CSV");
   sweep->add_option("--A", A, "Inner height range start:stop:step");
   sweep->add_option("--x", X, "Breakpoint range start:stop:step");
   sweep->add_option("--rho", sweep_rho, "Contour radius in (0,1)");

   double k = 0.0;
   auto* dirac = app.add_subcommand("dirac", "Zero of the kernel for Lebesgue measure plus k delta_0");
   dirac->add_option("--k", k, "Point mass k >= 0")->required();

   std::string ts;
   double inflate_tol = 1e-8;
   auto* inflate = app.add_subcommand("inflate-check", "Compare the Hartogs-domain kernel slice with B_lambda / pi");
   inflate->add_option("--z", zs, "First point a+bi")->required();
   inflate->add_option("--t", ts, "Second point c+di")->required();
   inflate->add_option("--check-tol", inflate_tol, "Allowed difference")->check(CLI::PositiveNumber);

   std::string coeffs;
   std::size_t schur_N = 2000;
   double schur_eps = -0.25;
   std::string grid = "0:0.99:0.01";
   auto* schur = app.add_subcommand("schur", "Schur-test integral ratios over a radius grid, as CSV");
   schur->add_option("--coeffs", coeffs, "Coefficient file (one 're' or 're,im' per line)");
   schur->add_option("-N,--terms", schur_N, "Kernel coefficients 0..N when taken from a weight");
   schur->add_option("--eps", schur_eps, "Exponent in (-1, 0)")->required();
   schur->add_option("--grid", grid, "Radius grid start:stop:step");

   std::size_t check_N = 500;
   auto* ccheck = app.add_subcommand("coeff-check", "Necessary and sufficient coefficient-growth witnesses");
   ccheck->add_option("--coeffs", coeffs, "Coefficient file (one 're' or 're,im' per line)");
   ccheck->add_option("-N,--terms", check_N, "Kernel coefficients 0..N when taken from a weight");

   std::string ps = "1.5,2,3,4";
   std::size_t probe_N = 60;
   std::size_t radial = 200;
   std::optional<std::size_t> angular;
   std::string family;
   std::uint64_t seed = kDefaultSeed;
   auto* probe = app.add_subcommand("lp-probe", "Family lower bounds for the L^p norm of the projection, as CSV");
   probe->add_option("--p", ps, "Comma-separated exponents in (1, inf)");
   probe->add_option("-N,--terms", probe_N, "Projection truncation");
   probe->add_option("--radial", radial, "Gauss nodes per weight segment")->check(CLI::PositiveNumber);
   probe->add_option("--angular", angular, "Angular nodes (default 4N + 8)");
   probe->add_option("--family", family, "JSON array of test functions instead of the default family");
   probe->add_option("--seed", seed, "Seed of the random family members");

   std::string only;
   double perturb = 0.0;
   auto* repro = app.add_subcommand("repro", "Run the acceptance checks and print a pass/fail table");
   repro->add_option("--only", only, "Group (weights, zeros, regularity, projector) or criterion id");
   repro->add_option("--perturb", perturb, "Relative perturbation of alpha_0 in the certificate check");

   std::vector<std::string> argv(args.rbegin(), args.rend());
   try {
      app.parse(argv);
   } catch (const CLI::ParseError& e) {
      // --help and --version are reported as parse "errors" with exit code 0.
      if (e.get_exit_code() == 0) {
         out << app.help();
         return kOk;
      }
      err << "error: " << e.what() << "\n" << "run with --help for usage\n";
      return kUsage;
   }

   if (c.threads > 0)
      set_thread_limit(c.threads);

   try {
      if (*moments)
         return cmd_moments(c, out, N);
      if (*keval)
         return cmd_kernel_eval(c, out, parse_complex(zs), parse_complex(ws), eval_tol);
      if (*fz)
         return cmd_find_zeros(c, out, rho, fixed_N, !no_locate);
      if (*rouche)
         return cmd_rouche(c, out, eps, cutoff);
      if (*sweep)
         return cmd_sweep(c, out, A, X, sweep_rho);
      if (*dirac)
         return cmd_dirac(c, out, k);
      if (*inflate)
         return cmd_inflate(c, out, parse_complex(zs), parse_complex(ts), inflate_tol);
      if (*schur)
         return cmd_schur(c, out, coeffs, schur_N, schur_eps, grid);
      if (*ccheck)
         return cmd_coeff_check(c, out, coeffs, check_N);
      if (*probe)
         return cmd_lp_probe(c, out, ps, probe_N, radial, angular, family, seed);
      if (*repro)
         return cmd_repro(c, out, only, perturb);
   } catch (const convergence_error& e) {
      err << "error: " << e.what() << " (achieved bound " << e.achieved_bound() << ")\n";
      return kFailure;
   } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
   } catch (const std::domain_error& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
   } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kFailure;
   }
   return kUsage;
}

} // namespace bergkern::cli
