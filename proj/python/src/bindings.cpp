#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergkern/errors.hpp"
#include "bergkern/kernel.hpp"
#include "bergkern/projector.hpp"
#include "bergkern/regularity.hpp"
#include "bergkern/repro.hpp"
#include "bergkern/weight_io.hpp"
#include "bergkern/weights.hpp"
#include "bergkern/zeros.hpp"

namespace py = pybind11;
using namespace bergkern;

namespace {

py::dict zero_report(const ZeroReport& r)
{
   py::list zeros;
   for (const LocatedZero& z : r.zeros)
      zeros.append(py::make_tuple(z.t, z.residual));
   py::dict d;
   d["rho"] = r.rho;
   d["N"] = r.N;
   d["zero_count"] = r.zero_count;
   d["certified"] = r.certified;
   d["min_modulus"] = r.min_modulus;
   d["truncation_gap"] = r.truncation_gap;
   d["zeros"] = zeros;
   return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
   m.doc() = "Weighted Bergman kernels on the unit disc";

   py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);

   py::class_<RadialWeight>(m, "RadialWeight")
      .def_static("constant", &RadialWeight::constant, py::arg("value") = 1.0)
      .def_static("step", py::overload_cast<double, double>(&RadialWeight::step), py::arg("height"), py::arg("radius"))
      .def_static("steps",
                  [](const std::vector<std::pair<double, double>>& segs) {
                     std::vector<StepSegment> s;
                     for (const auto& [b, v] : segs)
                        s.push_back({b, v});
                     return RadialWeight::step(std::move(s));
                  },
                  py::arg("segments"), "Segments as (breakpoint, value) pairs, last breakpoint 1.")
      .def_static("sampled", &RadialWeight::sampled, py::arg("radii"), py::arg("values"))
      .def_static("dirac", &RadialWeight::dirac, py::arg("mass"))
      .def_static("from_json", [](const std::string& s) { return weight_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const RadialWeight& w) { return weight_to_json(w).dump(); })
      .def("__call__", &RadialWeight::operator(), py::arg("r"))
      .def_property_readonly("comparability", &RadialWeight::comparability)
      .def("breakpoints", &RadialWeight::breakpoints)
      .def("__repr__", &RadialWeight::describe);

   m.def("mollify", &mollify_weight, py::arg("step"), py::arg("width"), py::arg("knots_per_transition") = 65);

   m.def(
      "moments",
      [](const RadialWeight& w, std::size_t N, double tol) {
         std::vector<std::pair<double, double>> out;
         for (const Moment& mo : moment_table(w, N, tol).entries)
            out.emplace_back(mo.mu, mo.alpha);
         return out;
      },
      py::arg("weight"), py::arg("N"), py::arg("tol") = kDefaultTol, "List of (mu_n, alpha_n) for n = 0..N.");

   py::class_<KernelSeries>(m, "KernelSeries")
      .def(py::init<RadialWeight, double>(), py::arg("weight"), py::arg("tol") = kDefaultTol)
      .def("alpha", &KernelSeries::alpha)
      .def("alphas", &KernelSeries::alphas)
      .def("scaled", &KernelSeries::scaled)
      .def("perturbed", &KernelSeries::perturbed, py::arg("index"), py::arg("factor"))
      .def("first_difference", &KernelSeries::first_difference)
      .def("second_difference", [](const KernelSeries& s, std::size_t k) {
         const SecondDifference d = s.second_difference(k);
         return py::make_tuple(d.value, to_string(d.sign), d.log10_abs);
      });

   m.def(
      "kernel_eval",
      [](const KernelSeries& s, std::complex<double> z, std::complex<double> w, double tol) {
         py::gil_scoped_release release;
         const KernelValue v = kernel_eval(s, z, w, tol);
         return std::make_tuple(v.value, v.err_bound, v.N_used);
      },
      py::arg("series"), py::arg("z"), py::arg("w"), py::arg("tol") = 1e-10,
      "Returns (value, err_bound, N_used).");

   m.def(
      "rouche",
      [](const KernelSeries& s, double eps) {
         const RoucheCertificate c = rouche_certificate(s, eps);
         py::dict d;
         d["epsilon"] = c.epsilon;
         d["t_star"] = c.linear_root;
         d["min_L"] = c.min_L;
         d["S_bound"] = c.S_bound;
         d["holds"] = c.holds;
         return d;
      },
      py::arg("series"), py::arg("eps"));

   m.def(
      "count_zeros",
      [](const KernelSeries& s, double rho) {
         ZeroReport r;
         {
            py::gil_scoped_release release;
            r = count_zeros_winding(s, rho);
         }
         return zero_report(r);
      },
      py::arg("series"), py::arg("rho"));

   m.def(
      "dirac_zero",
      [](double k) { return dirac_zero_threshold(k).zero; },
      py::arg("k"), "Zero of the diagonal in (-1, 0], or None.");

   m.def(
      "inflation_check",
      [](const RadialWeight& w, std::complex<double> z, std::complex<double> t, double tol) {
         const InflationCheck c = inflation_check(w, z, t, tol);
         return py::make_tuple(c.lhs, c.rhs, c.agree);
      },
      py::arg("weight"), py::arg("z"), py::arg("t"), py::arg("tol") = 1e-8);

   m.def(
      "schur_integral",
      [](const std::vector<std::complex<double>>& betas, double eps, double r) {
         const SchurIntegral I = schur_integral(CoefficientSequence::from_values(betas), eps, r);
         return py::make_tuple(I.value, I.tail_bound);
      },
      py::arg("betas"), py::arg("eps"), py::arg("z_radius"));
   m.def("schur_constant", &schur_constant, py::arg("eps"));

   m.def(
      "lp_probe",
      [](const RadialWeight& w, const std::vector<double>& ps, std::size_t N, std::uint64_t seed) {
         std::vector<LpProbe> probes;
         {
            py::gil_scoped_release release;
            probes = lp_probe(w, ps, default_family(N, seed), N);
         }
         std::vector<std::pair<double, std::string>> out;
         for (const LpProbe& p : probes)
            out.emplace_back(p.max_ratio, p.argmax);
         return out;
      },
      py::arg("weight"), py::arg("ps"), py::arg("N") = 20, py::arg("seed") = kDefaultSeed,
      "Per exponent: (max_ratio, argmax) over the default family.");

   m.def(
      "acceptance",
      [](std::optional<std::string> only) {
         ReproOptions opt;
         opt.only = std::move(only);
         std::vector<CriterionResult> results;
         {
            py::gil_scoped_release release;
            results = run_acceptance(opt);
         }
         std::vector<std::tuple<int, std::string, bool, std::string>> out;
         for (const auto& r : results)
            out.emplace_back(r.id, r.name, r.pass, r.detail);
         return out;
      },
      py::arg("only") = std::nullopt);
}
