#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bergkern/cli.hpp"

using namespace bergkern;

namespace {

struct Run {
   int code;
   std::string out;
   std::string err;
};

Run run(std::vector<std::string> args)
{
   std::ostringstream out, err;
   const int code = cli::run(args, out, err);
   return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(BERGKERN_TEST_TMP) + "/" + name; }

} // namespace

TEST_CASE("complex and list parsing")
{
   CHECK(cli::parse_complex("0.3") == std::complex<double>(0.3, 0.0));
   CHECK(cli::parse_complex("0.3+0.2i") == std::complex<double>(0.3, 0.2));
   CHECK(cli::parse_complex("-1e-2-2.5i") == std::complex<double>(-0.01, -2.5));
   CHECK(cli::parse_complex("-0.2i") == std::complex<double>(0.0, -0.2));
   CHECK(cli::parse_complex("i") == std::complex<double>(0.0, 1.0));
   CHECK(cli::parse_complex("1-i") == std::complex<double>(1.0, -1.0));
   CHECK_THROWS_AS(cli::parse_complex("0.3+"), std::invalid_argument);
   CHECK_THROWS_AS(cli::parse_complex("abc"), std::invalid_argument);
   CHECK(cli::parse_list("1.5,2,3,4") == std::vector<double>{1.5, 2.0, 3.0, 4.0});
   CHECK_THROWS_AS(cli::parse_list("1.5,x"), std::invalid_argument);
}

TEST_CASE("rouche reproduces the linear root")
{
   const Run r = run({"rouche", "--step", "18,0.25", "--eps", "0.01"});
   REQUIRE(r.code == cli::kOk);
   const auto j = nlohmann::json::parse(r.out);
   CHECK(j["t_star"].get<double>() == doctest::Approx(-91.0 / 170.0).epsilon(1e-14));
   CHECK(j["holds"].get<bool>());
   CHECK(j["units"].get<std::string>().rfind("true", 0) == 0);

   const Run s = run({"--scaled-units", "rouche", "--step", "18,0.25", "--eps", "0.01"});
   const auto k = nlohmann::json::parse(s.out);
   CHECK(k["second_differences"]["limit_first_difference"].get<double>() == doctest::Approx(2.0));
   CHECK(k["holds"].get<bool>());
}

TEST_CASE("find-zeros and dirac")
{
   const Run r = run({"find-zeros", "--weight", "constant1", "--rho", "0.999"});
   REQUIRE(r.code == cli::kOk);
   CHECK(nlohmann::json::parse(r.out)["zero_count"].get<int>() == 0);

   const Run d = run({"dirac", "--k", "1"});
   REQUIRE(d.code == cli::kOk);
   CHECK_FALSE(nlohmann::json::parse(d.out)["has_zero"].get<bool>());
   const Run e = run({"dirac", "--k", "10"});
   CHECK(nlohmann::json::parse(e.out)["zero"].get<double>() == doctest::Approx(-0.1463678578).epsilon(1e-9));
}

TEST_CASE("kernel-eval and weight files")
{
   const std::string path = tmp("quarter.json");
   std::ofstream(path) << R"({"type":"step","segments":[[0.25,18.0],[1.0,1.0]]})";
   const Run r = run({"kernel-eval", "--weight", path, "--z", "0", "--w", "0.5+0.5i"});
   REQUIRE(r.code == cli::kOk);
   const auto j = nlohmann::json::parse(r.out);
   CHECK(j["value_re"].get<double>() == doctest::Approx(16.0 / (33.0 * 3.141592653589793)));
   CHECK(j.contains("err_bound"));
   CHECK(j.contains("N_used"));
}

TEST_CASE("usage errors exit with 2")
{
   CHECK(run({}).code == cli::kUsage);
   CHECK(run({"moments"}).code == cli::kUsage);
   CHECK(run({"moments", "--weight", "constant1", "--step", "2,0.5"}).code == cli::kUsage);
   CHECK(run({"kernel-eval", "--weight", "constant1", "--z", "nonsense", "--w", "0"}).code == cli::kUsage);
   CHECK(run({"kernel-eval", "--weight", "constant1", "--z", "2", "--w", "0"}).code == cli::kUsage);
   CHECK(run({"find-zeros", "--weight", "constant1", "--rho", "abc"}).code == cli::kUsage);
   CHECK(run({"sweep", "--A", "1:2"}).code == cli::kUsage);
   CHECK(run({"repro", "--only", "nothing"}).code == cli::kUsage);
   CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("CSV outputs carry headers and are deterministic")
{
   const std::string a = tmp("sweep_a.csv"), b = tmp("sweep_b.csv");
   CHECK(run({"--out", a, "sweep", "--A", "1:18:17", "--x", "0.25:0.25:1"}).code == cli::kOk);
   CHECK(run({"sweep", "--A", "1:18:17", "--x", "0.25:0.25:1", "--out", b, "--threads", "1"}).code == cli::kOk);
   std::stringstream sa, sb;
   sa << std::ifstream(a).rdbuf();
   sb << std::ifstream(b).rdbuf();
   CHECK(sa.str() == sb.str());
   CHECK(sa.str().rfind("#", 0) == 0);
   CHECK(sa.str().find("\n1,0.25,0,1,") != std::string::npos);
   CHECK(sa.str().find("\n18,0.25,1,1,") != std::string::npos);

   const Run s = run({"schur", "--coeffs", tmp("does_not_exist.txt"), "--eps", "-0.5"});
   CHECK(s.code == cli::kUsage);
   {
      std::ofstream ones(tmp("ones.txt"));
      ones << "# beta = 1\n";
      for (int i = 0; i < 3000; ++i)
         ones << "1\n";
   }
   const Run t = run({"schur", "--coeffs", tmp("ones.txt"), "--eps", "-0.5", "--grid", "0:0.9:0.3"});
   CHECK(t.code == cli::kOk);
   CHECK(t.out.find("z,ratio\n") != std::string::npos);
   CHECK(t.out.find("passes = 1") != std::string::npos);

   const Run p = run({"lp-probe", "--weight", "constant1", "--p", "2,3", "-N", "6", "--radial", "40"});
   CHECK(p.code == cli::kOk);
   CHECK(p.out.find("p,function,norm_f,norm_Pf,ratio,skipped\n") != std::string::npos);
   const Run q = run({"lp-probe", "--weight", "constant1", "--p", "2,3", "-N", "6", "--radial", "40"});
   CHECK(p.out == q.out);
}

TEST_CASE("coeff-check, moments and inflate-check")
{
   const Run c = run({"coeff-check", "--step", "18,0.25", "-N", "200"});
   REQUIRE(c.code == cli::kOk);
   const auto j = nlohmann::json::parse(c.out);
   CHECK(j["sufficient"]["bounded_verdict"].get<bool>());
   CHECK(j["sufficient"]["comparability_chain"]["holds"].get<bool>());

   const Run m = run({"moments", "--weight", "constant1", "-N", "3"});
   REQUIRE(m.code == cli::kOk);
   CHECK(nlohmann::json::parse(m.out)["moments"][3]["alpha"].get<double>() == doctest::Approx(4.0 / 3.141592653589793));

   const Run i = run({"inflate-check", "--step", "18,0.25", "--z", "0.5", "--t", "0.5"});
   CHECK(i.code == cli::kOk);
   CHECK(nlohmann::json::parse(i.out)["agree"].get<bool>());
}

TEST_CASE("repro subset and perturbation")
{
   const Run ok = run({"repro", "--only", "2"});
   CHECK(ok.code == cli::kOk);
   CHECK(ok.out.find("[PASS]  2") != std::string::npos);
   const Run bad = run({"repro", "--only", "4", "--perturb", "0.1"});
   CHECK(bad.code == cli::kFailure);
   CHECK(bad.out.find("[FAIL]  4") != std::string::npos);
}
