#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "regprod/cli/cli.hpp"

using regprod::cli::Json;
using regprod::cli::run_command;

namespace {

Json run_json(std::vector<std::string> args, int expected_exit = 0) {
  args.push_back("--json");
  const auto r = run_command(args);
  EXPECT_EQ(r.exit_code, expected_exit) << r.err;
  return Json::parse(r.out);
}

}  // namespace

TEST(Cli, FermatCubicReport) {
  const auto j = run_json({"curve", "--q", "2", "--kind", "plane", "--f", "x^3+y^3+z^3", "--genus", "1"});
  EXPECT_EQ(j["exponent"]["exact"], "7/3");
  EXPECT_NEAR(j["value"].get<double>(), std::exp(7.0 / 3), 1e-12 * std::exp(7.0 / 3));
  EXPECT_EQ(j["weil"], "validated");
  EXPECT_EQ(j["counts"], Json::parse("[3, 9]"));
  EXPECT_EQ(j["status"], "ok");
}

TEST(Cli, RationalFunctionField) {
  const auto j = run_json({"rational-ff", "--q", "3"});
  EXPECT_EQ(j["exponent"]["exact"], "4");
  EXPECT_NEAR(j["value"].get<double>(), std::exp(4.0), 1e-12 * std::exp(4.0));
  EXPECT_EQ(run_command({"rational-ff", "--q", "6"}).exit_code, 65);
}

TEST(Cli, ProgressionHasNoExactField) {
  const auto j = run_json({"progression", "--m", "4", "--a", "1"});
  EXPECT_FALSE(j["exponent"].contains("exact"));
  EXPECT_TRUE(j["exponent"]["float"].is_number());
  EXPECT_EQ(j["breakdown"].size(), 2u);
  // corrected closed form: -lambda R + log(2 pi / sqrt 2)(3/2 + L / log 2)
  const double L = std::log(2 * M_PI), l2 = std::log(2.0);
  const double lambda = std::log(std::sqrt(M_PI) * std::tgamma(0.25) * std::tgamma(0.25) / (2 * std::sqrt(2 * M_PI * M_PI * M_PI)));
  const double e1 = -lambda * (2 * L / l2 - 1) + std::log(2 * M_PI / std::sqrt(2.0)) * (1.5 + L / l2);
  EXPECT_NEAR(j["exponent"]["float"].get<double>(), e1, 1e-9 * std::abs(e1));
}

TEST(Cli, VerifyAddsResiduals) {
  const auto j = run_json({"curve", "--q", "2", "--f", "x^3*y+y^3*z+z^3*x", "--verify"});
  const auto& r = j["diagnostics"]["residuals"];
  EXPECT_TRUE(r.contains("weil_deviation"));
  EXPECT_TRUE(r.contains("remultiplication_counts"));
  EXPECT_EQ(r["remultiplication_counts"].get<double>(), 0.0);
  EXPECT_LT(r["roots_path_vs_exact"].get<double>(), 1e-10);
  EXPECT_EQ(j["exponent"]["exact"], "-4");
  const auto p = run_json({"progression", "--m", "5", "--a", "2", "--verify"});
  EXPECT_LT(p["diagnostics"]["residuals"]["r_row_sum_vs_minus_2"].get<double>(), 1e-12);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> cmds{
      {"progression", "--m", "5", "--a", "3"},
      {"curve", "--q", "2", "--f", "x^3*y+y^3*z+z^3*x", "--json"},
      {"number-field", "--field", "Q(i)", "--json"},
      {"primes", "--precision-bits", "96"},
  };
  for (const auto& c : cmds) {
    const auto a = run_command(c);
    const auto b = run_command(c);
    EXPECT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, JsonRoundTrip) {
  for (const auto& c : std::vector<std::vector<std::string>>{{"primes"},
                                                               {"progression", "--m", "3", "--a", "2"},
                                                               {"number-field", "--field", "Q(sqrt5)"},
                                                               {"curve", "--q", "2", "--numerator", "1,4,4,0,-4"}}) {
    const auto j = run_json(c);
    const double e = j["exponent"]["float"].get<double>();
    const double v = j["value"].get<double>();
    EXPECT_NEAR(std::exp(e) / v, 1.0, 4e-16 * std::max(1.0, std::abs(e)));
    const Json again = Json::parse(j.dump());
    EXPECT_EQ(again, j);
  }
}

TEST(Cli, PrecisionSelection) {
  const auto hi = run_json({"primes", "--precision-bits", "160"});
  EXPECT_EQ(hi["diagnostics"]["precision_bits"], 160);
  // 4 pi^2 to 38 digits
  EXPECT_EQ(hi["value_decimal"].get<std::string>().substr(0, 39), "39.478417604357434475337963999504604541");
  ::setenv("REGPROD_PRECISION_BITS", "100", 1);
  EXPECT_EQ(run_json({"primes"})["diagnostics"]["precision_bits"], 100);
  EXPECT_EQ(run_json({"primes", "--precision-bits", "64"})["diagnostics"]["precision_bits"], 64);
  ::setenv("REGPROD_PRECISION_BITS", "abc", 1);
  EXPECT_EQ(run_command({"primes"}).exit_code, 65);
  ::unsetenv("REGPROD_PRECISION_BITS");
  EXPECT_EQ(run_command({"primes", "--precision-bits", "40"}).exit_code, 65);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_command({"frobnicate"}).exit_code, 64);
  EXPECT_EQ(run_command({"--json", "frobnicate"}).exit_code, 64);
  EXPECT_EQ(run_command({}).exit_code, 65);
  EXPECT_EQ(run_command({"progression", "--m", "4"}).exit_code, 65);
  EXPECT_EQ(run_command({"progression", "--m", "4", "--a", "2"}).exit_code, 65);
  EXPECT_EQ(run_command({"curve", "--q", "2", "--f", "x^2+y"}).exit_code, 65);
  EXPECT_EQ(run_command({"curve", "--q", "2", "--kind", "conic", "--f", "x^2+y^2"}).exit_code, 65);
  EXPECT_EQ(run_command({"number-field", "--r1", "2", "--r2", "0", "--h", "1", "--w", "2", "--regulator", "1", "--disc", "5"})
                .exit_code,
            2);  // wrong regulator for Q(sqrt5)
  // wrong genus: the counted numerator has degree 2 < 2g
  const auto wrong = run_command({"curve", "--q", "2", "--f", "x^3+y^3+z^3", "--genus", "2", "--json"});
  EXPECT_EQ(wrong.exit_code, 2);
  EXPECT_EQ(Json::parse(wrong.out)["status"], "weil-violated");
  EXPECT_EQ(run_command({"curve", "--q", "2", "--numerator", "1,2,-2", "--verify"}).exit_code, 2);
  EXPECT_EQ(run_command({"curve", "--q", "2", "--numerator", "1,2,-2"}).exit_code, 0);
  EXPECT_EQ(run_command({"--help"}).exit_code, 0);
  EXPECT_EQ(run_command({"curve", "--help"}).exit_code, 0);
}

TEST(Cli, HyperellipticDiscrepancyFlag) {
  const auto j = run_json({"curve", "--q", "2", "--kind", "artin-schreier", "--h", "1", "--f", "x^5+1", "--expect-numerator",
                           "1,4,4,0,-4"});
  EXPECT_EQ(j["weil"], "validated");
  EXPECT_EQ(j["numerator"]["polynomial"], "1 + 4t^4");
  EXPECT_EQ(j["exponent"]["exact"], "-7/5");
  EXPECT_EQ(j["discrepancy"]["flag"], true);
  EXPECT_EQ(j["discrepancy"]["expected_exponent"], "33/5");
  EXPECT_EQ(j["discrepancy"]["expected_weil"], "violated");
  const auto direct = run_json({"curve", "--q", "2", "--numerator", "1,4,4,0,-4"});
  EXPECT_EQ(direct["exponent"]["exact"], "33/5");
  EXPECT_EQ(direct["weil"], "violated");
}

TEST(Cli, ZetaUtilities) {
  const auto l = run_json({"zeta", "l-value", "--m", "4", "--character", "1"});
  EXPECT_EQ(l["exact"], "1/2");
  EXPECT_NEAR(l["derivative"]["re"].get<double>(), 0.39159439270683677, 1e-15);
  const auto b = run_json({"zeta", "bernoulli", "--n", "12"});
  EXPECT_EQ(b["exact"], "-691/2730");
  EXPECT_EQ(run_json({"zeta", "bernoulli", "--n", "1", "--x", "1/2"})["exact"], "0");
  const auto h = run_json({"zeta", "hurwitz", "--s", "2", "--x", "1"});
  EXPECT_NEAR(h["value"]["re"].get<double>(), M_PI * M_PI / 6, 1e-15);
  EXPECT_EQ(run_command({"zeta", "hurwitz", "--s", "1"}).exit_code, 65);
  EXPECT_EQ(run_command({"zeta"}).exit_code, 65);
}

TEST(Cli, TextModeRendersSameDocument) {
  const auto r = run_command({"rational-ff", "--q", "2"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("exact: 5"), std::string::npos);
  EXPECT_NE(r.out.find("status: ok"), std::string::npos);
}
