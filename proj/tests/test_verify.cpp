#include <catch2/catch_amalgamated.hpp>

#include <steklov/io.hpp>
#include <steklov/verify.hpp>

using namespace steklov;

TEST_CASE("sigma exponent pinned values") {
  CHECK(sigma_exponent(2, 2.0) == 0.0);
  CHECK(sigma_exponent(2, std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(sigma_exponent(3, std::numeric_limits<double>::infinity()) == Catch::Approx(0.5));
  CHECK(sigma_exponent(4, 4.0) == Catch::Approx(0.25));
  CHECK_THROWS(sigma_exponent(1, 2.0));
  CHECK_THROWS(sigma_exponent(3, 1.5));
}

TEST_CASE("sigma exponent branches agree at the branch point") {
  for (int n : {3, 4, 5, 8}) {
    double pb = 2.0 * n / (n - 2.0);
    double below = sigma_exponent(n, pb - 1e-9);
    double above = sigma_exponent(n, pb + 1e-9);
    CHECK(std::abs(below - above) < 1e-8);
  }
}

TEST_CASE("log-log fit recovers exact power laws") {
  std::vector<double> xs, y3, y1;
  for (int k = 4; k <= 32; ++k) {
    xs.push_back(k);
    y3.push_back(2.0 * k * k * k);
    y1.push_back(5.0 * k);
  }
  CHECK(fit_scaling_exponent(xs, y3).slope == Catch::Approx(3.0).margin(1e-12));
  CHECK(fit_scaling_exponent(xs, y1).slope == Catch::Approx(1.0).margin(1e-12));
  CHECK(fit_scaling_exponent(xs, y3).r2 == Catch::Approx(1.0).margin(1e-12));
  CHECK_THROWS(fit_scaling_exponent({1, 2, 3}, {1, 2, 3}));
  CHECK_THROWS(fit_scaling_exponent(xs, std::vector<double>(xs.size(), -1.0)));
}

TEST_CASE("asymptotic fit removes first-order window bias") {
  // y = 2 x^3 (1 + 1/x): plain OLS on the window is biased, the corrected
  // fit recovers the exponent essentially exactly
  std::vector<double> xs, ys;
  for (int k = 8; k <= 32; ++k) {
    xs.push_back(k);
    ys.push_back(2.0 * k * k * k * (1.0 + 1.0 / k));
  }
  CHECK(std::abs(fit_scaling_exponent(xs, ys).slope - 3.0) > 0.03);
  CHECK(fit_asymptotic_exponent(xs, ys) == Catch::Approx(3.0).margin(5e-3));
}

TEST_CASE("unknown suite and bad config are rejected") {
  VerifyConfig cfg;
  CHECK_THROWS(run_suite("bogus", cfg));
  cfg.n = 20;
  CHECK_THROWS(run_suite("symbols", cfg));
}

TEST_CASE("suite reports are deterministic once metadata is excluded") {
  VerifyConfig cfg;
  SuiteReport a = run_suite("symbols", cfg);
  SuiteReport b = run_suite("symbols", cfg);
  CHECK(a.pass());
  std::string ja = suite_to_json(a, false).dump(2);
  std::string jb = suite_to_json(b, false).dump(2);
  CHECK(ja == jb);
  // with metadata the reports still parse, and timing lives under "meta"
  json jm = suite_to_json(a, true);
  CHECK(jm.contains("meta"));
  CHECK(jm["meta"].contains("wall_seconds"));
}

TEST_CASE("disk suite passes end to end") {
  VerifyConfig cfg;
  SuiteReport r = run_suite("disk", cfg);
  for (const auto& c : r.checks) {
    INFO(c.id << " measured=" << c.measured << " tol=" << c.tolerance);
    CHECK(c.pass);
  }
}
