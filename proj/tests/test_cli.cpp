#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"

using json = nlohmann::json;
using testing::pi;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = poncelet_cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string summary_value(const std::string& csv, const std::string& key) {
  const std::string tag = "# " + key + "=";
  const auto pos = csv.find(tag);
  if (pos == std::string::npos) return {};
  const auto end = csv.find('\n', pos);
  return csv.substr(pos + tag.size(), end - pos - tag.size());
}

}  // namespace

TEST_CASE("complex literals") {
  using poncelet_cli::parse_complex;
  CHECK(parse_complex("0.2+0.3i") == std::complex<double>(0.2, 0.3));
  CHECK(parse_complex("-0.5") == std::complex<double>(-0.5, 0.0));
  CHECK(parse_complex("0.3i") == std::complex<double>(0.0, 0.3));
  CHECK(parse_complex("-i") == std::complex<double>(0.0, -1.0));
  CHECK(parse_complex("i") == std::complex<double>(0.0, 1.0));
  CHECK(parse_complex("0.4714+-0.3333i") == std::complex<double>(0.4714, -0.3333));
  CHECK(parse_complex("-0.4714-0.3333i") == std::complex<double>(-0.4714, -0.3333));
  CHECK(parse_complex("1e-3+2E-2i") == std::complex<double>(1e-3, 2e-2));
  CHECK(parse_complex("+0.5") == std::complex<double>(0.5, 0.0));
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("0.2+0.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("0.2+0.3j"), std::invalid_argument);
  const auto list = poncelet_cli::parse_complex_list("0,0.5,-0.5");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == std::complex<double>(-0.5, 0.0));
}

TEST_CASE("sweep command") {
  SUBCASE("centred foci, closed form") {
    const auto r = run({"sweep", "--zeros", "0,0.5,-0.5", "--assert-invariant"});
    CHECK(r.code == 0);
    CHECK(summary_value(r.out, "verdict") == "invariant (closed form)");
    CHECK(std::stod(summary_value(r.out, "spread")) <= 1e-9);
    CHECK(r.out.rfind("lambda_arg,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im,r1,r2,r3,total_area\n", 0) == 0);
  }
  SUBCASE("off-centre foci") {
    const auto r = run({"sweep", "--zeros", "0,0.4714+-0.3333i,-0.4714+-0.3333i", "--assert-invariant"});
    CHECK(r.code == 1);
    CHECK(summary_value(r.out, "verdict") == "variable");
    CHECK_FALSE(r.err.empty());
    CHECK(run({"sweep", "--zeros", "0,0.4714+-0.3333i,-0.4714+-0.3333i"}).code == 0);
  }
  SUBCASE("focus at the origin") {
    const auto r = run({"sweep", "--zeros", "0,0,0.5"});
    CHECK(r.code == 0);
    CHECK(summary_value(r.out, "verdict") == "invariant (no closed form)");
  }
  SUBCASE("json output and determinism") {
    const std::vector<std::string> args{"sweep", "--zeros", "0,0.3+0.1i,0.6", "--samples", "50",
                                        "--seed", "7", "--format", "json"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto doc = json::parse(a.out);
    CHECK(doc["rows"].size() == 50);
    CHECK(doc["summary"]["closed_form"].is_null());
    CHECK(doc["rows"][0]["vertices"].size() == 3);
  }
  SUBCASE("thread count does not change output") {
    const std::vector<std::string> args{"sweep", "--zeros", "0,0.3+0.1i,0.6", "--samples", "300"};
    setenv("PONCELET_THREADS", "1", 1);
    const auto one = run(args);
    setenv("PONCELET_THREADS", "0", 1);
    const auto many = run(args);
    unsetenv("PONCELET_THREADS");
    CHECK(one.out == many.out);
  }
  SUBCASE("tolerance override") {
    CHECK(run({"sweep", "--zeros", "0,0.4714+-0.3333i,-0.4714+-0.3333i", "--samples", "100", "--assert-invariant",
               "--tol", "spread=10"})
              .code == 0);
    CHECK(run({"sweep", "--zeros", "0,0.5,-0.5", "--tol", "bogus=1"}).code == 2);
    CHECK(run({"sweep", "--zeros", "0,0.5,-0.5", "--tol", "spread"}).code == 2);
  }
  SUBCASE("input errors") {
    CHECK(run({"sweep", "--zeros", "0,0.5"}).code == 2);
    CHECK(run({"sweep", "--zeros", "0,1.5,0.2"}).code == 2);
    CHECK(run({"sweep", "--zeros", "0,x,0.2"}).code == 2);
    CHECK(run({"sweep", "--zeros", "0,0.5,-0.5", "--samples", "0"}).code == 2);
    CHECK(run({"sweep", "--zeros", "0,0.5,-0.5", "--mu", "2"}).code == 2);
    CHECK(run({"sweep"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }
}

TEST_CASE("curvature command") {
  SUBCASE("ellipse3 extremes") {
    const auto r = run({"curvature", "--zeros", "0,0,0.5", "--samples", "10000"});
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(summary_value(r.out, "min_kappa")) - std::sqrt(3.0)) <= 1e-6);
    CHECK(std::abs(std::stod(summary_value(r.out, "max_kappa")) - 8.0 / 3.0) <= 1e-6);
    CHECK(std::stod(summary_value(r.out, "eccentricity")) == doctest::Approx(0.5));
    CHECK(std::stod(summary_value(r.out, "eccentricity_axis_ratio")) == doctest::Approx(std::sqrt(3.0) / 2.0));
  }
  SUBCASE("circle") {
    const auto r = run({"curvature", "--zeros", "0,0,0", "--samples", "16", "--format", "json"});
    const auto doc = json::parse(r.out);
    for (const auto& s : doc["samples"]) CHECK(s["kappa"].get<double>() == doctest::Approx(2.0));
  }
  SUBCASE("ellipse4") {
    const auto r = run({"curvature", "--zeros", "0.5,0.5,0", "--ellipse4", "0.5", "--samples", "4", "--format",
                        "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["major"].get<double>() == doctest::Approx(std::sqrt(7.0) / 2.0));
    // Quarter-turn sample: (M m / 4) / (M / 2)^3 for the computed axes.
    const double big = std::sqrt(7.0) / 2.0;
    const double small = std::sqrt(6.0) / 2.0;
    CHECK(doc["samples"][1]["kappa"].get<double>() == doctest::Approx(2.0 * small / (big * big)));
  }
  SUBCASE("errors") {
    CHECK(run({"curvature", "--zeros", "0.1,0.2,0.3"}).code == 2);
    CHECK(run({"curvature", "--zeros", "0.5,0.5,0", "--ellipse4", "0.3"}).code == 2);
  }
}

TEST_CASE("reduce command") {
  SUBCASE("conjugated power") {
    const auto r = run({"reduce", "--a", "0.2+0.3i", "--n", "6"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["reducible"].get<bool>());
    CHECK(doc["conjugate_point"]["re"].get<double>() == doctest::Approx(0.2));
    CHECK(doc["conjugate_point"]["im"].get<double>() == doctest::Approx(0.3));
    CHECK(doc["failed_conditions"].empty());
  }
  SUBCASE("rotated") {
    const auto doc = json::parse(run({"reduce", "--a", "0.2+0.3i", "--n", "6", "--mu", "i"}).out);
    CHECK_FALSE(doc["reducible"].get<bool>());
    CHECK(doc["failed_conditions"] == json::array({"UnimodularConstant"}));
    CHECK(doc["conjugate_point"].is_null());
  }
  SUBCASE("explicit zeros") {
    const auto doc = json::parse(run({"reduce", "--zeros", "0,0,0"}).out);
    CHECK(doc["reducible"].get<bool>());
    CHECK(doc["conjugate_point"]["re"].get<double>() == 0.0);
    const auto other = json::parse(run({"reduce", "--zeros", "0,0.5,-0.5"}).out);
    CHECK_FALSE(other["reducible"].get<bool>());
    CHECK(other["critical_points"].size() == 2);
  }
  SUBCASE("errors") {
    CHECK(run({"reduce"}).code == 2);
    CHECK(run({"reduce", "--zeros", "0.5"}).code == 2);
    CHECK(run({"reduce", "--a", "2", "--n", "3"}).code == 2);
  }
}

TEST_CASE("geodesics command") {
  const auto r = run({"geodesics", "--a", "0.2+0.3i", "--n", "6"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "kind,center_re,center_im,radius,direction_re,direction_im,max_deviation");
  CHECK(rows[4].rfind("intersection,", 0) == 0);
  const auto doc = json::parse(run({"geodesics", "--a", "0.2+0.3i", "--n", "6", "--format", "json"}).out);
  CHECK(doc["intersection"]["re"].get<double>() == doctest::Approx(-0.2));
  CHECK(doc["intersection"]["im"].get<double>() == doctest::Approx(-0.3));
  CHECK(doc["max_deviation"].get<double>() <= 1e-9);

  const auto line2 = run({"geodesics", "--a", "0.4", "--n", "2"});
  CHECK(line2.code == 0);
  CHECK(line2.out.find("diameter,") != std::string::npos);

  CHECK(run({"geodesics", "--a", "0", "--n", "4"}).code == 2);
  CHECK(run({"geodesics", "--a", "0.2", "--n", "5"}).code == 2);
}

TEST_CASE("counterexample command") {
  const auto r = run({"counterexample"});
  CHECK(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["interpolant"]["ws_max_pairwise"].get<double>() <= 1e-9);
  CHECK(doc["interpolant"]["zs_max_pairwise"].get<double>() <= 1e-9);
  CHECK(doc["power_map"]["ws_min_pairwise"].get<double>() >= 0.1);
  CHECK(doc["interpolant"]["abs_value_at_zero"].get<double>() < 1.0);

  const std::string zs = "0.7071067811865476+0.7071067811865476i,-0.9659258262890682+0.2588190451025209i,"
                         "0.2588190451025206-0.9659258262890683i";
  const std::string ws = "i,-1,0.7071067811865476-0.7071067811865476i";
  const auto swapped = json::parse(run({"counterexample", "--zs", ws, "--ws", zs}).out);
  CHECK(swapped["interpolant"]["ws_max_pairwise"].get<double>() <= 1e-9);
  CHECK(swapped["interpolant"]["zs_max_pairwise"].get<double>() <= 1e-9);
  CHECK(swapped["interpolant"]["abs_value_at_zero"].get<double>() ==
        doctest::Approx(doc["interpolant"]["abs_value_at_zero"].get<double>()));

  CHECK(run({"counterexample", "--zs", "i,-1", "--ws", "-i,0.9+0.4358898943540674i"}).code == 2);
  CHECK(run({"counterexample", "--zs", "i"}).code == 2);
}
