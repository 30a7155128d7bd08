#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "blaschke/blaschke.hpp"
#include "blaschke/error.hpp"
#include "blaschke/geometry.hpp"
#include "blaschke/interp.hpp"
#include "blaschke/poncelet.hpp"
#include "blaschke/reducible.hpp"

namespace poncelet_cli {

using blaschke::Complex;
using json = nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (first == last || ec != std::errc{} || ptr != last)
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  return value;
}

double parse_imaginary(std::string_view text) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  // "+-0.3" as written in "0.4714+-0.3333i"
  if (text.size() > 1 && text[0] == '+' && (text[1] == '-' || text[1] == '+')) text.remove_prefix(1);
  if (text == "-") return -1.0;
  return parse_double(text);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json cjson(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct Config {
  std::string zeros;
  std::string mu = "1";
  int samples = 1000;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string format = "csv";
  bool assert_invariant = false;
  std::string ellipse4;
  std::string a;
  int n = 0;
  std::string zs;
  std::string ws;
  std::vector<std::string> tol_overrides;
  unsigned threads = 1;
};

class Tolerances {
 public:
  explicit Tolerances(std::map<std::string, double> defaults) : values_(std::move(defaults)) {}

  void apply(const std::vector<std::string>& overrides) {
    for (const auto& item : overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("--tol expects name=value, got '" + item + "'");
      const std::string name = item.substr(0, eq);
      if (!values_.contains(name)) throw InputError("unknown tolerance '" + name + "'");
      double v = 0.0;
      try {
        v = parse_double(std::string_view(item).substr(eq + 1));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (!(v >= 0.0)) throw InputError("tolerance '" + name + "' must be non-negative");
      values_[name] = v;
    }
  }

  double operator[](const std::string& name) const { return values_.at(name); }

 private:
  std::map<std::string, double> values_;
};

std::vector<Complex> zeros_of(const Config& cfg) {
  if (cfg.zeros.empty()) throw InputError("--zeros is required");
  auto zeros = parse_complex_list(cfg.zeros);
  for (const auto& z : zeros)
    if (!(std::abs(z) < 1.0)) throw InputError("zeros must satisfy |a| < 1");
  return zeros;
}

blaschke::BlaschkeProduct product_of(const Config& cfg) {
  const Complex mu = parse_complex(cfg.mu);
  return blaschke::BlaschkeProduct(mu, zeros_of(cfg));
}

Complex required_complex(const std::string& text, const char* flag) {
  if (text.empty()) throw InputError(std::string(flag) + " is required");
  return parse_complex(text);
}

int cmd_sweep(const Config& cfg, std::ostream& out) {
  Tolerances tol({{"spread", 1e-8}, {"closed_form", 1e-8}});
  tol.apply(cfg.tol_overrides);
  const auto b = product_of(cfg);
  if (b.degree() != 3) throw InputError("sweep needs exactly three zeros");

  const auto report = blaschke::sweep(b, cfg.samples, cfg.seed, cfg.threads);
  const bool invariant = report.spread <= tol["spread"] * std::abs(report.mean);
  bool closed_ok = true;
  if (report.closed_form) {
    const double cf = *report.closed_form;
    const double worst = std::max(std::abs(report.min - cf), std::abs(report.max - cf));
    closed_ok = worst <= tol["closed_form"] * (1.0 + cf);
  }
  std::string verdict;
  if (invariant && report.closed_form && closed_ok) {
    verdict = "invariant (closed form)";
  } else if (invariant && report.closed_form) {
    verdict = "closed form mismatch";
  } else if (invariant) {
    verdict = "invariant (no closed form)";
  } else {
    verdict = "variable";
  }

  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& s : report.rows) {
      json verts = json::array();
      for (const auto& v : s.vertices) verts.push_back(cjson(v));
      rows.push_back({{"lambda_arg", s.lambda_arg},
                      {"vertices", verts},
                      {"radii", {s.radii[0], s.radii[1], s.radii[2]}},
                      {"total_area", s.total_area}});
    }
    json summary{{"samples", report.samples}, {"skipped", report.skipped}, {"min", report.min},
                 {"max", report.max},         {"mean", report.mean},       {"spread", report.spread},
                 {"verdict", verdict}};
    summary["closed_form"] = report.closed_form ? json(*report.closed_form) : json(nullptr);
    out << json{{"rows", rows}, {"summary", summary}}.dump(2) << '\n';
  } else {
    out << "lambda_arg,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im,r1,r2,r3,total_area\n";
    for (const auto& s : report.rows) {
      out << num(s.lambda_arg);
      for (const auto& v : s.vertices) out << ',' << num(v.real()) << ',' << num(v.imag());
      for (double r : s.radii) out << ',' << num(r);
      out << ',' << num(s.total_area) << '\n';
    }
    out << "# samples=" << report.samples << '\n'
        << "# skipped=" << report.skipped << '\n'
        << "# min=" << num(report.min) << '\n'
        << "# max=" << num(report.max) << '\n'
        << "# mean=" << num(report.mean) << '\n'
        << "# spread=" << num(report.spread) << '\n'
        << "# closed_form=" << (report.closed_form ? num(*report.closed_form) : std::string()) << '\n'
        << "# verdict=" << verdict << '\n';
  }

  const bool holds = invariant && closed_ok;
  return cfg.assert_invariant && !holds ? 1 : 0;
}

int cmd_curvature(const Config& cfg, std::ostream& out) {
  auto zeros = zeros_of(cfg);
  if (zeros.size() != 3) throw InputError("curvature needs exactly three zeros");

  blaschke::EllipseParams ellipse;
  std::string kind;
  if (!cfg.ellipse4.empty()) {
    const Complex a = parse_complex(cfg.ellipse4);
    const auto hit = std::min_element(zeros.begin(), zeros.end(),
                                      [&](Complex l, Complex r) { return std::abs(l - a) < std::abs(r - a); });
    if (std::abs(*hit - a) > 1e-9) throw InputError("--ellipse4 must name one of the zeros");
    zeros.erase(hit);
    ellipse = blaschke::blaschke4_ellipse(a, zeros[0], zeros[1]).ellipse;
    kind = "ellipse4";
  } else {
    const auto origin = std::min_element(zeros.begin(), zeros.end(),
                                         [](Complex l, Complex r) { return std::abs(l) < std::abs(r); });
    if (std::abs(*origin) > 1e-9) throw InputError("ellipse3 needs a zero at the origin (or use --ellipse4)");
    zeros.erase(origin);
    ellipse = blaschke::blaschke3_ellipse(zeros[0], zeros[1]).ellipse;
    kind = "ellipse3";
  }

  const auto bounds = blaschke::curvature_bounds(ellipse);
  const auto ecc = blaschke::eccentricity(ellipse);
  std::vector<std::pair<double, double>> rows;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int k = 0; k < cfg.samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / cfg.samples;
    const double kappa = blaschke::curvature(ellipse, t);
    lo = std::min(lo, kappa);
    hi = std::max(hi, kappa);
    rows.emplace_back(t, kappa);
  }

  if (cfg.format == "json") {
    json samples = json::array();
    for (const auto& [t, k] : rows) samples.push_back({{"t", t}, {"kappa", k}});
    out << json{{"kind", kind},
                {"major", ellipse.major_len},
                {"minor", ellipse.minor_len},
                {"theta", ellipse.theta},
                {"lower_bound", bounds.lower},
                {"upper_bound", bounds.upper},
                {"eccentricity", ecc.standard},
                {"eccentricity_axis_ratio", ecc.axis_ratio_form},
                {"min_kappa", lo},
                {"max_kappa", hi},
                {"samples", samples}}
                .dump(2)
        << '\n';
  } else {
    out << "# kind=" << kind << '\n'
        << "# major=" << num(ellipse.major_len) << '\n'
        << "# minor=" << num(ellipse.minor_len) << '\n'
        << "# theta=" << num(ellipse.theta) << '\n'
        << "# lower_bound=" << num(bounds.lower) << '\n'
        << "# upper_bound=" << num(bounds.upper) << '\n'
        << "# eccentricity=" << num(ecc.standard) << '\n'
        << "# eccentricity_axis_ratio=" << num(ecc.axis_ratio_form) << '\n'
        << "# min_kappa=" << num(lo) << '\n'
        << "# max_kappa=" << num(hi) << '\n'
        << "t,kappa\n";
    for (const auto& [t, k] : rows) out << num(t) << ',' << num(k) << '\n';
  }
  return 0;
}

int cmd_reduce(const Config& cfg, std::ostream& out) {
  std::optional<blaschke::BlaschkeProduct> b;
  if (!cfg.a.empty()) {
    if (!cfg.zeros.empty()) throw InputError("give either --zeros or --a/--n, not both");
    if (cfg.n < 2) throw InputError("--n must be at least 2");
    const Complex a = parse_complex(cfg.a);
    if (!(std::abs(a) < 1.0)) throw InputError("--a must satisfy |a| < 1");
    // With --a/--n, --mu multiplies the conjugated power map.
    b = blaschke::conjugate_power(a, cfg.n).scaled(parse_complex(cfg.mu));
  } else {
    b = product_of(cfg);
  }
  if (b->degree() < 2) throw InputError("reduce needs degree >= 2");

  const auto verdict = blaschke::is_reducible(*b);
  json failed = json::array();
  for (auto c : verdict.failed_conditions) failed.push_back(std::string(blaschke::to_string(c)));
  json crit = json::array();
  for (const auto& c : verdict.critical_points) crit.push_back(cjson(c));
  json doc{{"reducible", verdict.reducible},
           {"degree", b->degree()},
           {"failed_conditions", failed},
           {"candidate_xi", cjson(verdict.candidate_xi)},
           {"delta", cjson(verdict.delta)},
           {"value_at_one", cjson(blaschke::evaluate(*b, Complex{1.0}))},
           {"critical_points", crit}};
  doc["conjugate_point"] = verdict.conjugate_point ? cjson(*verdict.conjugate_point) : json(nullptr);
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_geodesics(const Config& cfg, std::ostream& out) {
  const Complex a = required_complex(cfg.a, "--a");
  if (!(std::abs(a) < 1.0)) throw InputError("--a must satisfy |a| < 1");
  if (cfg.n < 2 || cfg.n % 2 != 0) throw InputError("--n must be a positive even number");
  if (a == Complex{0.0}) throw InputError("a = 0 makes every zero coincide at the origin; no geodesics exist");

  const auto b = blaschke::conjugate_power(a, cfg.n);
  const auto pencil = blaschke::opposite_pair_geodesics(b, a);
  using Kind = blaschke::HyperbolicGeodesic::Kind;

  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& g : pencil.geodesics) {
      if (g.kind == Kind::Diameter) {
        rows.push_back({{"kind", "diameter"}, {"direction", cjson(g.direction)}});
      } else {
        rows.push_back({{"kind", "arc"}, {"center", cjson(g.center)}, {"radius", g.radius}});
      }
    }
    out << json{{"geodesics", rows},
                {"intersection", cjson(pencil.intersection)},
                {"expected", cjson(-a)},
                {"max_deviation", pencil.max_deviation}}
                .dump(2)
        << '\n';
  } else {
    out << "kind,center_re,center_im,radius,direction_re,direction_im,max_deviation\n";
    for (const auto& g : pencil.geodesics) {
      if (g.kind == Kind::Diameter) {
        out << "diameter,,,," << num(g.direction.real()) << ',' << num(g.direction.imag()) << ",\n";
      } else {
        out << "arc," << num(g.center.real()) << ',' << num(g.center.imag()) << ',' << num(g.radius) << ",,,\n";
      }
    }
    out << "intersection," << num(pencil.intersection.real()) << ',' << num(pencil.intersection.imag()) << ",,,,"
        << num(pencil.max_deviation) << '\n';
  }
  return 0;
}

double max_pairwise(const std::vector<Complex>& pts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) worst = std::max(worst, std::abs(pts[i] - pts[j]));
  return worst;
}

double min_pairwise(const std::vector<Complex>& pts) {
  double best = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

int cmd_counterexample(const Config& cfg, std::ostream& out) {
  Tolerances tol({{"common", 1e-9}});
  tol.apply(cfg.tol_overrides);

  auto spec = blaschke::default_counterexample_spec();
  if (!cfg.zs.empty() || !cfg.ws.empty()) {
    if (cfg.zs.empty() || cfg.ws.empty()) throw InputError("--zs and --ws must be given together");
    auto normalise = [](std::vector<Complex> pts) {
      for (auto& z : pts) {
        if (std::abs(z) == 0.0) throw InputError("interpolation nodes must be non-zero");
        z /= std::abs(z);
      }
      return pts;
    };
    spec = blaschke::InterleavedSpec(normalise(parse_complex_list(cfg.zs)), normalise(parse_complex_list(cfg.ws)));
  }

  const auto b = blaschke::build_interpolant(spec);
  const int n = b.degree();
  auto images = [&](const std::vector<Complex>& pts, auto&& f) {
    std::vector<Complex> out_pts;
    for (const auto& p : pts) out_pts.push_back(f(p));
    return out_pts;
  };
  auto power = [n](Complex z) { return std::pow(z, n); };
  const auto ws_b = images(spec.ws(), b);
  const auto zs_b = images(spec.zs(), b);
  const auto ws_p = images(spec.ws(), power);
  const auto zs_p = images(spec.zs(), power);

  auto list = [](const std::vector<Complex>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(cjson(p));
    return arr;
  };
  auto nodes = [](const std::vector<double>& v) { return json(v); };

  const bool ws_common = max_pairwise(ws_b) <= tol["common"];
  const bool zs_common = max_pairwise(zs_b) <= tol["common"];
  json doc{{"degree", n},
           {"zs", list(spec.zs())},
           {"ws", list(spec.ws())},
           {"z_nodes", nodes(b.z_nodes())},
           {"w_nodes", nodes(b.w_nodes())},
           {"interpolant",
            {{"zs_images", list(zs_b)},
             {"ws_images", list(ws_b)},
             {"zs_max_pairwise", max_pairwise(zs_b)},
             {"ws_max_pairwise", max_pairwise(ws_b)},
             {"zs_common", zs_common},
             {"ws_common", ws_common},
             {"abs_value_at_zero", std::abs(b(Complex{0.0}))}}},
           {"power_map",
            {{"zs_images", list(zs_p)},
             {"ws_images", list(ws_p)},
             {"zs_max_pairwise", max_pairwise(zs_p)},
             {"ws_max_pairwise", max_pairwise(ws_p)},
             {"ws_min_pairwise", min_pairwise(ws_p)}}}};
  out << doc.dump(2) << '\n';
  return 0;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("PONCELET_THREADS");
  unsigned requested = 0;
  if (raw != nullptr && *raw != '\0') {
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), requested);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw InputError("PONCELET_THREADS must be a non-negative integer");
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {parse_double(text), 0.0};
  text.remove_suffix(1);
  for (std::size_t k = 1; k < text.size(); ++k) {
    const char c = text[k];
    const char prev = text[k - 1];
    if ((c == '+' || c == '-') && prev != 'e' && prev != 'E' && prev != '+' && prev != '-') {
      return {parse_double(text.substr(0, k)), parse_imaginary(text.substr(k))};
    }
  }
  return {0.0, parse_imaginary(text)};
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_complex(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Blaschke products and Poncelet geometry"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Write data to this file instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", cfg.tol_overrides, "Tolerance override name=value")->allow_extra_args(false);
  };

  auto* sweep = app.add_subcommand("sweep", "Total power-circle area over Poncelet triangles");
  sweep->add_option("--zeros", cfg.zeros, "Comma-separated zeros, e.g. 0,0.5,-0.5")->required();
  sweep->add_option("--mu", cfg.mu, "Unimodular constant");
  sweep->add_option("--samples", cfg.samples, "Number of targets")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", cfg.seed, "Random seed");
  sweep->add_flag("--assert-invariant", cfg.assert_invariant, "Exit 1 unless the total area is invariant");
  add_common(sweep);

  auto* curv = app.add_subcommand("curvature", "Curvature table of a Blaschke 3- or 4-ellipse");
  curv->add_option("--zeros", cfg.zeros, "Three zeros")->required();
  curv->add_option("--ellipse4", cfg.ellipse4, "Designated zero a of the degree-4 construction");
  curv->add_option("--samples", cfg.samples, "Number of t samples")->check(CLI::PositiveNumber);
  add_common(curv);

  auto* reduce = app.add_subcommand("reduce", "Reducibility verdict as JSON");
  reduce->add_option("--zeros", cfg.zeros, "Zeros of the product");
  reduce->add_option("--mu", cfg.mu, "Unimodular constant (a multiplier when --a/--n are used)");
  reduce->add_option("--a", cfg.a, "Build the conjugated power map with this conjugate point");
  reduce->add_option("--n", cfg.n, "Degree for --a");
  add_common(reduce);

  auto* geo = app.add_subcommand("geodesics", "Opposite-pair geodesics of a reducible product");
  geo->add_option("--a", cfg.a, "Conjugate point")->required();
  geo->add_option("--n", cfg.n, "Even degree")->required();
  add_common(geo);

  auto* counter = app.add_subcommand("counterexample", "Interleaved-fiber interpolation report as JSON");
  counter->add_option("--zs", cfg.zs, "First point set (comma separated)");
  counter->add_option("--ws", cfg.ws, "Second point set (comma separated)");
  add_common(counter);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    cfg.threads = threads_from_env();
    std::ostringstream buffer;
    int code = 0;
    if (sweep->parsed()) {
      code = cmd_sweep(cfg, buffer);
    } else if (curv->parsed()) {
      code = cmd_curvature(cfg, buffer);
    } else if (reduce->parsed()) {
      code = cmd_reduce(cfg, buffer);
    } else if (geo->parsed()) {
      code = cmd_geodesics(cfg, buffer);
    } else {
      code = cmd_counterexample(cfg, buffer);
    }

    if (cfg.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw InputError("cannot open '" + cfg.out_path + "' for writing");
      file << buffer.str();
    }
    if (code == 1) err << "invariance assertion failed\n";
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const blaschke::Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace poncelet_cli
