#pragma once

// Command-line front end. `run` is the whole program minus process plumbing
// so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a check exceeded its threshold, 2 usage, domain
// or input error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gcurv/gcurv.hpp"

namespace gcurv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string surface;
  std::string surface_file;
  std::vector<double> params;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::vector<int> resolution;
  std::optional<double> fail_threshold;
  int workers = 0;
  int sphere_order = kDefaultSphereOrder;

  std::vector<double> point;
  std::string route = "moments";
  bool withhold_chi = false;
  std::optional<double> eps;
  bool total = false;
  bool identity = false;
  bool spectrum = false;
  std::optional<int> samples;
};

inline Immersion load_surface(const Options& o) {
  if (!o.surface.empty() && !o.surface_file.empty()) throw UsageError("give either --surface or --surface-file");
  if (!o.surface_file.empty()) return load_immersion_file(o.surface_file);
  if (o.surface.empty()) throw UsageError("--surface or --surface-file is required");
  return catalog_get(o.surface, o.params);
}

inline Resolution resolution_for(const Options& o, int m) {
  Resolution r = default_resolution(m);
  if (o.resolution.empty()) return r;
  if (o.resolution.size() > 2) throw UsageError("--resolution takes one or two node counts");
  for (int v : o.resolution)
    if (v < 1) throw UsageError("--resolution node counts must be positive");
  r.interval_nodes = o.resolution[0];
  r.periodic_nodes = o.resolution.size() > 1 ? o.resolution[1] : o.resolution[0];
  return r;
}

inline std::vector<int> grid_shape(const QuadratureGrid& g) {
  std::vector<int> out;
  for (const auto& ax : g.axes) out.push_back(static_cast<int>(ax.size()));
  return out;
}

inline RunReport base_report(const std::string& command, const Immersion& imm) {
  RunReport r;
  r.command = command;
  r.surface = imm.name;
  r.m = imm.m;
  r.k = imm.k;
  r.chi = imm.euler_char;
  r.parameters = imm.params;
  return r;
}

inline double threshold(const Options& o, double fallback) { return o.fail_threshold.value_or(fallback); }

inline void emit(const RunReport& r, const std::string& format, std::ostream& out) {
  if (format == "json") out << dump_json(to_json(r)) << "\n";
  else if (format == "csv") out << to_csv(r);
  else out << to_table(r);
}

// ---- subcommands -----------------------------------------------------------

inline int cmd_catalog(const Options& o, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (o.format == "csv") out << "name,m,k,n,chi,max_eps\n";
  for (const auto& name : catalog_names()) {
    const Immersion imm = catalog_get(name);
    const std::string chi = imm.euler_char ? std::to_string(*imm.euler_char) : "unknown";
    if (o.format == "json") {
      nlohmann::ordered_json e;
      e["name"] = name;
      e["m"] = imm.m;
      e["k"] = imm.k;
      e["n"] = imm.codim();
      e["chi"] = imm.euler_char ? nlohmann::ordered_json(*imm.euler_char) : nlohmann::ordered_json(nullptr);
      e["max_eps"] = imm.max_eps;
      arr.push_back(e);
    } else if (o.format == "csv") {
      out << name << "," << imm.m << "," << imm.k << "," << imm.codim() << ","
          << (imm.euler_char ? std::to_string(*imm.euler_char) : "") << "," << detail::format_double(imm.max_eps)
          << "\n";
    } else {
      out << name << " m=" << imm.m << " k=" << imm.k << " chi=" << chi
          << " n=" << imm.codim() << "\n";
    }
  }
  if (o.format == "json") out << dump_json(arr) << "\n";
  return kExitOk;
}

inline int cmd_curvature(const Options& o, RunReport& rep) {
  const Immersion imm = load_surface(o);
  rep = base_report(rep.command, imm);
  if (static_cast<int>(o.point.size()) != imm.m) {
    throw UsageError("--point needs " + std::to_string(imm.m) + " coordinates, got " +
                     std::to_string(o.point.size()));
  }
  const auto u = wrap_point(imm, o.point);
  for (int i = 0; i < imm.m; ++i) rep.inputs.emplace_back("point_" + std::to_string(i), u[i]);
  rep.inputs.emplace_back("sphere_order", o.sphere_order);

  const FrameData fd = fundamental_forms(evaluate_jet2(imm, u));
  const double km = generalized_curvature_moments(fd);
  const double kq = generalized_curvature_quadrature(fd, normal_sphere_rule(fd.n(), o.sphere_order));
  rep.results.emplace_back("k_moments", km);
  rep.results.emplace_back("k_quadrature", kq);
  rep.results.emplace_back("residual_moments_quadrature", std::abs(km - kq));
  double worst = std::abs(km - kq);
  if (imm.m % 2 == 0) {
    const CurvatureReport cr = egregium_report(fd, o.sphere_order);
    rep.results.emplace_back("pfaffian_density", cr.pfaffian_density);
    rep.results.emplace_back("egregium_lhs", cr.egregium_lhs);
    rep.results.emplace_back("residual_egregium", cr.residual_egregium);
    worst = std::max(worst, cr.residual_egregium);
  }
  if (imm.reference_curvature) {
    const double ref = imm.reference_curvature(u);
    rep.results.emplace_back("k_reference", ref);
    rep.results.emplace_back("residual_reference", std::abs(km - ref));
    worst = std::max(worst, std::abs(km - ref));
  }
  return worst > threshold(o, 1e-8) ? kExitCheckFailed : kExitOk;
}

inline int cmd_gauss_bonnet(const Options& o, RunReport& rep) {
  Immersion imm = load_surface(o);
  if (o.withhold_chi) imm.euler_char.reset();
  rep = base_report(rep.command, imm);
  const CurvatureRoute route = parse_route(o.route);
  const QuadratureGrid grid = make_grid(imm, resolution_for(o, imm.m));
  rep.resolution = grid_shape(grid);
  rep.inputs.emplace_back("route", static_cast<double>(route));
  rep.inputs.emplace_back("sphere_order", o.sphere_order);

  const GaussBonnetReport gb = gauss_bonnet_check(imm, grid, route, o.workers, o.sphere_order);
  rep.results.emplace_back("integral", gb.integral);
  if (gb.expected) {
    rep.results.emplace_back("expected", *gb.expected);
    rep.results.emplace_back("residual", *gb.residual);
    rep.results.emplace_back("relative_residual", gb.relative_residual());
  }
  rep.results.emplace_back("estimated_chi", gb.estimated_chi);
  rep.results.emplace_back("chi_distance", gb.chi_distance);
  return gb.relative_residual() > threshold(o, 1e-6) ? kExitCheckFailed : kExitOk;
}

inline int cmd_tube(const Options& o, RunReport& rep) {
  const Immersion imm = load_surface(o);
  rep = base_report(rep.command, imm);
  if (!o.eps) throw UsageError("--eps is required");
  const TubeConfig cfg{imm, *o.eps};
  const TubeBoundary tube = tube_boundary_immersion(cfg);
  const bool any = o.total || o.identity || o.spectrum;
  const bool do_identity = o.identity || !any;
  const bool do_spectrum = o.spectrum || !any;
  const int samples = o.samples.value_or(20);
  rep.inputs.emplace_back("eps", cfg.eps);
  rep.inputs.emplace_back("seed", static_cast<double>(o.seed));
  rep.inputs.emplace_back("samples", samples);
  rep.results.emplace_back("sheets", static_cast<double>(tube.sheets.size()));

  bool failed = false;
  if (do_identity || do_spectrum) {
    Rng rng(o.seed);
    double id_max = 0.0;
    double sp_max = 0.0;
    for (int s = 0; s < samples; ++s) {
      const auto u = sample_point(imm, rng);
      const NormalDirection nu = sample_normal_direction(imm.codim(), rng);
      if (do_identity) id_max = std::max(id_max, tube_identity_check(tube, u, nu).relative());
      if (do_spectrum) sp_max = std::max(sp_max, tube_spectrum_check(tube, u, nu).residual);
    }
    if (do_identity) {
      rep.results.emplace_back("identity_max_relative_residual", id_max);
      failed |= id_max > threshold(o, 1e-6);
    }
    if (do_spectrum) {
      rep.results.emplace_back("spectrum_max_residual", sp_max);
      failed |= sp_max > threshold(o, 1e-6);
    }
  }
  if (o.total) {
    std::optional<Resolution> res;
    if (!o.resolution.empty()) res = resolution_for(o, imm.m + imm.codim() - 1);
    const TubeTotal tt = tube_total_curvature(tube, res, o.workers);
    const Resolution used = res.value_or(default_resolution(imm.k - 1));
    rep.resolution = {used.interval_nodes, used.periodic_nodes};
    rep.results.emplace_back("total_integral", tt.integral);
    rep.results.emplace_back("total_expected", tt.expected);
    rep.results.emplace_back("total_residual", tt.residual);
    const double rel = tt.residual / std::max(1.0, std::abs(tt.expected));
    rep.results.emplace_back("total_relative_residual", rel);
    failed |= rel > threshold(o, 1e-3);
  }
  return failed ? kExitCheckFailed : kExitOk;
}

inline int cmd_egregium(const Options& o, RunReport& rep) {
  const Immersion imm = load_surface(o);
  rep = base_report(rep.command, imm);
  if (imm.m % 2 != 0) throw UnsupportedError("Pfaffian undefined for odd dimension");
  const int samples = o.samples.value_or(10);
  rep.inputs.emplace_back("seed", static_cast<double>(o.seed));
  rep.inputs.emplace_back("samples", samples);
  rep.inputs.emplace_back("sphere_order", o.sphere_order);

  Rng rng(o.seed);
  double eg = 0.0;
  double mq = 0.0;
  double qp = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto u = sample_point(imm, rng);
    const CurvatureReport cr = egregium_report(imm, u, o.sphere_order);
    eg = std::max(eg, cr.residual_egregium);
    mq = std::max(mq, cr.residual_moments_quadrature);
    qp = std::max(qp, cr.residual_quadrature_pfaffian);
  }
  rep.results.emplace_back("max_residual_egregium", eg);
  rep.results.emplace_back("max_residual_moments_quadrature", mq);
  rep.results.emplace_back("max_residual_quadrature_pfaffian", qp);
  return eg > threshold(o, 1e-9) ? kExitCheckFailed : kExitOk;
}

// ---- entry point -------------------------------------------------------------

inline void add_common(CLI::App* sc, Options& o) {
  sc->add_option("--surface", o.surface, "catalog immersion name");
  sc->add_option("--surface-file", o.surface_file, "JSON immersion description");
  sc->add_option("--params", o.params, "catalog family parameters, e.g. 2,0.5 for torus_rev_r3")->delimiter(',');
  sc->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  sc->add_option("--seed", o.seed, "seed for all random sampling");
  sc->add_option("--resolution", o.resolution, "interval nodes[,periodic nodes] per chart axis")->delimiter(',');
  sc->add_option("--fail-threshold", o.fail_threshold, "override the check threshold");
  sc->add_option("--workers", o.workers, "integration threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  sc->add_option("--sphere-order", o.sphere_order, "normal-sphere quadrature order")->check(CLI::PositiveNumber);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized Gaussian curvature of submanifolds: pointwise curvature, "
               "Gauss-Bonnet, Egregium and tube checks."};
  app.name("gcurv");
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "list the built-in immersions");
  catalog->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));

  auto* curvature = app.add_subcommand("curvature", "K_M, Pfaffian density and residuals at a point");
  add_common(curvature, o);
  curvature->add_option("--point", o.point, "chart coordinates, comma separated")->delimiter(',')->required();

  auto* gb = app.add_subcommand("gauss-bonnet", "integrate K_M and compare with the Euler characteristic");
  add_common(gb, o);
  gb->add_option("--route", o.route, "pointwise curvature route")
      ->check(CLI::IsMember({"moments", "quadrature", "pfaffian"}));
  gb->add_flag("--withhold-chi", o.withhold_chi, "ignore the declared Euler characteristic and estimate it");

  auto* tube = app.add_subcommand("tube", "tube boundary identities and total curvature");
  add_common(tube, o);
  tube->add_option("--eps", o.eps, "tube radius")->required();
  tube->add_flag("--total", o.total, "integrate the Gauss-map curvature over the tube");
  tube->add_flag("--identity", o.identity, "check the pointwise rescaling identity at random points");
  tube->add_flag("--spectrum", o.spectrum, "check the tube shape-operator spectrum at random points");
  tube->add_option("--samples", o.samples, "random tube points")->check(CLI::PositiveNumber);

  auto* egregium = app.add_subcommand("egregium", "compare K_M with the Pfaffian density at random points");
  add_common(egregium, o);
  egregium->add_option("--samples", o.samples, "random chart points")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string command = "gcurv";
  for (const auto& a : args) command += " " + a;

  try {
    if (catalog->parsed()) return cmd_catalog(o, out);
    RunReport rep;
    rep.command = command;
    const auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    if (curvature->parsed()) code = cmd_curvature(o, rep);
    else if (gb->parsed()) code = cmd_gauss_bonnet(o, rep);
    else if (tube->parsed()) code = cmd_tube(o, rep);
    else code = cmd_egregium(o, rep);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.status = code == kExitOk ? "ok" : "check-failed";
    emit(rep, o.format, out);
    if (code != kExitOk) err << "check failed: a residual exceeded its threshold\n";
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace gcurv::cli
