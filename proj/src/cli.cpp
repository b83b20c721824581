#include "hypcone/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "hypcone/classify.hpp"
#include "hypcone/error.hpp"
#include "hypcone/gh.hpp"
#include "hypcone/quadrature.hpp"
#include "hypcone/serialize.hpp"
#include "hypcone/smoothing.hpp"
#include "hypcone/tube.hpp"
#include "hypcone/volume.hpp"

#ifndef HYPCONE_VERSION
#define HYPCONE_VERSION "0.0.0"
#endif

namespace hypcone {
namespace {

constexpr double kPi = std::numbers::pi;

// What a subcommand hands back: the echoed inputs, the payload, and an
// optional data table for CSV output.
struct Outcome {
  Json inputs;
  Json result;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Output {
  std::string format = "json";
  std::string path;
};

std::string csv(const Outcome& o) {
  std::string s;
  for (std::size_t k = 0; k < o.columns.size(); ++k) s += (k ? "," : "") + o.columns[k];
  s += "\n";
  for (const auto& row : o.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) s += (k ? "," : "") + shortest(row[k]);
    s += "\n";
  }
  return s;
}

Json table_json(const Outcome& o) {
  Json rows = Json::array();
  for (const auto& row : o.rows) {
    Json r;
    for (std::size_t k = 0; k < row.size(); ++k) r[o.columns[k]] = row[k];
    rows.push_back(r);
  }
  return rows;
}

Json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path, field);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what(), field);
  }
}

SearchMode parse_mode(const std::string& m) {
  return m == "exact" ? SearchMode::Exact : SearchMode::Heuristic;
}

Json tube_report(const Tube& t) {
  Json r;
  r["tube"] = to_json(t);
  const auto [w, h] = boundary_rectangle(t);
  r["rectangle"] = {w, h};
  r["area"] = area(t);
  r["volume"] = volume(t);
  r["area_over_volume"] = area(t) / volume(t);
  if (t.curvature() == -1.0) r["two_coth_delta"] = 2.0 / std::tanh(t.delta());
  const FlatTorus torus = boundary_torus(t);
  r["torus"] = {{"meridian", to_json(torus.meridian())},
                {"longitude", to_json(torus.longitude())},
                {"area", torus.area()}};
  r["systole"] = systole(torus);
  r["injectivity_radius"] = injectivity_radius(torus);
  r["meridian_length"] = meridian_length(t);
  r["modulus"] = to_json(modulus(torus));
  return r;
}

Json curvature_summary(const CurvatureReport& rep) {
  return {{"grid_size", rep.grid.size()},
          {"grid_min", rep.grid.front()},
          {"grid_max", rep.grid.back()},
          {"min", rep.min},
          {"max", rep.max},
          {"negative", rep.max < 0.0},
          {"volume_integral", rep.volume_integral},
          {"oracle_max_deviation", rep.oracle_max_deviation},
          {"oracle_worst_delta", rep.oracle_worst_delta},
          {"oracle_consistent", rep.oracle_consistent}};
}

LengthFunction apoly_length(const APolynomial& a) {
  return [a](double theta) { return theta > 0.0 ? core_length_from_apoly(a, theta).length : 0.0; };
}

Outcome figure_eight_pipeline(int samples) {
  const APolynomial a = APolynomial::figure_eight();
  const double v0 = figure_eight_volume();
  const DeformationRange range = deformation_range(a, v0);
  const double star = 2.0 * kPi / 3.0;
  // Degeneration consistency: the volume lost up to 2π/3 by quadrature of the
  // closed-form length against the series value of the complete volume.
  const double lost = integrate([](double t) { return std::acosh(std::max(1.0, 1.0 + std::cos(t) - std::cos(2 * t))); },
                                0.0, star, 1e-12).value;
  const VolumeCurve curve = schlafli_integrate({apoly_length(a)}, AnglePath::linear({0.0}, {range.theta_star}), v0,
                                               1e-10, samples);
  bool decreasing = true;
  for (std::size_t k = 1; k < curve.volume.size(); ++k) decreasing = decreasing && curve.volume[k] < curve.volume[k - 1];
  const CoreLength mid = core_length_from_apoly(a, kPi / 2);

  Outcome o;
  o.inputs = {{"samples", samples}};
  o.result = {{"theta_star", range.theta_star},
              {"theta_star_error", range.theta_star - star},
              {"criterion", to_string(range.criterion)},
              {"v0", v0},
              {"volume_at_star", range.volume_at_star},
              {"residual", std::abs(lost - v0)},
              {"length_at_half_pi", mid.length},
              {"volume_at_half_pi", v0 - 0.5 * integrate(apoly_length(a), 0.0, kPi / 2).value},
              {"curve", {{"samples", samples}, {"strictly_decreasing", decreasing},
                         {"volume_start", curve.volume.front()}, {"volume_end", curve.volume.back()}}}};
  return o;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations for hyperbolic cone-manifold deformations", "hypcone"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall time to the report");
  app.set_version_flag("--version", HYPCONE_VERSION);

  Output output;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", output.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", output.path, "Write data to this file");
  };

  std::string command;
  std::function<Outcome()> run;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&command, parent, name] { command = parent->get_name() + " " + name; });
    return sub;
  };

  // tube
  CLI::App* tube = app.add_subcommand("tube", "Tube geometry")->require_subcommand(1);
  double sigma = 0, delta = 0, theta = 0, tau = 0, curvature = -1;
  CLI::App* tube_rep = leaf(tube, "report", "All derived quantities of one tube");
  tube_rep->add_option("--sigma", sigma)->required();
  tube_rep->add_option("--delta", delta)->required();
  tube_rep->add_option("--theta", theta)->required();
  tube_rep->add_option("--tau", tau);
  tube_rep->add_option("--curvature,-K", curvature);

  // smoothing
  CLI::App* smoothing = app.add_subcommand("smoothing", "Cusp-smoothing metric")->require_subcommand(1);
  double epsilon = 0.1;
  int grid = 1000;
  std::string csv_path;
  CLI::App* smooth_check = leaf(smoothing, "check", "Curvature negativity check of the default profile");
  smooth_check->add_option("--epsilon", epsilon);
  smooth_check->add_option("--grid", grid);
  smooth_check->add_option("--csv", csv_path, "Also write delta,K12,K13,K23 to this file");
  add_output(smooth_check);

  // volume
  CLI::App* vol = app.add_subcommand("volume", "Schlafli volume integration")->require_subcommand(1);
  std::string apoly_path;
  double from = 0.0, to = 2.0 * kPi / 3.0;
  int samples = 101;
  std::optional<double> v0;
  CLI::App* vol_curve = leaf(vol, "curve", "Volume along a linear cone-angle path");
  vol_curve->add_option("--apoly", apoly_path)->required();
  vol_curve->add_option("--from", from);
  vol_curve->add_option("--to", to);
  vol_curve->add_option("--samples", samples);
  vol_curve->add_option("--v0", v0, "Volume at the start (default: complete figure-eight volume)");
  add_output(vol_curve);
  CLI::App* vol_range = leaf(vol, "range", "First degenerating cone angle");
  vol_range->add_option("--apoly", apoly_path)->required();
  vol_range->add_option("--v0", v0);

  // gh
  CLI::App* gh = app.add_subcommand("gh", "Pointed Gromov-Hausdorff approximations")->require_subcommand(1);
  std::string x_path, y_path, relation_path, mode = "exact";
  double eps = 0.0, radius = 0.0;
  CLI::App* gh_check = leaf(gh, "check", "Is there (or is this) an eps-approximation");
  gh_check->add_option("--x", x_path)->required();
  gh_check->add_option("--y", y_path)->required();
  gh_check->add_option("--eps", eps)->required();
  gh_check->add_option("--relation", relation_path);
  CLI::App* gh_min = leaf(gh, "mineps", "Smallest eps admitting an approximation");
  gh_min->add_option("--x", x_path)->required();
  gh_min->add_option("--y", y_path)->required();
  gh_min->add_option("--mode", mode)->check(CLI::IsMember({"exact", "heuristic"}));
  CLI::App* gh_cover = leaf(gh, "cover", "Covering number of a ball");
  gh_cover->add_option("--x", x_path)->required();
  gh_cover->add_option("--r", radius)->required();
  gh_cover->add_option("--eps", eps)->required();
  gh_cover->add_option("--mode", mode)->check(CLI::IsMember({"exact", "greedy"}));

  // classify
  CLI::App* cls = app.add_subcommand("classify", "Flat cone surfaces and tetrahedra")->require_subcommand(1);
  int chi = 2;
  std::vector<double> angles;
  double alpha = 0, beta = 0, gamma = 0, teps = 0;
  CLI::App* cls_surface = leaf(cls, "surface", "Gauss-Bonnet classification");
  cls_surface->add_option("--chi", chi)->required();
  cls_surface->add_option("--angles", angles)->required()->delimiter(',');
  CLI::App* cls_tetra = leaf(cls, "tetra", "Regime of the tetrahedron family");
  cls_tetra->add_option("--alpha", alpha)->required();
  cls_tetra->add_option("--beta", beta)->required();
  cls_tetra->add_option("--gamma", gamma)->required();
  cls_tetra->add_option("--eps", teps)->required();

  // examples
  CLI::App* examples = app.add_subcommand("examples", "Worked examples")->require_subcommand(1);
  int fig_samples = 65;
  CLI::App* fig8 = leaf(examples, "figure8", "Figure-eight cone manifolds end to end");
  fig8->add_option("--samples", fig_samples);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << HYPCONE_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (command == "tube report") {
      const Tube t(sigma, delta, theta, tau, curvature);
      outcome.inputs = to_json(t);
      outcome.result = tube_report(t);
    } else if (command == "smoothing check") {
      if (grid < 2) throw Error(ErrorKind::InvalidInput, "grid needs at least two points", "grid");
      const SmoothingProfile p = SmoothingProfile::standard(epsilon);
      const CurvatureReport rep = negativity_check(p, grid);
      outcome.inputs = {{"epsilon", epsilon}, {"grid", grid}};
      outcome.result = curvature_summary(rep);
      outcome.columns = {"delta", "K12", "K13", "K23"};
      for (std::size_t k = 0; k < rep.grid.size(); ++k)
        outcome.rows.push_back({rep.grid[k], rep.k12[k], rep.k13[k], rep.k23[k]});
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + csv_path, "csv");
        f << csv(outcome);
      }
    } else if (command == "volume curve") {
      const APolynomial a = APolynomial::load(apoly_path);
      if (samples < 2) throw Error(ErrorKind::InvalidInput, "need at least two samples", "samples");
      if (!(from >= 0.0 && to <= 2.0 * kPi)) throw Error(ErrorKind::InvalidInput, "angles must lie in [0, 2pi]", "to");
      const double start = v0.value_or(figure_eight_volume());
      const VolumeCurve c = schlafli_integrate({apoly_length(a)}, AnglePath::linear({from}, {to}), start, 1e-10, samples);
      outcome.inputs = {{"apoly", apoly_path}, {"from", from}, {"to", to}, {"samples", samples}, {"v0", start}};
      outcome.columns = {"t", "theta", "length", "volume"};
      for (std::size_t k = 0; k < c.t.size(); ++k)
        outcome.rows.push_back({c.t[k], c.theta[k][0], c.lengths[k][0], c.volume[k]});
      outcome.result = {{"volume_start", c.volume.front()}, {"volume_end", c.volume.back()}};
    } else if (command == "volume range") {
      const APolynomial a = APolynomial::load(apoly_path);
      const DeformationRange r = deformation_range(a, v0);
      outcome.inputs = {{"apoly", apoly_path}, {"v0", v0.value_or(figure_eight_volume())}};
      outcome.result = {{"theta_star", r.theta_star},
                        {"criterion", to_string(r.criterion)},
                        {"volume_at_star", r.volume_at_star}};
    } else if (command == "gh check") {
      const auto x = space_from_json(read_json_file(x_path, "x"), "x");
      const auto y = space_from_json(read_json_file(y_path, "y"), "y");
      outcome.inputs = {{"x", x_path}, {"y", y_path}, {"eps", eps}};
      if (!relation_path.empty()) {
        outcome.inputs["relation"] = relation_path;
        const Relation r = relation_from_json(read_json_file(relation_path, "relation"), "relation");
        const auto v = is_eps_approximation(r, x, y, eps);
        outcome.result = {{"approximation", v.ok}, {"relation", to_json(r)}};
        if (!v.ok) outcome.result["violation"] = {{"condition", v.condition}, {"witness", v.witness}};
      } else {
        const auto r = find_eps_approximation(x, y, eps);
        outcome.result = {{"approximation", r.has_value()}, {"relation", r ? to_json(*r) : Json(nullptr)}};
      }
    } else if (command == "gh mineps") {
      const auto x = space_from_json(read_json_file(x_path, "x"), "x");
      const auto y = space_from_json(read_json_file(y_path, "y"), "y");
      const MinEpsResult m = min_eps(x, y, parse_mode(mode));
      outcome.inputs = {{"x", x_path}, {"y", y_path}, {"mode", mode}};
      outcome.result = {{"eps", m.eps}, {"attained", m.attained}, {"exact", m.exact}, {"relation", to_json(m.relation)}};
    } else if (command == "gh cover") {
      const auto x = space_from_json(read_json_file(x_path, "x"), "x");
      const CoverResult c = covering_number(x, radius, eps, parse_mode(mode));
      outcome.inputs = {{"x", x_path}, {"r", radius}, {"eps", eps}, {"mode", mode}};
      outcome.result = {{"count", c.count}, {"exact", c.exact}, {"centers", c.centers}};
    } else if (command == "classify surface") {
      const ConeSurface s(chi, angles);
      const SurfaceVerdict v = classify_flat_le_pi(s);
      outcome.inputs = {{"chi", chi}, {"angles", angles}};
      outcome.result = {{"verdict", to_string(v.kind)}, {"defect", v.defect}};
    } else if (command == "classify tetra") {
      const TetrahedronAngles t(alpha, beta, gamma, teps);
      const TetrahedronReport r = tetrahedron_regime(t);
      const Eigen::Matrix4d g = gram_matrix(t);
      Json gram = Json::array();
      for (int i = 0; i < 4; ++i) gram.push_back({g(i, 0), g(i, 1), g(i, 2), g(i, 3)});
      outcome.inputs = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"eps", teps}};
      outcome.result = {{"regime", to_string(r.regime)},
                        {"reason", r.reason},
                        {"gram", gram},
                        {"vertex_minors", r.vertex_minors},
                        {"eigenvalues", {r.eigenvalues[0], r.eigenvalues[1], r.eigenvalues[2], r.eigenvalues[3]}},
                        {"singular_angles", r.singular_angles}};
    } else if (command == "examples figure8") {
      if (fig_samples < 2) throw Error(ErrorKind::InvalidInput, "need at least two samples", "samples");
      outcome = figure_eight_pipeline(fig_samples);
    }
  } catch (const Error& e) {
    Json j = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}, {"field", e.field()}}},
              {"subcommand", command}};
    out << dump_json(j);
    return 1;
  } catch (const std::exception& e) {
    Json j = {{"error", {{"kind", "InvalidInput"}, {"message", e.what()}, {"field", ""}}}, {"subcommand", command}};
    out << dump_json(j);
    return 1;
  }

  const bool has_table = !outcome.columns.empty();
  if (has_table && !output.path.empty()) {
    std::ofstream f(output.path);
    if (!f) {
      out << dump_json({{"error", {{"kind", "InvalidInput"}, {"message", "cannot write " + output.path}, {"field", "out"}}},
                        {"subcommand", command}});
      return 1;
    }
    f << (output.format == "csv" ? csv(outcome) : dump_json(table_json(outcome)));
    outcome.inputs["out"] = output.path;
  } else if (has_table && output.format == "csv") {
    out << csv(outcome);
    return 0;
  } else if (has_table && command == "volume curve") {
    outcome.result["curve"] = table_json(outcome);
  }

  Json report = {{"subcommand", command}, {"inputs", outcome.inputs}, {"result", outcome.result},
                 {"version", HYPCONE_VERSION}};
  if (timing) {
    report["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  out << dump_json(report);
  return 0;
}

}  // namespace hypcone
