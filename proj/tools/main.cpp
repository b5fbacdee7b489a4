#include "expression.hpp"

#include "illume/appendix.hpp"
#include "illume/experiments.hpp"
#include "illume/illumination.hpp"
#include "illume/io.hpp"
#include "illume/projective.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace illume;

namespace {

struct Globals {
  std::string geometry = "euclid";
  std::string finsler_volume = "busemann";
  std::uint64_t seed = 1;
  double tol = 1e-10;
  int resolution = 0;
  std::string out;
};

Vec parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad coordinate list '" + text + "'");
    }
  }
  if (v.size() != 2 && v.size() != 3) throw Error(ErrorCode::ParseError, "points need 2 or 3 coordinates");
  return Vec(v[0], v[1], v.size() == 3 ? v[2] : 0.0);
}

// A weight is a keyword, inline JSON, or a path to a JSON file.
Json weight_json(const std::string& text) {
  if (text.empty()) return Json();
  if (text.front() == '{') return parse_json(text);
  if (text == "uniform") return Json{{"kind", "uniform"}};
  return read_json_file(text);
}

ExpressionCompiler compiler() {
  return [](const std::string& expr) { return Density::Field(compile_expression(expr)); };
}

Density resolve_weight(const std::string& text, const Globals& g, int dim) {
  if (!text.empty()) return density_from_json(weight_json(text), dim, compiler());
  return geometry_from_string(g.geometry, finsler_kind_from_string(g.finsler_volume)).density(dim);
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorCode::InvalidParameter, "cannot write '" + g.out + "'");
  f << text;
}

std::string number_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// Moves K (and phi) so that o is interior, logging the translation.
Vec recentre(Body& body, Density& phi) {
  if (body.origin_interior()) return Vec::Zero();
  const Vec shift = -body.interior_point();
  body = body.translated(shift);
  phi = translated_density(phi, shift);
  std::cerr << "note: recentred body by (" << shift.x() << ", " << shift.y() << ", " << shift.z() << ")\n";
  return shift;
}

DirectionGrid make_grid(int dim, int size) {
  return dim == 2 ? DirectionGrid::uniform_angle(size > 0 ? size : 256) : DirectionGrid::icosphere(size > 0 ? size : 3);
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::ProfileUnbounded:
    case ErrorCode::ChartOverflow: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"illume: illumination bodies in weighted, space-form and Hilbert geometries"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--geometry", g.geometry, "euclid | spaceform:<lambda> | hilbert:<body.json>");
  app.add_option("--finsler-volume", g.finsler_volume, "busemann | holmes-thompson | gromov-mass | gromov-comass");
  app.add_option("--seed", g.seed, "Monte Carlo seed");
  app.add_option("--tol", g.tol, "relative tolerance of the radius solve");
  app.add_option("--resolution", g.resolution, "boundary quadrature resolution (0 = default)");
  app.add_option("--out", g.out, "output file (default stdout)");

  std::string body_path;
  std::string weight;
  std::string z_text;
  std::string method = "frontside";
  std::uint64_t samples = 400000;
  double delta = 0.0;
  int grid = 0;
  std::string csv_path;
  std::string svg_path;
  std::string config_path;
  std::string domain_path;
  std::string p_text;
  std::string q_text;
  std::string v_text;

  auto* body_cmd = app.add_subcommand("body", "validate and describe a body");
  body_cmd->add_option("--body", body_path, "body JSON file")->required();

  auto* cap_cmd = app.add_subcommand("capvol", "one cap volume V_K^phi(z)");
  cap_cmd->add_option("--body", body_path, "body JSON file")->required();
  cap_cmd->add_option("--weight", weight, "uniform | inline JSON | JSON file (default: geometry density)");
  cap_cmd->add_option("--z", z_text, "point, e.g. 2,0")->required();
  cap_cmd->add_option("--method", method, "frontside | boundary | montecarlo");
  cap_cmd->add_option("--samples", samples, "Monte Carlo samples");

  auto* ill_cmd = app.add_subcommand("illuminate",
                                     "illumination body profile; CSV columns: ux,uy[,uz],rho,flag");
  ill_cmd->add_option("--body", body_path, "body JSON file")->required();
  ill_cmd->add_option("--weight", weight, "weight density");
  ill_cmd->add_option("--delta", delta, "delta")->required();
  ill_cmd->add_option("--grid", grid, "directions (n=2) or icosphere levels (n=3)");
  ill_cmd->add_option("--csv", csv_path, "write the profile as CSV");
  ill_cmd->add_option("--svg", svg_path, "write an SVG outline (n=2)");

  auto* conv_cmd = app.add_subcommand("converge", "difference-quotient convergence run");
  conv_cmd->add_option("--config", config_path, "config JSON file")->required();

  auto* golden_cmd = app.add_subcommand("golden", "golden-value suite");

  auto* hil_cmd = app.add_subcommand("hilbert", "Hilbert distance, norm and density queries");
  hil_cmd->add_option("--domain", domain_path, "domain body JSON file")->required();
  hil_cmd->add_option("--p", p_text, "base point")->required();
  hil_cmd->add_option("--q", q_text, "second point for the distance");
  hil_cmd->add_option("--v", v_text, "tangent vector for the norm");

  auto* cc_cmd = app.add_subcommand("check-convexity", "midpoint convexity scan of an illumination profile");
  cc_cmd->add_option("--body", body_path, "body JSON file")->required();
  cc_cmd->add_option("--weight", weight, "weight density");
  cc_cmd->add_option("--delta", delta, "delta")->required();
  cc_cmd->add_option("--grid", grid, "directions (n=2) or icosphere levels (n=3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*body_cmd) {
      const Body body = body_from_json(read_json_file(body_path));
      Json j = body_to_json(body);
      j["dim"] = body.dim();
      j["volume"] = body.volume();
      j["surface_area"] = body.surface_area();
      j["diameter"] = body.diameter();
      j["origin_interior"] = body.origin_interior();
      emit(g, j.dump(2) + "\n");
      return 0;
    }
    if (*cap_cmd) {
      const Body body = body_from_json(read_json_file(body_path));
      const Density phi = resolve_weight(weight, g, body.dim());
      CapOptions opts;
      opts.resolution = g.resolution;
      opts.seed = g.seed;
      opts.samples = samples;
      if (method == "frontside") {
        opts.method = CapMethod::FrontsideIntegral;
      } else if (method == "boundary") {
        opts.method = CapMethod::BoundaryIntegral;
      } else if (method == "montecarlo") {
        opts.method = CapMethod::MonteCarloHull;
      } else {
        throw Error(ErrorCode::ParseError, "unknown method '" + method + "'");
      }
      const CapEstimate est = cap_volume_estimate(body, phi, parse_point(z_text), opts);
      std::string text = number_text(est.value);
      if (opts.method == CapMethod::MonteCarloHull) text += " +- " + number_text(est.std_error);
      emit(g, text + "\n");
      return 0;
    }
    if (*ill_cmd || *cc_cmd) {
      Body body = body_from_json(read_json_file(body_path));
      Density phi = resolve_weight(weight, g, body.dim());
      const Vec shift = recentre(body, phi);
      RadiusOptions ro;
      ro.tol = g.tol;
      ro.cap.resolution = g.resolution;
      ro.cap.seed = g.seed;
      const RadialProfile prof = illumination_body(body, phi, delta, make_grid(body.dim(), grid), ro);
      if (*ill_cmd) {
        if (!csv_path.empty()) std::ofstream(csv_path) << profile_csv(prof);
        if (!svg_path.empty()) std::ofstream(svg_path) << profile_svg(body, prof);
        Json j;
        j["schema_version"] = 1;
        j["body"] = prof.body_kind;
        j["weight"] = prof.weight_label;
        j["delta"] = delta;
        j["recentred_by"] = {shift.x(), shift.y(), shift.z()};
        j["directions"] = prof.grid.size();
        j["all_finite"] = prof.all_finite();
        double lo = 1e300;
        double hi = 0.0;
        for (std::size_t i = 0; i < prof.rho.size(); ++i) {
          if (prof.flags[i] != RadiusFlag::Finite) continue;
          lo = std::min(lo, prof.rho[i]);
          hi = std::max(hi, prof.rho[i]);
        }
        j["rho_min"] = lo;
        j["rho_max"] = hi;
        emit(g, j.dump(2) + "\n");
        return 0;
      }
      if (!prof.all_finite()) throw Error(ErrorCode::ProfileUnbounded, "profile has unbounded directions");
      const ConvexityReport rep = convexity_check(prof);
      Json j;
      j["schema_version"] = 1;
      j["convex"] = rep.convex;
      j["margin"] = rep.margin;
      if (!rep.convex) {
        j["witness"] = {{"i", rep.i}, {"j", rep.j}, {"midpoint", {rep.midpoint.x(), rep.midpoint.y(), rep.midpoint.z()}}};
      }
      emit(g, j.dump(2) + "\n");
      return 0;
    }
    if (*conv_cmd) {
      ConvergenceConfig cfg = config_from_json(read_json_file(config_path), compiler());
      cfg.seed = g.seed;
      if (g.resolution > 0) cfg.resolution = g.resolution;
      if (app.get_option("--tol")->count() > 0) cfg.tol = g.tol;
      emit(g, report_to_json(run_convergence(cfg)).dump(2) + "\n");
      return 0;
    }
    if (*golden_cmd) {
      const auto cases = run_golden_suite();
      std::cout << golden_table(cases);
      if (!g.out.empty()) std::ofstream(g.out) << golden_to_json(cases).dump(2) << "\n";
      for (const GoldenCase& c : cases) {
        if (!c.pass) return 3;
      }
      return 0;
    }
    if (*hil_cmd) {
      const HilbertDomain dom(body_from_json(read_json_file(domain_path)));
      const Vec p = parse_point(p_text);
      Json j;
      j["p"] = {p.x(), p.y(), p.z()};
      if (!q_text.empty()) j["distance"] = dom.distance(p, parse_point(q_text));
      if (!v_text.empty()) j["norm"] = dom.norm(p, parse_point(v_text));
      const FinslerKind kind = finsler_kind_from_string(g.finsler_volume);
      j["density"] = {{"volume", to_string(kind)}, {"value", dom.density(kind, p)}};
      j["polygonal_domain"] = dom.polygonal();
      emit(g, j.dump(2) + "\n");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
