#include "illume/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace illume {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw parse_error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Vec point(const Json& j, int* dim_out = nullptr) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw parse_error("points need 2 or 3 coordinates");
  Vec v = Vec::Zero();
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw parse_error("coordinates must be numbers");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  if (dim_out) *dim_out = static_cast<int>(j.size());
  return v;
}

Json point_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v(i));
  return a;
}

std::vector<double> numbers(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of numbers");
  std::vector<double> out;
  for (const Json& v : j) {
    if (!v.is_number()) throw parse_error("expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", std::abs(v) < 5e-7 ? 0.0 : v);
  return buf;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Body body_from_json(const Json& j) {
  if (!j.is_object()) throw parse_error("body must be a JSON object");
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw parse_error("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "ball") {
      int dim = 2;
      const Vec c = point(field(j, "center"), &dim);
      return Body::ball(dim, c, number(j, "radius"));
    }
    if (k == "ellipsoid") {
      int dim = 2;
      const Vec c = point(field(j, "center"), &dim);
      int dim_axes = 2;
      Vec axes = point(field(j, "semi_axes"), &dim_axes);
      if (dim_axes != dim) throw parse_error("semi_axes length must match the dimension");
      if (dim == 2) axes.z() = 1.0;
      Mat R = Mat::Identity();
      if (j.contains("rotation")) {
        const Json& r = j.at("rotation");
        if (!r.is_array() || static_cast<int>(r.size()) != dim) throw parse_error("rotation must be an n x n matrix");
        for (int row = 0; row < dim; ++row) {
          const auto vals = numbers(r[row]);
          if (static_cast<int>(vals.size()) != dim) throw parse_error("rotation must be an n x n matrix");
          for (int col = 0; col < dim; ++col) R(row, col) = vals[col];
        }
      }
      return Body::ellipsoid(dim, c, axes, R);
    }
    if (k == "polytope") {
      const Json& vs = field(j, "vertices");
      if (!vs.is_array() || vs.empty()) throw parse_error("vertices must be a nonempty array");
      int dim = 0;
      std::vector<Vec> verts;
      for (const Json& v : vs) {
        int d = 0;
        verts.push_back(point(v, &d));
        if (dim != 0 && d != dim) throw parse_error("vertices have mixed dimensions");
        dim = d;
      }
      return Body::polytope(dim, std::move(verts));
    }
    if (k == "radial_fourier_2d") {
      const std::vector<double> a = j.contains("a") ? numbers(j.at("a")) : std::vector<double>{};
      const std::vector<double> b = j.contains("b") ? numbers(j.at("b")) : std::vector<double>{};
      return Body::radial_fourier(number(j, "a0"), a, b);
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(e.what());
  }
  throw parse_error("unknown body kind '" + k + "'");
}

Json body_to_json(const Body& body) {
  const int n = body.dim();
  Json j;
  j["kind"] = body.kind();
  if (const auto* b = std::get_if<Ball>(&body.shape())) {
    j["center"] = point_json(b->center, n);
    j["radius"] = b->radius;
  } else if (const auto* e = std::get_if<Ellipsoid>(&body.shape())) {
    j["center"] = point_json(e->center, n);
    j["semi_axes"] = point_json(e->semi_axes, n);
    Json rot = Json::array();
    for (int r = 0; r < n; ++r) {
      Json row = Json::array();
      for (int c = 0; c < n; ++c) row.push_back(e->rotation(r, c));
      rot.push_back(row);
    }
    j["rotation"] = rot;
  } else if (const auto* p = std::get_if<Polytope>(&body.shape())) {
    Json vs = Json::array();
    for (const Vec& v : p->vertices) vs.push_back(point_json(v, n));
    j["vertices"] = vs;
  } else if (const auto* f = std::get_if<RadialFourier2D>(&body.shape())) {
    j["a0"] = f->a0;
    j["a"] = f->a;
    j["b"] = f->b;
  }
  return j;
}

Domain domain_from_json(const Json& j, int dim) {
  const std::string k = field(j, "kind").get<std::string>();
  if (k == "all") return Domain::all(dim);
  if (k == "ball") return Domain::ball(dim, number(j, "radius"), j.contains("center") ? point(j.at("center")) : Vec::Zero());
  if (k == "box") return Domain::box(dim, point(field(j, "lo")), point(field(j, "hi")));
  if (k == "body") return Domain::body_interior(body_from_json(field(j, "body")));
  throw parse_error("unknown domain kind '" + k + "'");
}

Density density_from_json(const Json& j, int dim, const ExpressionCompiler& compile) {
  if (j.is_string()) return density_from_json(Json{{"kind", j.get<std::string>()}}, dim, compile);
  if (!j.is_object()) throw parse_error("weight must be a string or an object");
  const std::string k = field(j, "kind").get<std::string>();
  if (k == "uniform") {
    return j.contains("domain") ? uniform_density(dim, domain_from_json(j.at("domain"), dim)) : uniform_density(dim);
  }
  if (k == "space_form") {
    return space_form_density(number(j, "lambda"), dim, j.contains("chart_cutoff") ? number(j, "chart_cutoff") : 1e3);
  }
  if (k == "dual") return dual_weight(number(j, "q"), j.contains("rho_floor") ? number(j, "rho_floor") : 1e-3, dim);
  if (k == "expression") {
    if (!compile) throw parse_error("expression densities are not available here");
    const std::string expr = field(j, "expr").get<std::string>();
    const Domain dom = j.contains("domain") ? domain_from_json(j.at("domain"), dim) : Domain::all(dim);
    return custom_density(dim, dom, compile(expr), "expr(" + expr + ")");
  }
  if (k == "hilbert") {
    const Body dom = body_from_json(field(j, "domain"));
    if (dom.dim() != dim) throw parse_error("Hilbert domain dimension mismatch");
    const FinslerKind vol = j.contains("volume") ? finsler_kind_from_string(j.at("volume").get<std::string>())
                                                 : FinslerKind::Busemann;
    return HilbertDomain(dom).finsler_density(vol);
  }
  throw parse_error("unknown weight kind '" + k + "'");
}

GeometrySpec geometry_from_string(const std::string& text, FinslerKind volume) {
  if (text == "euclid" || text == "euclidean") return GeometrySpec::euclidean();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "spaceform") {
    std::size_t used = 0;
    double lambda = 0.0;
    try {
      lambda = std::stod(rest, &used);
    } catch (const std::exception&) {
      throw parse_error("bad curvature in '" + text + "'");
    }
    if (used != rest.size()) throw parse_error("bad curvature in '" + text + "'");
    return GeometrySpec::space_form(lambda);
  }
  if (head == "hilbert") {
    if (rest.empty()) throw parse_error("hilbert geometry needs a body file");
    return GeometrySpec::hilbert(body_from_json(read_json_file(rest)), volume);
  }
  throw parse_error("unknown geometry '" + text + "'");
}

ConvergenceConfig config_from_json(const Json& j, const ExpressionCompiler& compile) {
  if (!j.is_object()) throw parse_error("config must be a JSON object");
  ConvergenceConfig cfg;
  try {
    cfg.body = body_from_json(field(j, "body"));
    const int n = cfg.body.dim();
    if (j.contains("geometry")) {
      const Json& g = j.at("geometry");
      if (g.is_string()) {
        cfg.geometry = geometry_from_string(g.get<std::string>());
      } else {
        const std::string k = field(g, "kind").get<std::string>();
        if (k == "euclid" || k == "euclidean") {
          cfg.geometry = GeometrySpec::euclidean();
        } else if (k == "space_form") {
          cfg.geometry = GeometrySpec::space_form(number(g, "lambda"));
        } else if (k == "hilbert") {
          const FinslerKind vol = g.contains("volume") ? finsler_kind_from_string(g.at("volume").get<std::string>())
                                                       : FinslerKind::Busemann;
          cfg.geometry = GeometrySpec::hilbert(body_from_json(field(g, "domain")), vol);
        } else {
          throw parse_error("unknown geometry kind '" + k + "'");
        }
      }
    }
    if (j.contains("weight_phi")) cfg.phi = density_from_json(j.at("weight_phi"), n, compile);
    if (j.contains("weight_psi")) cfg.psi = density_from_json(j.at("weight_psi"), n, compile);
    if (j.contains("delta_sequence")) cfg.deltas = numbers(j.at("delta_sequence"));
    if (j.contains("grid")) cfg.grid = j.at("grid").get<int>();
    if (j.contains("resolution")) cfg.resolution = j.at("resolution").get<int>();
    if (j.contains("tol")) cfg.tol = number(j, "tol");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(e.what());
  }
  return cfg;
}

Json report_to_json(const ConvergenceReport& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["body"] = r.body_kind;
  j["geometry"] = r.geometry;
  j["weight_phi"] = r.phi_label;
  j["weight_psi"] = r.psi_label;
  j["recentred_by"] = point_json(r.recentred_by, 3);
  j["target"] = r.target;
  if (r.target_cross) {
    j["target_cross"] = *r.target_cross;
    j["target_cross_method"] = r.target_cross_label;
  }
  Json rows = Json::array();
  for (std::size_t k = 0; k < r.deltas.size(); ++k) {
    rows.push_back({{"delta", r.deltas[k]}, {"quotient", r.quotients[k]}, {"rel_error", r.rel_errors[k]}});
  }
  j["sequence"] = rows;
  j["monotone_tail"] = r.monotone_tail;
  return j;
}

Json golden_to_json(const std::vector<GoldenCase>& cases) {
  Json arr = Json::array();
  for (const GoldenCase& c : cases) {
    Json j;
    j["case"] = c.name;
    j["relation"] = c.relation;
    j["expected"] = c.expected;
    j["computed"] = c.computed;
    j["error"] = c.error;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return Json{{"schema_version", 1}, {"cases", arr}};
}

std::string golden_table(const std::vector<GoldenCase>& cases) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %16s %16s %10s  %s\n", "case", "expected", "computed", "|error|", "result");
  os << line;
  for (const GoldenCase& c : cases) {
    std::snprintf(line, sizeof line, "%-44s %16.10f %16.10f %10.2e  %s\n", c.name.c_str(), c.expected, c.computed,
                  std::abs(c.error), c.pass ? "pass" : "FAIL");
    os << line;
  }
  return os.str();
}

std::string profile_csv(const RadialProfile& p) {
  const int n = p.grid.dim();
  std::ostringstream os;
  os << (n == 2 ? "ux,uy" : "ux,uy,uz") << ",rho,flag\n";
  char buf[64];
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      std::snprintf(buf, sizeof buf, "%.12g,", p.grid.unit(i)(k));
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g,", p.rho[i]);
    os << buf << to_string(p.flags[i]) << "\n";
  }
  return os.str();
}

std::string profile_svg(const Body& body, const RadialProfile& p) {
  if (body.dim() != 2 || p.grid.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "SVG output is planar");
  const int outline = 720;
  std::vector<Vec> kpts;
  for (int i = 0; i < outline; ++i) {
    const double t = 2.0 * kPi * i / outline;
    const Vec u = vec2(std::cos(t), std::sin(t));
    kpts.push_back(body.radial(u) * u);
  }
  std::vector<Vec> lpts;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (std::isfinite(p.rho[i])) lpts.push_back(p.rho[i] * p.grid.unit(i));
  }
  double extent = 0.0;
  for (const auto* set : {&kpts, &lpts}) {
    for (const Vec& v : *set) extent = std::max({extent, std::abs(v.x()), std::abs(v.y())});
  }
  const double size = 400.0;
  const double scale = 0.45 * size / extent;
  auto path = [&](const std::vector<Vec>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d += (i == 0 ? "M" : " L") + fmt(0.5 * size + scale * pts[i].x()) + "," + fmt(0.5 * size - scale * pts[i].y());
    }
    return d + " Z";
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  os << "<path d=\"" << path(kpts) << "\" fill=\"#d0d0d0\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (!lpts.empty()) os << "<path d=\"" << path(lpts) << "\" fill=\"none\" stroke=\"#c03000\" stroke-width=\"1\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace illume
