#include "illume/geometry.hpp"

#include "illume/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace illume {

namespace {

constexpr int kOrder = 8;

int panels_for(int nodes) { return std::max(1, (nodes + kOrder - 1) / kOrder); }

// Orthonormal frame (e1, e2) completing the unit vector e3.
void frame_from_axis(const Vec& e3, Vec& e1, Vec& e2) {
  const Vec helper = std::abs(e3.x()) < 0.9 ? Vec::UnitX() : Vec::UnitY();
  e1 = (helper - helper.dot(e3) * e3).normalized();
  e2 = e3.cross(e1);
}

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

// Ball and ellipsoid share one parametrization x = c + R diag(a) u.
struct Quadric {
  Vec c;
  Mat R;
  Vec a;  // third entry is 1 in the plane
  int n;

  Vec local(const Vec& x) const { return a.cwiseInverse().asDiagonal() * (R.transpose() * (x - c)); }
  double axis_product() const { return n == 2 ? a(0) * a(1) : a.prod(); }

  BoundaryPoint node(const Vec& u, double w_sigma) const {
    const Vec inv = a.cwiseInverse().asDiagonal() * u;
    const double len = inv.norm();
    const double prod = axis_product();
    BoundaryPoint bp;
    bp.x = c + R * (a.asDiagonal() * u);
    bp.normal = R * inv / len;
    bp.curvature = 1.0 / (prod * prod * std::pow(len, n + 1));
    bp.weight = w_sigma * prod * len;
    return bp;
  }

  // Arc of the unit circle [t0, t1] in local coordinates.
  void arc(double t0, double t1, int res, std::vector<BoundaryPoint>& out) const {
    const GaussRule& rule = gauss_legendre(kOrder);
    const int panels = panels_for(res);
    const double h = (t1 - t0) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = t0 + (p + 0.5) * h;
      for (int i = 0; i < kOrder; ++i) {
        const double t = mid + 0.5 * h * rule.nodes[i];
        out.push_back(node(Vec(std::cos(t), std::sin(t), 0.0), 0.5 * h * rule.weights[i]));
      }
    }
  }

  // Zone zeta in [z0, z1] of the unit sphere about `axis`.
  void zone(const Vec& axis, double z0, double z1, int res, std::vector<BoundaryPoint>& out) const {
    Vec e1, e2;
    frame_from_axis(axis, e1, e2);
    const GaussRule& rule = gauss_legendre(kOrder);
    const int panels = panels_for(res);
    const int m = 2 * std::max(res, 4);
    const double h = (z1 - z0) / panels;
    const double dphi = 2.0 * kPi / m;
    for (int p = 0; p < panels; ++p) {
      const double mid = z0 + (p + 0.5) * h;
      for (int i = 0; i < kOrder; ++i) {
        const double zeta = mid + 0.5 * h * rule.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
        const double w = 0.5 * h * rule.weights[i] * dphi;
        for (int j = 0; j < m; ++j) {
          const double phi = (j + 0.5) * dphi;
          const Vec u = s * (std::cos(phi) * e1 + std::sin(phi) * e2) + zeta * axis;
          out.push_back(node(u, w));
        }
      }
    }
  }
};

Quadric quadric_of(const Shape& shape, int n) {
  if (const auto* b = std::get_if<Ball>(&shape)) {
    Vec a = Vec::Constant(b->radius);
    if (n == 2) a(2) = 1.0;
    return {b->center, Mat::Identity(), a, n};
  }
  const auto& e = std::get<Ellipsoid>(shape);
  Vec a = e.semi_axes;
  if (n == 2) a(2) = 1.0;
  return {e.center, e.rotation, a, n};
}

// Largest root interval of |p + t d|^2 = 1.
std::optional<Chord> unit_sphere_chord(const Vec& p, const Vec& d) {
  const double A = d.squaredNorm();
  if (A == 0.0) return std::nullopt;
  const double B = p.dot(d);
  const double C = p.squaredNorm() - 1.0;
  const double disc = B * B - A * C;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Stable pair of roots.
  const double q = -(B + std::copysign(sq, B));
  double t1 = q / A;
  double t2 = q != 0.0 ? C / q : t1;
  if (t1 > t2) std::swap(t1, t2);
  return Chord{t1, t2};
}

struct Hull2D {
  std::vector<Vec> vertices;  // counter-clockwise
};

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Hull2D hull_2d(std::vector<Vec> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  return {h};
}

struct Hull3D {
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
};

Hull3D hull_3d(const std::vector<Vec>& pts, double diam) {
  const double eps = 1e-10 * diam;
  const std::size_t N = pts.size();
  std::vector<Facet> planes;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      for (std::size_t k = j + 1; k < N; ++k) {
        Vec nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        const double len = nrm.norm();
        if (len <= eps * diam) continue;
        nrm /= len;
        const double b = nrm.dot(pts[i]);
        bool above = false;
        bool below = false;
        for (const Vec& p : pts) {
          const double s = nrm.dot(p) - b;
          if (s > eps) above = true;
          if (s < -eps) below = true;
          if (above && below) break;
        }
        if (above && below) continue;
        if (above) nrm = -nrm;
        const double off = nrm.dot(pts[i]);
        const bool seen = std::any_of(planes.begin(), planes.end(), [&](const Facet& f) {
          return (f.normal - nrm).norm() < 1e-9 && std::abs(f.offset - off) <= eps;
        });
        if (!seen) planes.push_back({nrm, off, {}});
      }
    }
  }
  std::vector<int> used(N, -1);
  Hull3D hull;
  for (Facet& f : planes) {
    std::vector<int> on;
    for (std::size_t i = 0; i < N; ++i) {
      if (std::abs(f.normal.dot(pts[i]) - f.offset) <= eps) on.push_back(static_cast<int>(i));
    }
    Vec centroid = Vec::Zero();
    for (int i : on) centroid += pts[i];
    centroid /= static_cast<double>(on.size());
    Vec e1, e2;
    frame_from_axis(f.normal, e1, e2);
    std::vector<std::pair<double, int>> ang;
    for (int i : on) {
      const Vec d = pts[i] - centroid;
      ang.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), i);
    }
    std::sort(ang.begin(), ang.end());
    // Drop points that are not corners of the facet polygon.
    std::vector<int> ring;
    for (auto& [a, i] : ang) ring.push_back(i);
    bool changed = true;
    while (changed && ring.size() > 3) {
      changed = false;
      for (std::size_t r = 0; r < ring.size(); ++r) {
        const Vec& prev = pts[ring[(r + ring.size() - 1) % ring.size()]];
        const Vec& cur = pts[ring[r]];
        const Vec& next = pts[ring[(r + 1) % ring.size()]];
        if ((cur - prev).cross(next - cur).dot(f.normal) <= eps * diam) {
          ring.erase(ring.begin() + static_cast<long>(r));
          changed = true;
          break;
        }
      }
    }
    for (int& i : ring) {
      if (used[i] < 0) {
        used[i] = static_cast<int>(hull.vertices.size());
        hull.vertices.push_back(pts[i]);
      }
      i = used[i];
    }
    f.ring = ring;
    hull.facets.push_back(f);
  }
  return hull;
}

double polygon_area_3d(const std::vector<Vec>& v, const std::vector<int>& ring, const Vec& normal) {
  Vec acc = Vec::Zero();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    acc += v[ring[i]].cross(v[ring[(i + 1) % ring.size()]]);
  }
  return 0.5 * std::abs(acc.dot(normal));
}

Vec fourier_point(const RadialFourier2D& f, double t) {
  const double r = f.value(t);
  return Vec(r * std::cos(t), r * std::sin(t), 0.0);
}

BoundaryPoint fourier_node(const RadialFourier2D& f, double t, double w) {
  const double r = f.value(t);
  const double dr = f.derivative(t);
  const double ddr = f.second_derivative(t);
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Vec tangent(dr * c - r * s, dr * s + r * c, 0.0);
  const double speed = tangent.norm();
  BoundaryPoint bp;
  bp.x = Vec(r * c, r * s, 0.0);
  bp.normal = Vec(tangent.y(), -tangent.x(), 0.0) / speed;
  bp.curvature = std::max(0.0, (r * r + 2.0 * dr * dr - r * ddr) / (speed * speed * speed));
  bp.weight = w * speed;
  return bp;
}

void fourier_arc(const RadialFourier2D& f, double t0, double t1, int res, std::vector<BoundaryPoint>& out) {
  const GaussRule& rule = gauss_legendre(kOrder);
  const int panels = panels_for(res);
  const double h = (t1 - t0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = t0 + (p + 0.5) * h;
    for (int i = 0; i < kOrder; ++i) {
      out.push_back(fourier_node(f, mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]));
    }
  }
}

double fourier_gap(const RadialFourier2D& f, const Vec& z, double t) {
  const BoundaryPoint bp = fourier_node(f, t, 1.0);
  return (z - bp.x).dot(bp.normal);
}

// Tangency parameter on one side of t_r where the gap changes sign.
double fourier_tangency(const RadialFourier2D& f, const Vec& z, double t_r, double dir) {
  double lo = 0.0;
  double hi = 1e-7;
  while (fourier_gap(f, z, t_r + dir * hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 2.0 * kPi) throw Error(ErrorCode::NumericalFailure, "no tangency point found");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fourier_gap(f, z, t_r + dir * mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return t_r + dir * 0.5 * (lo + hi);
}

void check_dim(int dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::UnsupportedDimension, "dimension must be 2 or 3");
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialFourier2D

double RadialFourier2D::value(double t) const {
  double r = a0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double kt = (k + 1.0) * t;
    r += a[k] * std::cos(kt) + b[k] * std::sin(kt);
  }
  return r;
}

double RadialFourier2D::derivative(double t) const {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double m = k + 1.0;
    r += m * (-a[k] * std::sin(m * t) + b[k] * std::cos(m * t));
  }
  return r;
}

double RadialFourier2D::second_derivative(double t) const {
  double r = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double m = k + 1.0;
    r -= m * m * (a[k] * std::cos(m * t) + b[k] * std::sin(m * t));
  }
  return r;
}

// ---------------------------------------------------------------------------
// DirectionGrid

DirectionGrid DirectionGrid::uniform_angle(int count) {
  if (count < 3) throw Error(ErrorCode::InvalidParameter, "direction grid needs at least 3 angles");
  DirectionGrid g;
  g.scheme_ = GridScheme::UniformAngle;
  const double h = 2.0 * kPi / count;
  for (int i = 0; i < count; ++i) {
    g.units_.emplace_back(std::cos(i * h), std::sin(i * h), 0.0);
    g.weights_.push_back(h);
  }
  g.mesh_width_ = h;
  return g;
}

DirectionGrid DirectionGrid::icosphere(int levels) {
  if (levels < 0 || levels > 7) throw Error(ErrorCode::InvalidParameter, "icosphere level must be in [0, 7]");
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec> v = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                        {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec& p : v) p.normalize();
  std::vector<std::array<int, 3>> tri = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < levels; ++l) {
    std::map<std::pair<int, int>, int> mids;
    auto midpoint = [&](int i, int j) {
      const auto key = std::minmax(i, j);
      auto it = mids.find(key);
      if (it != mids.end()) return it->second;
      v.push_back((v[i] + v[j]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      mids.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(tri.size() * 4);
    for (const auto& t : tri) {
      const int ab = midpoint(t[0], t[1]);
      const int bc = midpoint(t[1], t[2]);
      const int ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tri = std::move(next);
  }
  DirectionGrid g;
  g.scheme_ = GridScheme::Icosphere;
  g.units_ = v;
  g.weights_.assign(v.size(), 0.0);
  g.vertex_triangles_.assign(v.size(), {});
  for (std::size_t k = 0; k < tri.size(); ++k) {
    const Vec& A = v[tri[k][0]];
    const Vec& B = v[tri[k][1]];
    const Vec& C = v[tri[k][2]];
    const double excess =
        2.0 * std::atan2(std::abs(A.dot(B.cross(C))), 1.0 + A.dot(B) + B.dot(C) + C.dot(A));
    for (int i : tri[k]) {
      g.weights_[i] += excess / 3.0;
      g.vertex_triangles_[i].push_back(static_cast<int>(k));
    }
    for (int e = 0; e < 3; ++e) {
      const double ang = std::acos(std::clamp(v[tri[k][e]].dot(v[tri[k][(e + 1) % 3]]), -1.0, 1.0));
      g.mesh_width_ = std::max(g.mesh_width_, ang);
    }
  }
  g.triangles_ = std::move(tri);
  return g;
}

double DirectionGrid::interpolate(const std::vector<double>& values, const Vec& u) const {
  if (values.size() != units_.size()) throw Error(ErrorCode::InvalidParameter, "value count does not match grid");
  if (scheme_ == GridScheme::UniformAngle) {
    const double m = static_cast<double>(units_.size());
    const double pos = wrap_angle(std::atan2(u.y(), u.x())) / (2.0 * kPi) * m;
    const std::size_t i = static_cast<std::size_t>(std::floor(pos)) % units_.size();
    const double f = pos - std::floor(pos);
    return (1.0 - f) * values[i] + f * values[(i + 1) % units_.size()];
  }
  const auto [k, lam] = locate(u);
  const auto& t = triangles_[k];
  return lam(0) * values[t[0]] + lam(1) * values[t[1]] + lam(2) * values[t[2]];
}

std::pair<int, Vec> DirectionGrid::locate(const Vec& u) const {
  if (scheme_ != GridScheme::Icosphere) throw Error(ErrorCode::UnsupportedDimension, "locate needs an icosphere grid");
  const Vec d = u.normalized();
  auto barycentric = [&](int k, Vec& lam) {
    const auto& t = triangles_[k];
    Mat M;
    M.col(0) = units_[t[0]];
    M.col(1) = units_[t[1]];
    M.col(2) = units_[t[2]];
    lam = M.partialPivLu().solve(d);
    if (lam.minCoeff() < -1e-12) return false;
    lam /= lam.sum();
    return true;
  };
  std::size_t nearest = 0;
  double best = -2.0;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const double c = units_[i].dot(d);
    if (c > best) {
      best = c;
      nearest = i;
    }
  }
  Vec lam;
  for (int k : vertex_triangles_[nearest]) {
    if (barycentric(k, lam)) return {k, lam};
  }
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    if (barycentric(static_cast<int>(k), lam)) return {static_cast<int>(k), lam};
  }
  throw Error(ErrorCode::NumericalFailure, "direction not covered by the icosphere");
}

// ---------------------------------------------------------------------------
// Body construction

Body::Body(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}

Body Body::ball(int dim, const Vec& center, double radius) {
  check_dim(dim);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidParameter, "ball radius must be positive");
  if (dim == 2 && center.z() != 0.0) throw Error(ErrorCode::InvalidParameter, "planar center must have z = 0");
  Body b(dim, Ball{center, radius});
  b.finish();
  return b;
}

Body Body::ellipsoid(int dim, const Vec& center, const Vec& semi_axes, const Mat& rotation) {
  check_dim(dim);
  for (int i = 0; i < dim; ++i) {
    if (!(semi_axes(i) > 0.0)) throw Error(ErrorCode::InvalidParameter, "semi-axes must be positive");
  }
  if (dim == 2 && center.z() != 0.0) throw Error(ErrorCode::InvalidParameter, "planar center must have z = 0");
  if ((rotation.transpose() * rotation - Mat::Identity()).norm() > 1e-9) {
    throw Error(ErrorCode::InvalidParameter, "rotation must be orthogonal");
  }
  Mat R = rotation;
  Vec a = semi_axes;
  if (dim == 2) {
    if (std::abs(R(2, 2) - 1.0) > 1e-9 || std::abs(R(0, 2)) > 1e-9 || std::abs(R(1, 2)) > 1e-9) {
      throw Error(ErrorCode::InvalidParameter, "planar rotation must fix the z axis");
    }
    a(2) = 0.0;
  }
  if (R.determinant() < 0.0) R.col(0) = -R.col(0);
  Body b(dim, Ellipsoid{center, a, R});
  b.finish();
  return b;
}

Body Body::polytope(int dim, std::vector<Vec> vertices) {
  check_dim(dim);
  if (vertices.size() < static_cast<std::size_t>(dim + 1)) {
    throw Error(ErrorCode::InvalidParameter, "polytope needs at least n+1 vertices");
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (dim == 2) vertices[i].z() = 0.0;
    for (std::size_t j = 0; j < i; ++j) diam = std::max(diam, (vertices[i] - vertices[j]).norm());
  }
  if (!(diam > 0.0)) throw Error(ErrorCode::InvalidParameter, "polytope is degenerate");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((vertices[i] - vertices[j]).norm() <= 1e-12 * diam) {
        throw Error(ErrorCode::InvalidParameter, "duplicate polytope vertex");
      }
    }
  }
  const double eps = 1e-10 * diam;
  Polytope poly;
  std::vector<Facet> facets;
  if (dim == 2) {
    poly.vertices = hull_2d(vertices, eps * diam).vertices;
    if (poly.vertices.size() < 3) throw Error(ErrorCode::InvalidParameter, "polygon is not full-dimensional");
    const std::size_t m = poly.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec& p = poly.vertices[i];
      const Vec& q = poly.vertices[(i + 1) % m];
      const Vec nrm = Vec(q.y() - p.y(), p.x() - q.x(), 0.0).normalized();
      facets.push_back({nrm, nrm.dot(p), {static_cast<int>(i), static_cast<int>((i + 1) % m)}});
    }
  } else {
    Hull3D h = hull_3d(vertices, diam);
    if (h.facets.size() < 4) throw Error(ErrorCode::InvalidParameter, "polytope is not full-dimensional");
    poly.vertices = std::move(h.vertices);
    facets = std::move(h.facets);
  }
  Body b(dim, std::move(poly));
  b.facets_ = std::move(facets);
  b.finish();
  if (!(b.volume() > 0.0)) throw Error(ErrorCode::InvalidParameter, "polytope is not full-dimensional");
  return b;
}

Body Body::radial_fourier(double a0, std::vector<double> a, std::vector<double> b, int grid) {
  if (!(a0 > 0.0)) throw Error(ErrorCode::InvalidParameter, "a0 must be positive");
  if (grid < 8) throw Error(ErrorCode::InvalidParameter, "validation grid too coarse");
  const std::size_t K = std::max(a.size(), b.size());
  a.resize(K, 0.0);
  b.resize(K, 0.0);
  RadialFourier2D f{a0, std::move(a), std::move(b)};
  const int checks = 4 * grid;
  for (int i = 0; i < checks; ++i) {
    const double t = 2.0 * kPi * i / checks;
    const double r = f.value(t);
    const double dr = f.derivative(t);
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidParameter, "radial function must be positive");
    if (r * r + 2.0 * dr * dr - r * f.second_derivative(t) < -1e-10 * r * r) {
      throw Error(ErrorCode::InvalidParameter, "radial Fourier curve is not convex");
    }
  }
  Body body(2, std::move(f));
  body.finish();
  return body;
}

void Body::finish() {
  if (const auto* b = std::get_if<Ball>(&shape_)) {
    diameter_ = 2.0 * b->radius;
    max_radius_ = b->center.norm() + b->radius;
  } else if (const auto* e = std::get_if<Ellipsoid>(&shape_)) {
    diameter_ = 2.0 * e->semi_axes.head(dim_).maxCoeff();
    max_radius_ = e->center.norm() + 0.5 * diameter_;
  } else if (const auto* p = std::get_if<Polytope>(&shape_)) {
    for (std::size_t i = 0; i < p->vertices.size(); ++i) {
      max_radius_ = std::max(max_radius_, p->vertices[i].norm());
      for (std::size_t j = 0; j < i; ++j) diameter_ = std::max(diameter_, (p->vertices[i] - p->vertices[j]).norm());
    }
  } else {
    const auto& f = std::get<RadialFourier2D>(shape_);
    double bound = f.a0;
    for (std::size_t k = 0; k < f.a.size(); ++k) bound += std::abs(f.a[k]) + std::abs(f.b[k]);
    max_radius_ = bound;
    std::vector<Vec> pts;
    for (int i = 0; i < 720; ++i) pts.push_back(fourier_point(f, 2.0 * kPi * i / 720));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) diameter_ = std::max(diameter_, (pts[i] - pts[j]).norm());
    }
  }
}

std::string Body::kind() const {
  switch (shape_.index()) {
    case 0: return "ball";
    case 1: return "ellipsoid";
    case 2: return "polytope";
    default: return "radial_fourier_2d";
  }
}

// ---------------------------------------------------------------------------
// Queries

bool Body::contains(const Vec& x) const {
  const double slack = 1e-12;
  if (const auto* b = std::get_if<Ball>(&shape_)) return (x - b->center).norm() <= b->radius * (1.0 + slack);
  if (std::holds_alternative<Ellipsoid>(shape_)) {
    return quadric_of(shape_, dim_).local(x).head(dim_).norm() <= 1.0 + slack;
  }
  if (std::holds_alternative<Polytope>(shape_)) {
    for (const Facet& f : facets_) {
      if (f.normal.dot(x) - f.offset > slack * diameter_) return false;
    }
    return true;
  }
  const auto& f = std::get<RadialFourier2D>(shape_);
  return x.head(2).norm() <= f.value(std::atan2(x.y(), x.x())) * (1.0 + slack);
}

bool Body::contains_strict(const Vec& x) const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return (x - b->center).norm() < b->radius;
  if (std::holds_alternative<Ellipsoid>(shape_)) return quadric_of(shape_, dim_).local(x).head(dim_).norm() < 1.0;
  if (std::holds_alternative<Polytope>(shape_)) {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.normal.dot(x) < f.offset; });
  }
  const auto& f = std::get<RadialFourier2D>(shape_);
  return x.head(2).norm() < f.value(std::atan2(x.y(), x.x()));
}

double Body::support(const Vec& u) const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->center.dot(u) + b->radius * u.norm();
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) {
    return e->center.dot(u) + (e->semi_axes.asDiagonal() * (e->rotation.transpose() * u)).norm();
  }
  if (const auto* p = std::get_if<Polytope>(&shape_)) {
    double h = -std::numeric_limits<double>::infinity();
    for (const Vec& v : p->vertices) h = std::max(h, v.dot(u));
    return h;
  }
  const auto& f = std::get<RadialFourier2D>(shape_);
  const int m = 1024;
  double best = -std::numeric_limits<double>::infinity();
  double t_best = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * kPi * i / m;
    const double h = fourier_point(f, t).dot(u);
    if (h > best) {
      best = h;
      t_best = t;
    }
  }
  // Golden-section refinement of the bracket around the best sample.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = t_best - 2.0 * kPi / m;
  double hi = t_best + 2.0 * kPi / m;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = fourier_point(f, x1).dot(u);
  double f2 = fourier_point(f, x2).dot(u);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = fourier_point(f, x2).dot(u);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = fourier_point(f, x1).dot(u);
    }
  }
  return std::max({best, f1, f2});
}

bool Body::origin_interior() const {
  const double margin = 1e-9 * diameter_;
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->center.norm() < b->radius - margin;
  if (std::holds_alternative<Ellipsoid>(shape_)) {
    const auto& e = std::get<Ellipsoid>(shape_);
    return quadric_of(shape_, dim_).local(Vec::Zero()).head(dim_).norm() <
           1.0 - margin / e.semi_axes.head(dim_).minCoeff();
  }
  if (std::holds_alternative<Polytope>(shape_)) {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.offset > margin; });
  }
  return true;
}

double Body::radial(const Vec& u) const {
  if (!origin_interior()) throw Error(ErrorCode::OriginNotInterior, "radial function needs o in int K");
  if (const auto* f = std::get_if<RadialFourier2D>(&shape_)) return f->value(std::atan2(u.y(), u.x())) / u.norm();
  if (std::holds_alternative<Polytope>(shape_)) {
    double r = std::numeric_limits<double>::infinity();
    for (const Facet& f : facets_) {
      const double c = f.normal.dot(u);
      if (c > 0.0) r = std::min(r, f.offset / c);
    }
    return r;
  }
  return chord(Vec::Zero(), u)->t_out;
}

std::optional<Chord> Body::chord(const Vec& p, const Vec& d) const {
  if (std::holds_alternative<Ball>(shape_) || std::holds_alternative<Ellipsoid>(shape_)) {
    const Quadric q = quadric_of(shape_, dim_);
    Vec lp = q.local(p);
    Vec ld = q.a.cwiseInverse().asDiagonal() * (q.R.transpose() * d);
    if (dim_ == 2) {
      lp.z() = 0.0;
      ld.z() = 0.0;
    }
    return unit_sphere_chord(lp, ld);
  }
  if (std::holds_alternative<Polytope>(shape_)) {
    double t_in = -std::numeric_limits<double>::infinity();
    double t_out = std::numeric_limits<double>::infinity();
    for (const Facet& f : facets_) {
      const double nd = f.normal.dot(d);
      const double gap = f.offset - f.normal.dot(p);
      if (std::abs(nd) < 1e-300) {
        if (gap < 0.0) return std::nullopt;
        continue;
      }
      const double t = gap / nd;
      if (nd > 0.0) {
        t_out = std::min(t_out, t);
      } else {
        t_in = std::max(t_in, t);
      }
    }
    if (t_in > t_out) return std::nullopt;
    return Chord{t_in, t_out};
  }
  // Star body: minimize the (convex) gauge along the line, then bisect outwards.
  const auto& f = std::get<RadialFourier2D>(shape_);
  const double dn = d.norm();
  if (dn == 0.0) return std::nullopt;
  auto gauge = [&](double t) {
    const Vec x = p + t * d;
    const double r = x.head(2).norm();
    return r == 0.0 ? 0.0 : r / f.value(std::atan2(x.y(), x.x()));
  };
  const double t_mid = -p.dot(d) / (dn * dn);
  const double span = (max_radius_ + p.norm()) / dn;
  double lo = t_mid - span;
  double hi = t_mid + span;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = gauge(x1);
  double f2 = gauge(x2);
  for (int it = 0; it < 120; ++it) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = gauge(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = gauge(x1);
    }
  }
  const double t_in_body = f1 < f2 ? x1 : x2;
  if (std::min(f1, f2) > 1.0) return std::nullopt;
  auto edge = [&](double inside, double outside) {
    for (int it = 0; it < 200 && std::abs(outside - inside) > 1e-15 * (1.0 + std::abs(inside)); ++it) {
      const double mid = 0.5 * (inside + outside);
      if (gauge(mid) <= 1.0) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return 0.5 * (inside + outside);
  };
  return Chord{edge(t_in_body, t_mid - span), edge(t_in_body, t_mid + span)};
}

// ---------------------------------------------------------------------------
// Boundary sampling

std::vector<BoundaryPoint> Body::sample_boundary(int resolution) const {
  if (resolution < 1) throw Error(ErrorCode::InvalidParameter, "resolution must be positive");
  std::vector<BoundaryPoint> out;
  if (std::holds_alternative<Ball>(shape_) || std::holds_alternative<Ellipsoid>(shape_)) {
    const Quadric q = quadric_of(shape_, dim_);
    if (dim_ == 2) {
      q.arc(0.0, 2.0 * kPi, resolution, out);
    } else {
      q.zone(Vec::UnitZ(), -1.0, 1.0, resolution, out);
    }
    return out;
  }
  if (const auto* f = std::get_if<RadialFourier2D>(&shape_)) {
    fourier_arc(*f, 0.0, 2.0 * kPi, resolution, out);
    return out;
  }
  const auto& poly = std::get<Polytope>(shape_);
  if (dim_ == 2) {
    double perimeter = 0.0;
    for (const Facet& f : facets_) perimeter += (poly.vertices[f.ring[1]] - poly.vertices[f.ring[0]]).norm();
    for (const Facet& f : facets_) {
      const Vec& p = poly.vertices[f.ring[0]];
      const Vec& q = poly.vertices[f.ring[1]];
      const double len = (q - p).norm();
      const int nodes = std::max(kOrder, static_cast<int>(std::ceil(resolution * len / perimeter)));
      const int panels = panels_for(nodes);
      const GaussRule& rule = gauss_legendre(kOrder);
      for (int k = 0; k < panels; ++k) {
        for (int i = 0; i < kOrder; ++i) {
          const double s = (k + 0.5 * (1.0 + rule.nodes[i])) / panels;
          out.push_back({p + s * (q - p), f.normal, 0.0, 0.5 * rule.weights[i] * len / panels});
        }
      }
    }
    return out;
  }
  double total = 0.0;
  for (const Facet& f : facets_) total += polygon_area_3d(poly.vertices, f.ring, f.normal);
  for (const Facet& f : facets_) {
    const Vec& A = poly.vertices[f.ring[0]];
    for (std::size_t r = 1; r + 1 < f.ring.size(); ++r) {
      const Vec& B = poly.vertices[f.ring[r]];
      const Vec& C = poly.vertices[f.ring[r + 1]];
      const double area = 0.5 * (B - A).cross(C - A).norm();
      const int m = std::clamp(static_cast<int>(std::ceil(resolution * std::sqrt(area / total))), 2, 64);
      const GaussRule& rule = gauss_legendre(m);
      for (int i = 0; i < m; ++i) {
        const double s = 0.5 * (1.0 + rule.nodes[i]);
        for (int j = 0; j < m; ++j) {
          const double t = 0.5 * (1.0 + rule.nodes[j]);
          const Vec x = A + s * (B - A) + s * t * (C - B);
          const double w = 0.25 * rule.weights[i] * rule.weights[j] * s * 2.0 * area;
          out.push_back({x, f.normal, 0.0, w});
        }
      }
    }
  }
  return out;
}

std::vector<BoundaryPoint> Body::sample_side(const Vec& z, Side side, int resolution) const {
  if (contains(z)) {
    return side == Side::Front ? std::vector<BoundaryPoint>{} : sample_boundary(resolution);
  }
  std::vector<BoundaryPoint> out;
  if (std::holds_alternative<Ball>(shape_) || std::holds_alternative<Ellipsoid>(shape_)) {
    const Quadric q = quadric_of(shape_, dim_);
    Vec w = q.local(z);
    if (dim_ == 2) w.z() = 0.0;
    const double r = w.norm();
    if (dim_ == 2) {
      const double tw = std::atan2(w.y(), w.x());
      const double beta = std::acos(std::clamp(1.0 / r, -1.0, 1.0));
      if (side == Side::Front) {
        q.arc(tw - beta, tw + beta, resolution, out);
      } else {
        q.arc(tw + beta, tw + 2.0 * kPi - beta, resolution, out);
      }
    } else {
      const Vec axis = w / r;
      if (side == Side::Front) {
        q.zone(axis, 1.0 / r, 1.0, resolution, out);
      } else {
        q.zone(axis, -1.0, 1.0 / r, resolution, out);
      }
    }
    return out;
  }
  if (const auto* f = std::get_if<RadialFourier2D>(&shape_)) {
    const double t_r = std::atan2(z.y(), z.x());
    const double t_hi = fourier_tangency(*f, z, t_r, 1.0);
    const double t_lo = fourier_tangency(*f, z, t_r, -1.0);
    if (side == Side::Front) {
      fourier_arc(*f, t_lo, t_hi, resolution, out);
    } else {
      fourier_arc(*f, t_hi, t_lo + 2.0 * kPi, resolution, out);
    }
    return out;
  }
  for (const BoundaryPoint& bp : sample_boundary(resolution)) {
    const bool front = (z - bp.x).dot(bp.normal) > 0.0;
    if (front == (side == Side::Front)) out.push_back(bp);
  }
  return out;
}

std::optional<double> Body::gauss_kronecker(const Vec& x) const {
  const double tol = std::max(tolerance(), 1e-12);
  if (std::holds_alternative<Ball>(shape_) || std::holds_alternative<Ellipsoid>(shape_)) {
    const Quadric q = quadric_of(shape_, dim_);
    Vec u = q.local(x);
    if (dim_ == 2) u.z() = 0.0;
    const double len = u.norm();
    if (std::abs(len - 1.0) * q.a.head(dim_).minCoeff() > tol) {
      throw Error(ErrorCode::NotOnBoundary, "point is not on the boundary");
    }
    return q.node(u / len, 1.0).curvature;
  }
  if (const auto* f = std::get_if<RadialFourier2D>(&shape_)) {
    const double t = std::atan2(x.y(), x.x());
    if (std::abs(x.head(2).norm() - f->value(t)) > tol) throw Error(ErrorCode::NotOnBoundary, "point is not on the boundary");
    return fourier_node(*f, t, 1.0).curvature;
  }
  int touching = 0;
  for (const Facet& f : facets_) {
    const double s = f.normal.dot(x) - f.offset;
    if (s > tol) throw Error(ErrorCode::NotOnBoundary, "point is outside the polytope");
    if (s >= -tol) ++touching;
  }
  if (touching == 0) throw Error(ErrorCode::NotOnBoundary, "point is interior");
  if (touching > 1) return std::nullopt;
  return 0.0;
}

double Body::volume() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return unit_ball_volume(dim_) * std::pow(b->radius, dim_);
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return unit_ball_volume(dim_) * e->semi_axes.head(dim_).prod();
  if (const auto* p = std::get_if<Polytope>(&shape_)) {
    double v = 0.0;
    if (dim_ == 2) {
      for (std::size_t i = 0; i < p->vertices.size(); ++i) {
        const Vec& a = p->vertices[i];
        const Vec& b = p->vertices[(i + 1) % p->vertices.size()];
        v += a.x() * b.y() - a.y() * b.x();
      }
      return 0.5 * v;
    }
    const Vec c = interior_point();
    for (const Facet& f : facets_) {
      v += (f.offset - f.normal.dot(c)) * polygon_area_3d(p->vertices, f.ring, f.normal) / 3.0;
    }
    return v;
  }
  const auto& f = std::get<RadialFourier2D>(shape_);
  double s = 2.0 * f.a0 * f.a0;
  for (std::size_t k = 0; k < f.a.size(); ++k) s += f.a[k] * f.a[k] + f.b[k] * f.b[k];
  return 0.5 * kPi * s;
}

double Body::surface_area() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) {
    return dim_ == 2 ? 2.0 * kPi * b->radius : 4.0 * kPi * b->radius * b->radius;
  }
  CompensatedSum sum;
  for (const BoundaryPoint& bp : sample_boundary(dim_ == 2 ? 2048 : 128)) sum += bp.weight;
  return sum.value();
}

Vec Body::interior_point() const {
  if (const auto* b = std::get_if<Ball>(&shape_)) return b->center;
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return e->center;
  if (const auto* p = std::get_if<Polytope>(&shape_)) {
    Vec c = Vec::Zero();
    for (const Vec& v : p->vertices) c += v;
    return c / static_cast<double>(p->vertices.size());
  }
  return Vec::Zero();
}

std::pair<Vec, Vec> Body::bounding_box() const {
  Vec lo;
  Vec hi;
  if (const auto* b = std::get_if<Ball>(&shape_)) {
    lo = b->center - Vec::Constant(b->radius);
    hi = b->center + Vec::Constant(b->radius);
  } else if (const auto* e = std::get_if<Ellipsoid>(&shape_)) {
    const Mat A = e->rotation * e->semi_axes.asDiagonal();
    const Vec half = A.rowwise().norm();
    lo = e->center - half;
    hi = e->center + half;
  } else if (const auto* p = std::get_if<Polytope>(&shape_)) {
    lo = hi = p->vertices.front();
    for (const Vec& v : p->vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  } else {
    lo = Vec::Constant(-max_radius_);
    hi = Vec::Constant(max_radius_);
  }
  if (dim_ == 2) lo.z() = hi.z() = 0.0;
  return {lo, hi};
}

Body Body::translated(const Vec& shift) const {
  if (dim_ == 2 && shift.z() != 0.0) throw Error(ErrorCode::InvalidParameter, "planar shift must have z = 0");
  if (const auto* b = std::get_if<Ball>(&shape_)) return ball(dim_, b->center + shift, b->radius);
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return ellipsoid(dim_, e->center + shift, e->semi_axes, e->rotation);
  if (const auto* p = std::get_if<Polytope>(&shape_)) {
    std::vector<Vec> v = p->vertices;
    for (Vec& x : v) x += shift;
    return polytope(dim_, v);
  }
  throw Error(ErrorCode::UnsupportedBody, "radial Fourier bodies are defined about the origin");
}

Body Body::linear_image(const Mat& map) const {
  Mat M = map;
  if (dim_ == 2) {
    M.row(2).setZero();
    M.col(2).setZero();
    M(2, 2) = 1.0;
  }
  if (std::abs(M.determinant()) < 1e-14) throw Error(ErrorCode::InvalidParameter, "linear map is singular");
  if (std::holds_alternative<Ball>(shape_) || std::holds_alternative<Ellipsoid>(shape_)) {
    const Quadric q = quadric_of(shape_, dim_);
    const Mat A = M * q.R * q.a.asDiagonal();
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU);
    Mat U = svd.matrixU();
    Vec s = svd.singularValues();
    if (dim_ == 2) {
      // Keep the z axis fixed: sort the planar block separately.
      Eigen::JacobiSVD<Eigen::Matrix2d> svd2(A.topLeftCorner<2, 2>(), Eigen::ComputeFullU);
      U = Mat::Identity();
      U.topLeftCorner<2, 2>() = svd2.matrixU();
      s = Vec(svd2.singularValues()(0), svd2.singularValues()(1), 0.0);
    }
    return ellipsoid(dim_, M * q.c, s, U);
  }
  if (const auto* p = std::get_if<Polytope>(&shape_)) {
    std::vector<Vec> v = p->vertices;
    for (Vec& x : v) x = M * x;
    return polytope(dim_, v);
  }
  throw Error(ErrorCode::UnsupportedBody, "linear images of radial Fourier bodies are not supported");
}

}  // namespace illume
