#pragma once

// Smooth closed planar boundary curves, their differential geometry,
// periodic arclength quadrature, and interior point classification.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

using Eigen::Vector2d;
using Eigen::VectorXd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class CurveKind { Disk, Ellipse, Kite, Star };

struct GeometrySample {
  Vector2d point;
  Vector2d normal;   // unit, outward
  double speed;      // |x'(t)|
  double curvature;  // signed; +1 on the unit circle
};

// Closed simple C-infinity curve, parameterized counterclockwise over [0, 2pi).
class BoundaryCurve {
 public:
  static BoundaryCurve disk() { return BoundaryCurve(CurveKind::Disk, 1, 1, 0, 0); }

  static BoundaryCurve ellipse(double a, double b) {
    if (!(a > 0) || !(b > 0)) throw std::invalid_argument("ellipse axes must be positive");
    return BoundaryCurve(CurveKind::Ellipse, a, b, 0, 0);
  }

  static BoundaryCurve kite() { return BoundaryCurve(CurveKind::Kite, 0, 0, 0, 0); }

  static BoundaryCurve star(double eps, int m) {
    if (m < 2) throw std::invalid_argument("star frequency m must be >= 2");
    if (!(eps > 0) || !(eps * m * m < 1.0))
      throw std::invalid_argument("star amplitude must satisfy 0 < eps < 1/m^2");
    return BoundaryCurve(CurveKind::Star, 0, 0, eps, m);
  }

  // Descriptor strings: "disk", "ellipse:a,b", "kite", "star:eps,m".
  static BoundaryCurve from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "disk") return disk();
    if (head == "kite") return kite();
    if (head == "ellipse") {
      auto comma = args.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("ellipse needs a,b");
      return ellipse(std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1)));
    }
    if (head == "star") {
      auto comma = args.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("star needs eps,m");
      return star(std::stod(args.substr(0, comma)), std::stoi(args.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown domain descriptor: " + spec);
  }

  CurveKind kind() const { return kind_; }

  Vector2d point(double t) const {
    switch (kind_) {
      case CurveKind::Disk: return {std::cos(t), std::sin(t)};
      case CurveKind::Ellipse: return {a_ * std::cos(t), b_ * std::sin(t)};
      case CurveKind::Kite:
        return {std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t)};
      case CurveKind::Star: {
        double r = 1 + eps_ * std::cos(m_ * t);
        return {r * std::cos(t), r * std::sin(t)};
      }
    }
    return {0, 0};
  }

  Vector2d velocity(double t) const {
    switch (kind_) {
      case CurveKind::Disk: return {-std::sin(t), std::cos(t)};
      case CurveKind::Ellipse: return {-a_ * std::sin(t), b_ * std::cos(t)};
      case CurveKind::Kite:
        return {-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t)};
      case CurveKind::Star: {
        double r = 1 + eps_ * std::cos(m_ * t);
        double dr = -eps_ * m_ * std::sin(m_ * t);
        return {dr * std::cos(t) - r * std::sin(t), dr * std::sin(t) + r * std::cos(t)};
      }
    }
    return {0, 0};
  }

  Vector2d acceleration(double t) const {
    switch (kind_) {
      case CurveKind::Disk: return {-std::cos(t), -std::sin(t)};
      case CurveKind::Ellipse: return {-a_ * std::cos(t), -b_ * std::sin(t)};
      case CurveKind::Kite:
        return {-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t)};
      case CurveKind::Star: {
        double r = 1 + eps_ * std::cos(m_ * t);
        double dr = -eps_ * m_ * std::sin(m_ * t);
        double ddr = -eps_ * m_ * m_ * std::cos(m_ * t);
        return {(ddr - r) * std::cos(t) - 2 * dr * std::sin(t),
                (ddr - r) * std::sin(t) + 2 * dr * std::cos(t)};
      }
    }
    return {0, 0};
  }

  double speed(double t) const { return velocity(t).norm(); }

  // Outward unit normal of the counterclockwise parameterization.
  Vector2d normal(double t) const {
    Vector2d v = velocity(t);
    return Vector2d(v.y(), -v.x()) / v.norm();
  }

  double curvature(double t) const {
    Vector2d v = velocity(t), a = acceleration(t);
    double sp = v.norm();
    return (v.x() * a.y() - v.y() * a.x()) / (sp * sp * sp);
  }

  GeometrySample at(double t) const {
    return {point(t), normal(t), speed(t), curvature(t)};
  }

  // Diameter of the enclosed region, estimated from a dense boundary sample.
  double diameter() const {
    const int n = 512;
    double d2 = 0;
    std::vector<Vector2d> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = point(two_pi * i / n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
    return std::sqrt(d2);
  }

 private:
  BoundaryCurve(CurveKind k, double a, double b, double eps, int m)
      : kind_(k), a_(a), b_(b), eps_(eps), m_(m) {}

  CurveKind kind_;
  double a_, b_;
  double eps_;
  int m_;
};

inline BoundaryCurve curve_from_spec(const std::string& spec) {
  return BoundaryCurve::from_spec(spec);
}

// Periodic trapezoid nodes with arclength weights w_j = speed(t_j) * 2pi/N.
struct QuadratureGrid {
  int n = 0;
  VectorXd t, w, speed, curvature;
  Eigen::Matrix<double, Eigen::Dynamic, 2> points, normals;

  double arclength() const { return w.sum(); }
};

inline QuadratureGrid build_quadrature(const BoundaryCurve& curve, int n) {
  if (n < 16 || n % 2 != 0) throw std::invalid_argument("quadrature size must be even and >= 16");
  QuadratureGrid g;
  g.n = n;
  g.t.resize(n);
  g.w.resize(n);
  g.speed.resize(n);
  g.curvature.resize(n);
  g.points.resize(n, 2);
  g.normals.resize(n, 2);
  for (int j = 0; j < n; ++j) {
    double t = two_pi * j / n;
    GeometrySample s = curve.at(t);
    g.t[j] = t;
    g.speed[j] = s.speed;
    g.w[j] = s.speed * two_pi / n;
    g.curvature[j] = s.curvature;
    g.points.row(j) = s.point.transpose();
    g.normals.row(j) = s.normal.transpose();
  }
  return g;
}

enum class PointClass { Inside, Outside, Collar };

// Winding number of the curve around p, by summing signed angle increments
// over a dense polygonal sample. Exact (0 or 1) away from the boundary.
inline int winding_number(const BoundaryCurve& curve, const Vector2d& p, int samples = 2048) {
  double total = 0;
  Vector2d prev = curve.point(0) - p;
  for (int i = 1; i <= samples; ++i) {
    Vector2d cur = curve.point(two_pi * i / samples) - p;
    total += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / two_pi));
}

// Distance from p to the curve: dense parameter sampling plus Newton
// refinement of <x(t) - p, x'(t)> = 0.
inline double boundary_distance(const BoundaryCurve& curve, const Vector2d& p,
                                int samples = 1024) {
  double best_t = 0, best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double t = two_pi * i / samples;
    double d2 = (curve.point(t) - p).squaredNorm();
    if (d2 < best_d2) { best_d2 = d2; best_t = t; }
  }
  double t = best_t;
  for (int it = 0; it < 4; ++it) {
    Vector2d d = curve.point(t) - p;
    Vector2d v = curve.velocity(t), a = curve.acceleration(t);
    double g = d.dot(v);
    double gp = v.squaredNorm() + d.dot(a);
    if (gp <= 0) break;
    t -= g / gp;
  }
  return std::min(std::sqrt(best_d2), (curve.point(t) - p).norm());
}

inline PointClass point_location(const BoundaryCurve& curve, const Vector2d& p, double delta) {
  if (delta < 0) throw std::invalid_argument("collar width must be nonnegative");
  if (delta > 0 && boundary_distance(curve, p) < delta) return PointClass::Collar;
  return winding_number(curve, p) != 0 ? PointClass::Inside : PointClass::Outside;
}

// Axis-aligned lattice covering the curve's bounding box, with per-node
// classification and distance-to-boundary for the collar test.
struct InteriorGrid {
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0, h = 0;
  double delta = 0;
  std::vector<PointClass> cls;        // nx*ny, row-major in y
  std::vector<double> dist;           // distance to boundary

  int index(int ix, int iy) const { return iy * nx + ix; }
  Vector2d node(int ix, int iy) const { return {x0 + ix * h, y0 + iy * h}; }
  bool usable(int ix, int iy) const { return cls[index(ix, iy)] == PointClass::Inside; }
};

inline InteriorGrid build_interior_grid(const BoundaryCurve& curve, int resolution,
                                        double delta) {
  if (resolution < 8) throw std::invalid_argument("grid resolution too small");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const int ns = 1024;
  for (int i = 0; i < ns; ++i) {
    Vector2d p = curve.point(two_pi * i / ns);
    xmin = std::min(xmin, p.x()); xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y()); ymax = std::max(ymax, p.y());
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  double pad = 0.01 * span;
  InteriorGrid g;
  g.nx = g.ny = resolution;
  g.h = (span + 2 * pad) / (resolution - 1);
  g.x0 = 0.5 * (xmin + xmax) - 0.5 * (span + 2 * pad);
  g.y0 = 0.5 * (ymin + ymax) - 0.5 * (span + 2 * pad);
  g.delta = delta;
  g.cls.assign(resolution * resolution, PointClass::Outside);
  g.dist.assign(resolution * resolution, 0.0);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      Vector2d p = g.node(ix, iy);
      double d = boundary_distance(curve, p);
      g.dist[g.index(ix, iy)] = d;
      if (d < delta) {
        g.cls[g.index(ix, iy)] = PointClass::Collar;
      } else {
        g.cls[g.index(ix, iy)] =
            winding_number(curve, p) != 0 ? PointClass::Inside : PointClass::Outside;
      }
    }
  }
  return g;
}

}  // namespace steklov
