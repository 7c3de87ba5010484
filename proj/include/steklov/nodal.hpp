#pragma once

// Nodal / level-set machinery: trigonometric interpolation of boundary
// traces, marching-squares extraction of interior level sets, and the
// integration-by-parts identities tying level-set integrals to boundary data.

#include "steklov/field.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <vector>

namespace steklov {

// Trigonometric interpolant of n uniform samples on [0, 2pi); exact for
// band-limited data, spectrally accurate for smooth traces.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const VectorXd& f) : n_(static_cast<int>(f.size())) {
    int m = n_ / 2;
    a_.assign(m + 1, 0.0);
    b_.assign(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
      double ca = 0, cb = 0;
      for (int j = 0; j < n_; ++j) {
        double ang = k * (two_pi * j / n_);
        ca += f(j) * std::cos(ang);
        cb += f(j) * std::sin(ang);
      }
      a_[k] = 2.0 * ca / n_;
      b_[k] = 2.0 * cb / n_;
    }
    a_[0] *= 0.5;
    a_[m] *= 0.5;
    b_[m] = 0.0;
  }

  double value(double t) const {
    double s = 0;
    for (int k = 0; k <= n_ / 2; ++k)
      s += a_[k] * std::cos(k * t) + b_[k] * std::sin(k * t);
    return s;
  }

  double deriv(double t) const {
    double s = 0;
    for (int k = 1; k <= n_ / 2; ++k)
      s += k * (-a_[k] * std::sin(k * t) + b_[k] * std::cos(k * t));
    return s;
  }

  double deriv2(double t) const {
    double s = 0;
    for (int k = 1; k <= n_ / 2; ++k)
      s += -double(k) * k * (a_[k] * std::cos(k * t) + b_[k] * std::sin(k * t));
    return s;
  }

 private:
  int n_;
  std::vector<double> a_, b_;
};

struct BoundaryZeros {
  int count = 0;
  std::vector<double> params;  // refined parameters in [0, 2pi)
};

// Sign changes of (trace - alpha), refined by bisection on the interpolant.
inline BoundaryZeros boundary_zeros(const VectorXd& trace, double alpha,
                                    int oversample = 16) {
  TrigInterpolant g(trace);
  int nf = static_cast<int>(trace.size()) * oversample;
  BoundaryZeros out;
  double prev = g.value(0.0) - alpha;
  for (int i = 1; i <= nf; ++i) {
    double t = two_pi * i / nf;
    double cur = g.value(t) - alpha;
    if (prev == 0.0) prev = cur;  // measure-zero grid hit; attribute to next interval
    if (prev * cur < 0) {
      double lo = two_pi * (i - 1) / nf, hi = t, flo = prev;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi), fm = g.value(mid) - alpha;
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0) hi = mid; else { lo = mid; flo = fm; }
      }
      out.params.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  out.count = static_cast<int>(out.params.size());
  return out;
}

struct NodalGeometry {
  double alpha = 0;
  std::vector<std::array<double, 4>> segments;  // x1, y1, x2, y2
  double raw_length = 0;   // collar-excluded polyline length
  double length = 0;       // raw + boundary_zero_count * delta (ray completion)
  int boundary_zero_count = 0;
  std::vector<double> boundary_zero_params;
  int collar_excluded_cells = 0;
  int ambiguous_cells = 0;
};

// Marching squares restricted to fully-inside cells; saddle cells are
// disambiguated by the cell average, collar-adjacent cells are counted and
// skipped, and exact node hits are removed by a tiny alpha perturbation.
inline NodalGeometry level_set_extract(const ScalarField& field, double alpha) {
  const InteriorGrid& g = *field.grid;
  NodalGeometry out;

  double scale = 0;
  bool exact_hit = false;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if (g.cls[g.index(ix, iy)] == PointClass::Inside) {
        scale = std::max(scale, std::abs(field.values(ix, iy)));
        if (field.values(ix, iy) == alpha) exact_hit = true;
      }
  if (exact_hit) alpha += 1e-12 * (scale > 0 ? scale : 1.0);
  out.alpha = alpha;

  auto edge_point = [&](int ixa, int iya, int ixb, int iyb) {
    double va = field.values(ixa, iya), vb = field.values(ixb, iyb);
    double f = (alpha - va) / (vb - va);
    Vector2d pa = g.node(ixa, iya), pb = g.node(ixb, iyb);
    return Vector2d(pa + f * (pb - pa));
  };
  auto emit = [&](const Vector2d& p, const Vector2d& q) {
    out.segments.push_back({p.x(), p.y(), q.x(), q.y()});
    out.raw_length += (q - p).norm();
  };

  for (int iy = 0; iy + 1 < g.ny; ++iy)
    for (int ix = 0; ix + 1 < g.nx; ++ix) {
      PointClass c00 = g.cls[g.index(ix, iy)], c10 = g.cls[g.index(ix + 1, iy)];
      PointClass c11 = g.cls[g.index(ix + 1, iy + 1)], c01 = g.cls[g.index(ix, iy + 1)];
      int inside = (c00 == PointClass::Inside) + (c10 == PointClass::Inside) +
                   (c11 == PointClass::Inside) + (c01 == PointClass::Inside);
      if (inside < 4) {
        bool touches_collar = c00 == PointClass::Collar || c10 == PointClass::Collar ||
                              c11 == PointClass::Collar || c01 == PointClass::Collar;
        if (inside > 0 && touches_collar) ++out.collar_excluded_cells;
        continue;
      }
      double v0 = field.values(ix, iy), v1 = field.values(ix + 1, iy);
      double v2 = field.values(ix + 1, iy + 1), v3 = field.values(ix, iy + 1);
      int m = (v0 > alpha) | ((v1 > alpha) << 1) | ((v2 > alpha) << 2) | ((v3 > alpha) << 3);
      if (m == 0 || m == 15) continue;
      // edges: 0 bottom, 1 right, 2 top, 3 left
      Vector2d e0, e1, e2, e3;
      auto E0 = [&] { return edge_point(ix, iy, ix + 1, iy); };
      auto E1 = [&] { return edge_point(ix + 1, iy, ix + 1, iy + 1); };
      auto E2 = [&] { return edge_point(ix + 1, iy + 1, ix, iy + 1); };
      auto E3 = [&] { return edge_point(ix, iy + 1, ix, iy); };
      switch (m) {
        case 1: emit(E3(), E0()); break;
        case 2: emit(E0(), E1()); break;
        case 3: emit(E3(), E1()); break;
        case 4: emit(E1(), E2()); break;
        case 6: emit(E0(), E2()); break;
        case 7: emit(E3(), E2()); break;
        case 8: emit(E2(), E3()); break;
        case 9: emit(E0(), E2()); break;
        case 11: emit(E1(), E2()); break;
        case 12: emit(E1(), E3()); break;
        case 13: emit(E0(), E1()); break;
        case 14: emit(E3(), E0()); break;
        case 5:   // c0, c2 above: saddle
          ++out.ambiguous_cells;
          if (0.25 * (v0 + v1 + v2 + v3) > alpha) { emit(E0(), E1()); emit(E2(), E3()); }
          else { emit(E3(), E0()); emit(E1(), E2()); }
          break;
        case 10:  // c1, c3 above: saddle
          ++out.ambiguous_cells;
          if (0.25 * (v0 + v1 + v2 + v3) > alpha) { emit(E3(), E0()); emit(E1(), E2()); }
          else { emit(E0(), E1()); emit(E2(), E3()); }
          break;
      }
    }
  out.length = out.raw_length;
  return out;
}

namespace detail {

// Crossing of a level line into the collar strip: entry point, inward
// direction of the level line, and the strip chord length it spans.
struct CollarCrossing {
  double t = 0;
  Vector2d point = Vector2d::Zero();
  Vector2d dir = Vector2d::Zero();
  double ell = 0;
};

// Direction from the boundary gradient of the traced field: the level line is
// orthogonal to grad(field); degenerate gradients fall back to the inward
// normal (the correct limit for nodal rays of e when e or dnu_e vanishes).
inline CollarCrossing collar_crossing(const BoundaryCurve& curve, double t, double delta,
                                      double grad_nu, double grad_tau) {
  CollarCrossing c;
  c.t = t;
  c.point = curve.point(t);
  Vector2d nu = curve.normal(t);
  Vector2d v = curve.velocity(t);
  Vector2d tau = v / v.norm();
  Vector2d grad = grad_nu * nu + grad_tau * tau;
  double gn = grad.norm();
  Vector2d d;
  if (gn < 1e-10) {
    d = -nu;
  } else {
    d = Vector2d(-grad.y(), grad.x()) / gn;
    if (d.dot(nu) > 0) d = -d;
    if (-d.dot(nu) < 0.2) d = -nu;  // nearly tangential: clamp to normal
  }
  c.dir = d;
  c.ell = delta / (-d.dot(nu));
  return c;
}

// Simpson rule on the collar chord; s = 0 uses the boundary value from Cauchy
// data (the field evaluator is singular there), s > 0 uses the evaluator.
template <class F>
double collar_piece(const CollarCrossing& c, double value0, const F& integrand) {
  double h = c.ell / 4.0;
  static const double wts[5] = {1, 4, 2, 4, 1};
  double acc = wts[0] * value0;
  for (int i = 1; i <= 4; ++i) {
    Vector2d p = c.point + (i * h) * c.dir;
    acc += wts[i] * integrand(p);
  }
  return acc * c.ell / 12.0;
}

}  // namespace detail

struct InteriorIdentityReport {
  double B = 0;         // boundary side: Int sigma_a(lap u) dnu lap u ds
  double S_raw = 0;     // 2 Int_{collar-excluded level set} |grad lap e| ds
  double S = 0;         // S_raw + collar completion
  double residual = 0;  // |B - S| / |B|
  double ratio = 0;     // (S/2) / (lambda ||lap u||_L1)
  NodalGeometry geometry;
};

// Level-set form of the divergence theorem for the harmonic function lap e:
//   Int_dM sigma_a(lap e) dnu lap e ds = 2 Int_{lap e = a} |grad lap e| ds.
inline InteriorIdentityReport interior_ibp_residual(
    const BoundaryCurve& curve, const QuadratureGrid& grid, const CauchyData& cd,
    double lambda, const FieldEvaluator& ev, const InteriorGrid& igrid, double alpha) {
  InteriorIdentityReport rep;

  // Boundary side on an upsampled trace (the sign factor kinks the integrand).
  const int up = 16;
  VectorXd gf = trig_upsample(cd.lap_u, up);
  VectorXd hf = trig_upsample(cd.dnu_lap_u, up);
  QuadratureGrid fine = build_quadrature(curve, grid.n * up);
  for (int j = 0; j < fine.n; ++j)
    rep.B += fine.w(j) * (gf(j) > alpha ? 1.0 : -1.0) * hf(j);

  // Level-set side: midpoint rule with analytic gradients along segments.
  ScalarField lap = field_on_grid(ev, igrid, FieldComponent::LapE);
  rep.geometry = level_set_extract(lap, alpha);
  for (const auto& s : rep.geometry.segments) {
    Vector2d p(s[0], s[1]), q(s[2], s[3]);
    Vector2d mid = 0.5 * (p + q);
    rep.S_raw += 2.0 * ev(mid).grad_lap_e.norm() * (q - p).norm();
  }

  // Collar completion per boundary crossing of the level set.
  BoundaryZeros bz = boundary_zeros(cd.lap_u, alpha);
  rep.geometry.boundary_zero_count = bz.count;
  rep.geometry.boundary_zero_params = bz.params;
  rep.geometry.length = rep.geometry.raw_length + bz.count * igrid.delta;
  TrigInterpolant gi(cd.lap_u), hi(cd.dnu_lap_u);
  rep.S = rep.S_raw;
  for (double t : bz.params) {
    double sp = curve.velocity(t).norm();
    double grad_tau = gi.deriv(t) / sp, grad_nu = hi.value(t);
    auto c = detail::collar_crossing(curve, t, igrid.delta, grad_nu, grad_tau);
    double v0 = std::hypot(grad_nu, grad_tau);
    rep.S += 2.0 * detail::collar_piece(c, v0, [&](const Vector2d& p) {
      return ev(p).grad_lap_e.norm();
    });
  }

  rep.residual = std::abs(rep.B - rep.S) / std::max(std::abs(rep.B), 1e-300);
  double l1 = (grid.w.array() * cd.lap_u.array().abs()).sum();
  rep.ratio = (0.5 * rep.S) / std::max(lambda * l1, 1e-300);
  return rep;
}

struct FluxReport {
  double F_raw = 0;      // Int_{e=0, collar-excluded} |<grad lap e, grad e/|grad e|>| ds
  double F = 0;          // F_raw + collar completion
  double boundary = 0;   // -/+ Int sigma(phi) dnu lap u ds (Theta: -, Xi/Pi: +); equals 2F
  double residual = 0;   // |2F - boundary| / |boundary|
  double ratio = 0;      // Theta: F / ((lambda^3/2)||u||_1); Xi/Pi: F / (lambda^2 ||dnu u||_1)
  int skipped_segments = 0;
  NodalGeometry geometry;
};

// Flux of grad lap e through the nodal set of e against its normal
// grad e/|grad e|, versus the boundary pairing of sign data with dnu lap e.
inline FluxReport interior_flux_check(ProblemKind kind, const BoundaryCurve& curve,
                                      const QuadratureGrid& grid, const CauchyData& cd,
                                      double lambda, const FieldEvaluator& ev,
                                      const InteriorGrid& igrid) {
  FluxReport rep;
  const VectorXd& phi = kind == ProblemKind::Theta ? cd.u : cd.dnu_u;
  double sign = kind == ProblemKind::Theta ? -1.0 : 1.0;

  const int up = 16;
  VectorXd pf = trig_upsample(phi, up);
  VectorXd hf = trig_upsample(cd.dnu_lap_u, up);
  QuadratureGrid fine = build_quadrature(curve, grid.n * up);
  for (int j = 0; j < fine.n; ++j)
    rep.boundary += sign * fine.w(j) * (pf(j) > 0 ? 1.0 : -1.0) * hf(j);

  ScalarField e = field_on_grid(ev, igrid, FieldComponent::E);
  rep.geometry = level_set_extract(e, 0.0);
  auto integrand = [&](const Vector2d& p) -> double {
    FieldSample s = ev(p);
    double gn = s.grad_e.norm();
    if (gn < 1e-12) return -1.0;  // degenerate marker
    return std::abs(s.grad_lap_e.dot(s.grad_e) / gn);
  };
  for (const auto& s : rep.geometry.segments) {
    Vector2d p(s[0], s[1]), q(s[2], s[3]);
    double v = integrand(0.5 * (p + q));
    if (v < 0) { ++rep.skipped_segments; continue; }
    rep.F_raw += v * (q - p).norm();
  }

  // Collar completion: nodal rays of e meet the boundary at zeros of phi and
  // arrive normally; there the flux integrand is the tangential derivative of
  // lap e (grad e aligns with the tangent in the limit).
  BoundaryZeros bz = boundary_zeros(phi, 0.0);
  rep.geometry.boundary_zero_count = bz.count;
  rep.geometry.boundary_zero_params = bz.params;
  rep.geometry.length = rep.geometry.raw_length + bz.count * igrid.delta;
  TrigInterpolant gi(cd.lap_u);
  rep.F = rep.F_raw;
  for (double t : bz.params) {
    double sp = curve.velocity(t).norm();
    detail::CollarCrossing c;
    c.t = t;
    c.point = curve.point(t);
    c.dir = -curve.normal(t);
    c.ell = igrid.delta;
    double v0 = std::abs(gi.deriv(t)) / sp;
    rep.F += detail::collar_piece(c, v0, [&](const Vector2d& p) {
      double v = integrand(p);
      return v < 0 ? 0.0 : v;
    });
  }

  rep.residual = std::abs(2.0 * rep.F - rep.boundary) / std::max(std::abs(rep.boundary), 1e-300);
  if (kind == ProblemKind::Theta) {
    double l1 = (grid.w.array() * cd.u.array().abs()).sum();
    rep.ratio = rep.F / std::max(0.5 * lambda * lambda * lambda * l1, 1e-300);
  } else {
    double l1 = (grid.w.array() * cd.dnu_u.array().abs()).sum();
    rep.ratio = rep.F / std::max(lambda * lambda * l1, 1e-300);
  }
  return rep;
}

struct BoundaryIdentityReport {
  double lhs = 0;  // -Int sigma_a(phi) lap_T phi ds, piecewise Gauss between zeros
  double rhs = 0;  // 2 Sum_zeros |grad_T phi|
  double residual = 0;
  int zero_count = 0;
};

// Tangential integration by parts on the boundary curve:
//   -Int sigma_a(phi) lap_T phi ds = 2 Sum_{phi=a} |grad_T phi|,
// with lap_T phi ds = d/dt(phi'/speed) dt integrated exactly per sign piece.
inline BoundaryIdentityReport boundary_ibp_residual(const BoundaryCurve& curve,
                                                    const VectorXd& phi, double alpha) {
  BoundaryIdentityReport rep;
  TrigInterpolant f(phi);
  BoundaryZeros bz = boundary_zeros(phi, alpha);
  rep.zero_count = bz.count;
  if (bz.count == 0) return rep;

  auto gT = [&](double t) { return f.deriv(t) / curve.velocity(t).norm(); };
  auto dgT = [&](double t) {
    Vector2d v = curve.velocity(t), a = curve.acceleration(t);
    double sp = v.norm(), dsp = v.dot(a) / sp;
    return (f.deriv2(t) * sp - f.deriv(t) * dsp) / (sp * sp);
  };

  for (int i = 0; i < bz.count; ++i) {
    double t0 = bz.params[i];
    double t1 = (i + 1 < bz.count) ? bz.params[i + 1] : bz.params[0] + two_pi;
    double sigma = f.value(0.5 * (t0 + t1)) - alpha > 0 ? 1.0 : -1.0;
    double piece = 0;
    const int panels = 4;
    for (int p = 0; p < panels; ++p)
      piece += detail::gl_panel(dgT, t0 + (t1 - t0) * p / panels,
                                t0 + (t1 - t0) * (p + 1) / panels);
    rep.lhs -= sigma * piece;
    rep.rhs += 2.0 * std::abs(gT(t0));
  }
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.rhs), 1e-300);
  return rep;
}

}  // namespace steklov
