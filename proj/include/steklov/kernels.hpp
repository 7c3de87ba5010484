#pragma once

// Exact planar fundamental solutions for the Laplace and biharmonic
// equations, their derivative kernels, the log-singularity splittings used
// by the Nystrom quadrature, and the q1/q2/q3 symbol integrals.

#include "steklov/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace steklov {

inline constexpr double inv_2pi = 1.0 / (2.0 * std::numbers::pi);
inline constexpr double inv_4pi = 1.0 / (4.0 * std::numbers::pi);
inline constexpr double inv_8pi = 1.0 / (8.0 * std::numbers::pi);

// E = (1/2pi) log r              (Laplace)
// Ehat = (1/8pi) r^2 log r       (biharmonic)
struct KernelBundle {
  double E;
  double Ehat;
  double lap_Ehat;      // Delta_y Ehat = E + 1/2pi
  double dnu_Ehat;      // d/dnu_y Ehat
  double dnu_lap_Ehat;  // d/dnu_y Delta_y Ehat (classical double-layer kernel)
};

inline KernelBundle kernel_values(const Vector2d& x, const Vector2d& y, const Vector2d& nu_y) {
  Vector2d d = y - x;
  double r2 = d.squaredNorm();
  if (r2 == 0) throw std::invalid_argument("kernel_values: coincident points");
  double logr = 0.5 * std::log(r2);
  double dn = d.dot(nu_y);
  KernelBundle k;
  k.E = inv_2pi * logr;
  k.Ehat = inv_8pi * r2 * logr;
  k.lap_Ehat = inv_2pi * (logr + 1.0);
  k.dnu_Ehat = inv_8pi * (2.0 * logr + 1.0) * dn;
  k.dnu_lap_Ehat = inv_2pi * dn / r2;
  return k;
}

// Gradients with respect to the target x, for field reconstruction.
struct KernelGradients {
  Vector2d E, Ehat, lap_Ehat, dnu_Ehat, dnu_lap_Ehat;
};

inline KernelGradients kernel_gradients(const Vector2d& x, const Vector2d& y,
                                        const Vector2d& nu_y) {
  Vector2d d = y - x;  // gradients below are in x
  double r2 = d.squaredNorm();
  double logr = 0.5 * std::log(r2);
  double dn = d.dot(nu_y);
  KernelGradients g;
  g.E = inv_2pi * (-d) / r2;
  g.Ehat = inv_8pi * (2.0 * logr + 1.0) * (-d);
  g.lap_Ehat = g.E;
  g.dnu_Ehat = inv_8pi * ((-d) * (2.0 * dn / r2) - (2.0 * logr + 1.0) * nu_y);
  g.dnu_lap_Ehat = inv_2pi * (-nu_y / r2 + 2.0 * dn * d / (r2 * r2));
  return g;
}

enum class KernelId {
  E,            // Laplace single layer
  Ehat,         // biharmonic single layer (S3)
  LapEhat,      // Delta_y Ehat (S1)
  DnuEhat,      // d/dnu_y Ehat (S2)
  DnuLapEhat,   // d/dnu_y Delta_y Ehat (N, double layer)
  DnuXE,        // d/dnu_x E (adjoint double layer, used for the DtN map)
};

// Splitting of the raw kernel K(t,s) on the parameter torus:
//   K(t,s) = k1(t,s) * log(4 sin^2((t-s)/2)) + k2(t,s),
// with k1, k2 smooth and periodic (analytic diagonal limits frozen below).
// The arclength factor speed(s) is NOT included here.
class SplitKernel {
 public:
  SplitKernel(KernelId id, const BoundaryCurve& curve) : id_(id), curve_(&curve) {}

  double k1(double t, double s) const {
    switch (id_) {
      case KernelId::E: return inv_4pi;
      case KernelId::LapEhat: return inv_4pi;
      case KernelId::Ehat: {
        if (same(t, s)) return 0.0;
        return (curve_->point(t) - curve_->point(s)).squaredNorm() * inv_8pi * 0.5;
      }
      case KernelId::DnuEhat: {
        if (same(t, s)) return 0.0;
        Vector2d d = curve_->point(s) - curve_->point(t);
        return inv_8pi * d.dot(curve_->normal(s));
      }
      case KernelId::DnuLapEhat:
      case KernelId::DnuXE:
        return 0.0;
    }
    return 0.0;
  }

  double k2(double t, double s) const {
    if (same(t, s)) return diagonal(t);
    Vector2d xt = curve_->point(t), xs = curve_->point(s);
    double r2 = (xt - xs).squaredNorm();
    double u = 2.0 * std::sin(0.5 * (t - s));
    double L = std::log(r2 / (u * u));  // log(r^2 / (4 sin^2((t-s)/2)))
    switch (id_) {
      case KernelId::E: return inv_4pi * L;
      case KernelId::LapEhat: return inv_4pi * L + inv_2pi;
      case KernelId::Ehat: return inv_8pi * 0.5 * r2 * L;
      case KernelId::DnuEhat: {
        Vector2d d = xs - xt;
        return inv_8pi * (L + 1.0) * d.dot(curve_->normal(s));
      }
      case KernelId::DnuLapEhat: {
        Vector2d d = xs - xt;
        return inv_2pi * d.dot(curve_->normal(s)) / r2;
      }
      case KernelId::DnuXE: {
        Vector2d d = xt - xs;
        return inv_2pi * d.dot(curve_->normal(t)) / r2;
      }
    }
    return 0.0;
  }

  // Diagonal limit of k2 (k1 needs none: it is smooth with k1(t,t) as written).
  double diagonal(double t) const {
    double sp = curve_->speed(t);
    switch (id_) {
      case KernelId::E: return inv_2pi * std::log(sp);
      case KernelId::LapEhat: return inv_2pi * (std::log(sp) + 1.0);
      case KernelId::Ehat: return 0.0;
      case KernelId::DnuEhat: return 0.0;
      case KernelId::DnuLapEhat: return curve_->curvature(t) * inv_4pi;
      case KernelId::DnuXE: return curve_->curvature(t) * inv_4pi;
    }
    return 0.0;
  }

 private:
  static bool same(double t, double s) {
    double d = std::remainder(t - s, two_pi);
    return std::abs(d) < 1e-13;
  }

  KernelId id_;
  const BoundaryCurve* curve_;
};

inline SplitKernel split_kernel(KernelId id, const BoundaryCurve& curve) {
  return SplitKernel(id, curve);
}

// Closed-form half-space symbol integrals (flat boundary model):
//   q3 = (1/4)(|xi'|^-3 + x_n |xi'|^-2) e^{-x_n xi'}
//   q2 = (-x_n / (4 |xi'|)) e^{-x_n xi'}
//   q1 = -(1 / (2 |xi'|)) e^{-x_n xi'}
inline double symbol_q(int j, double xn, double xi) {
  if (!(xi > 0)) throw std::invalid_argument("symbol_q: xi' must be positive");
  double e = std::exp(-std::abs(xn) * xi);
  switch (j) {
    case 1: return -e / (2.0 * xi);
    case 2: return -std::abs(xn) / (4.0 * xi) * e;
    case 3: return 0.25 * (1.0 / (xi * xi * xi) + std::abs(xn) / (xi * xi)) * e;
    default: throw std::invalid_argument("symbol_q: j must be 1, 2, or 3");
  }
}

namespace detail {

// Gauss-Legendre 20-point rule on [-1, 1].
struct GL20 {
  static const GL20& instance() {
    static GL20 g;
    return g;
  }
  double x[20], w[20];

 private:
  GL20() {
    // Newton iteration on Legendre P_20; deterministic.
    const int n = 20;
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = t;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      double p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1);
      x[i] = t;
      w[i] = 2.0 / ((1 - t * t) * dp * dp);
    }
  }
};

template <class F>
double gl_panel(const F& f, double a, double b) {
  const auto& g = GL20::instance();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 20; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

}  // namespace detail

struct SymbolQuadResult {
  double value = 0;         // real part of the Fourier integral
  double imag_part = 0;     // diagnostic; vanishes by parity
  double tail_bound = 0;    // bound on the neglected tail remainder
};

// Numerical evaluation of q_j(x_n, xi') = (1/2pi) Int p_j e^{i x_n xi_n} d xi_n
// with p3 = |xi|^-4, p2 = i xi_n |xi|^-4, p1 = -|xi|^-2. The integrand is
// integrated on [0, T] by panel Gauss quadrature; the [T, inf) tail is added
// in closed form at x_n = 0 and by four-term integration-by-parts asymptotics
// for x_n > 0.
inline SymbolQuadResult symbol_q_numeric(int j, double xn, double xi,
                                         double cutoff_mult = 200.0) {
  if (!(xi > 0)) throw std::invalid_argument("symbol_q_numeric: xi' must be positive");
  if (j < 1 || j > 3) throw std::invalid_argument("symbol_q_numeric: j must be 1, 2, or 3");
  xn = std::abs(xn);
  const double a2 = xi * xi;

  // Even/odd reduction to [0, inf):
  //   q3 = (1/pi) Int cos(xn u) / (u^2+a^2)^2 du
  //   q2 = -(1/pi) Int u sin(xn u) / (u^2+a^2)^2 du   (real by parity)
  //   q1 = -(1/pi) Int cos(xn u) / (u^2+a^2) du
  auto g = [&](double u) -> double {
    double D = u * u + a2;
    switch (j) {
      case 1: return 1.0 / D;
      case 2: return u / (D * D);
      default: return 1.0 / (D * D);
    }
  };
  const bool sin_type = (j == 2);
  auto integrand = [&](double u) {
    return g(u) * (sin_type ? std::sin(xn * u) : std::cos(xn * u));
  };

  double T = std::max(cutoff_mult * xi, xn > 0 ? 2000.0 : cutoff_mult * xi);

  // Panels: resolve the scale near u ~ xi, then the oscillation period.
  double head = 0;
  double osc = xn > 0 ? std::numbers::pi / xn : T;
  double u0 = 0;
  double width0 = std::min(0.5 * xi, osc);
  // fine panels through [0, 8 xi]
  double stop1 = std::min(8.0 * xi, T);
  while (u0 < stop1) {
    double u1 = std::min(u0 + width0, stop1);
    head += detail::gl_panel(integrand, u0, u1);
    u0 = u1;
  }
  // geometric growth capped by the oscillation period
  double width = width0;
  while (u0 < T) {
    width = std::min(width * 1.5, std::min(osc, 0.2 * T));
    double u1 = std::min(u0 + width, T);
    head += detail::gl_panel(integrand, u0, u1);
    u0 = u1;
  }

  double tail = 0, tail_bound = 0;
  if (xn == 0) {
    if (sin_type) {
      tail = 0;  // integrand vanishes identically
    } else if (j == 1) {
      tail = (std::numbers::pi / 2 - std::atan(T / xi)) / xi;
    } else {
      tail = (std::numbers::pi / 2 - std::atan(T / xi)) / (2 * xi * a2) -
             T / (2 * a2 * (T * T + a2));
    }
    tail_bound = 1e-16;
  } else {
    // Four-term IBP: C(g) = -g sin(xT)/x - (1/x) S(g'), S(g) = g cos(xT)/x + (1/x) C(g').
    // Derivatives of the three rational envelopes at u = T.
    double u = T, D = u * u + a2;
    double d0, d1, d2, d3;
    if (j == 1) {
      d0 = 1 / D;
      d1 = -2 * u / (D * D);
      d2 = -2 / (D * D) + 8 * u * u / (D * D * D);
      d3 = 24 * u / (D * D * D) - 48 * u * u * u / (D * D * D * D);
    } else if (j == 3) {
      d0 = 1 / (D * D);
      d1 = -4 * u / (D * D * D);
      d2 = -4 / (D * D * D) + 24 * u * u / (D * D * D * D);
      d3 = 72 * u / (D * D * D * D) - 192 * u * u * u / (D * D * D * D * D);
    } else {
      d0 = u / (D * D);
      d1 = 1 / (D * D) - 4 * u * u / (D * D * D);
      d2 = -12 * u / (D * D * D) + 24 * u * u * u / (D * D * D * D);
      d3 = -12 / (D * D * D) + 120 * u * u / (D * D * D * D) -
           192 * u * u * u * u / (D * D * D * D * D);
    }
    double x = xn, sn = std::sin(x * T), cs = std::cos(x * T);
    if (sin_type) {
      tail = d0 * cs / x - d1 * sn / (x * x) - d2 * cs / (x * x * x) +
             d3 * sn / (x * x * x * x);
    } else {
      tail = -d0 * sn / x - d1 * cs / (x * x) + d2 * sn / (x * x * x) +
             d3 * cs / (x * x * x * x);
    }
    // |remainder| <= (1/x^4) Int_T^inf |g''''| ~ C / (x^4 T^5)
    tail_bound = 400.0 / (std::pow(x, 4) * std::pow(T, 5));
  }

  double total = head + tail;
  SymbolQuadResult r;
  switch (j) {
    case 1: r.value = -total / std::numbers::pi; break;
    case 2: r.value = -total / std::numbers::pi; break;
    case 3: r.value = total / std::numbers::pi; break;
  }
  r.imag_part = 0.0;  // odd part cancels exactly under the parity reduction
  r.tail_bound = tail_bound / std::numbers::pi;
  return r;
}

}  // namespace steklov
