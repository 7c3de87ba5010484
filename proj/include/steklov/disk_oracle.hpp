#pragma once

// Closed-form unit-disk spectra, eigenfunctions, and layer-operator Fourier
// multipliers. Exact rationals evaluated in floating point; no quadrature.

#include "steklov/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace steklov {

enum class ProblemKind { Theta, Xi, Pi };

inline const char* problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Theta: return "theta";
    case ProblemKind::Xi: return "xi";
    case ProblemKind::Pi: return "pi";
  }
  return "?";
}

inline ProblemKind problem_from_name(const std::string& s) {
  if (s == "theta") return ProblemKind::Theta;
  if (s == "xi") return ProblemKind::Xi;
  if (s == "pi") return ProblemKind::Pi;
  throw std::invalid_argument("unknown problem: " + s);
}

namespace oracle {

enum class Parity { Cos, Sin };

// u = (a r^k + b r^{k+2}) trig(k theta); Delta(r^{k+2} trig) = (4k+4) r^k trig.
struct DiskMode {
  ProblemKind kind;
  int k;
  Parity parity;
  double a, b;
};

inline DiskMode disk_mode(ProblemKind kind, int k, Parity parity = Parity::Cos) {
  if (k < 0) throw std::invalid_argument("angular index must be >= 0");
  DiskMode m{kind, k, parity, 0, 0};
  if (kind == ProblemKind::Theta) {
    m.a = 0.5 * (k + 2);  // u = trig on boundary, dnu u = 0
    m.b = -0.5 * k;
  } else {
    m.a = -0.5;  // u = 0 on boundary, dnu u = trig
    m.b = 0.5;
  }
  return m;
}

struct EigenvalueOracle {
  double mu;      // raw operator eigenvalue
  double lambda;  // physical lambda
};

inline EigenvalueOracle eigenvalue(ProblemKind kind, int k) {
  if (k < 0) throw std::invalid_argument("angular index must be >= 0");
  switch (kind) {
    case ProblemKind::Theta: {
      double mu = 2.0 * k * k * (k + 1);
      return {mu, std::cbrt(mu)};
    }
    case ProblemKind::Xi: {
      double l = 2.0 * (k + 1);
      return {l, l};
    }
    case ProblemKind::Pi: {
      double l = 2.0 * k + 1.0;
      return {l, l};
    }
  }
  return {0, 0};
}

struct FieldValues {
  double e;
  Vector2d grad_e;
  double lap_e;
  Vector2d grad_lap_e;
};

namespace detail {

// Value and Cartesian gradient of r^m trig(k theta), m >= 0 (m >= 1 when k >= 1).
inline void radial_harmonic(int m, int k, Parity parity, const Vector2d& p, double& val,
                            Vector2d& grad) {
  double r = p.norm();
  double th = std::atan2(p.y(), p.x());
  double trig = parity == Parity::Cos ? std::cos(k * th) : std::sin(k * th);
  double dtrig = parity == Parity::Cos ? -k * std::sin(k * th) : k * std::cos(k * th);
  double rm = std::pow(r, m);
  val = rm * trig;
  if (r == 0) {
    grad.setZero();
    if (m == 1 && k == 1) {
      grad = parity == Parity::Cos ? Vector2d(1, 0) : Vector2d(0, 1);
    }
    return;
  }
  double rm1 = std::pow(r, m - 1);
  Vector2d er = p / r, et(-er.y(), er.x());
  grad = (m * rm1 * trig) * er + (rm1 * dtrig) * et;
}

}  // namespace detail

inline FieldValues eval(const DiskMode& m, const Vector2d& p) {
  if (p.norm() > 1.0 + 1e-12) throw std::invalid_argument("oracle eval outside unit disk");
  int k = m.k;
  double v1, v2, v3;
  Vector2d g1, g2, g3;
  detail::radial_harmonic(k, k, m.parity, p, v1, g1);          // r^k trig
  detail::radial_harmonic(k + 2, k, m.parity, p, v2, g2);      // r^{k+2} trig
  detail::radial_harmonic(k, k, m.parity, p, v3, g3);          // for Delta term
  FieldValues f;
  f.e = m.a * v1 + m.b * v2;
  f.grad_e = m.a * g1 + m.b * g2;
  f.lap_e = m.b * (4.0 * k + 4.0) * v3;
  f.grad_lap_e = m.b * (4.0 * k + 4.0) * g3;
  return f;
}

enum class LayerOp { S1, S2, S3, N, Lambda };

// Circle Fourier multipliers of the boundary operators on cos/sin(k theta).
inline double layer_multiplier(LayerOp op, int k) {
  if (k < 0) throw std::invalid_argument("angular index must be >= 0");
  switch (op) {
    case LayerOp::Lambda: return static_cast<double>(k);
    case LayerOp::N: return k == 0 ? 0.5 : 0.0;
    case LayerOp::S1: return k == 0 ? 1.0 : -1.0 / (2.0 * k);
    case LayerOp::S3:
      if (k == 0) return 0.25;
      if (k == 1) return -3.0 / 16.0;
      return 1.0 / (4.0 * k * (k * k - 1.0));
    case LayerOp::S2:
      if (k == 0) return 0.5;
      if (k == 1) return -5.0 / 16.0;
      return 1.0 / (4.0 * k * (k * k - 1.0));
  }
  return 0;
}

// Multiplier of the auxiliary operator theta f = Delta(K1 f)|_boundary.
inline double theta_multiplier(int k) { return -2.0 * k * (k + 1.0); }

}  // namespace oracle
}  // namespace steklov
