#pragma once

// Nystrom discretization of the boundary operators S1, S2, S3, N, Lambda
// and off-boundary evaluation of the layer potentials L1-L4.

#include "steklov/geometry.hpp"
#include "steklov/kernels.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace steklov {

using Eigen::MatrixXd;

// Dense Nystrom matrix acting on nodal samples of a boundary function.
struct DiscreteOperator {
  std::string name;
  MatrixXd A;
  VectorXd w;  // quadrature weights of the underlying grid
  bool is_symmetrized = false;

  // || W^{1/2} A W^{-1/2} - transpose || / || . || (Frobenius)
  double asymmetry() const {
    VectorXd s = w.array().sqrt();
    MatrixXd B = s.asDiagonal() * A * s.cwiseInverse().asDiagonal();
    return (B - B.transpose()).norm() / B.norm();
  }

  VectorXd apply(const VectorXd& f) const { return A * f; }
};

namespace detail {

// Kress quadrature weights R_{|i-j|} for the log(4 sin^2((t-s)/2)) factor:
//   Int_0^{2pi} log(4 sin^2((t_i - s)/2)) g(s) ds ~ Sum_j R_{|i-j|} g(t_j).
inline VectorXd kress_log_weights(int n) {
  int half = n / 2;
  VectorXd R(n);
  for (int j = 0; j < n; ++j) {
    double tau = two_pi * j / n;
    double s = 0;
    for (int m = 1; m < half; ++m) s += std::cos(m * tau) / m;
    R[j] = -(2.0 * two_pi / n) * s -
           (two_pi / (n * static_cast<double>(n))) * std::cos(half * tau) * 2.0;
  }
  return R;
}

}  // namespace detail

// Spectrally accurate Nystrom matrix for one boundary kernel via the
// log-splitting trigonometric quadrature (plain trapezoid when k1 == 0).
inline MatrixXd assemble_kernel_matrix(KernelId id, const BoundaryCurve& curve,
                                       const QuadratureGrid& g) {
  SplitKernel K(id, curve);
  VectorXd R = detail::kress_log_weights(g.n);
  MatrixXd A(g.n, g.n);
  double trap = two_pi / g.n;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      int d = std::abs(i - j);
      double sp = g.speed[j];
      A(i, j) = (R[d] * K.k1(g.t[i], g.t[j]) + trap * K.k2(g.t[i], g.t[j])) * sp;
    }
  }
  return A;
}

namespace detail {

// Trigonometric prolongation matrix from n nodes to factor*n nodes (columns
// are the upsampled unit impulses; the Nyquist cosine is split evenly).
inline MatrixXd prolongation_matrix(int n, int factor);

}  // namespace detail

// Kernels whose log-factor k1 is a non-constant function of s alias the
// Nyquist mode under the Kress rule (the product k1 * f exceeds the exact
// degree).  Assembling on a 2x grid and conjugating back by trigonometric
// prolongation/pointwise restriction restores spectral accuracy up to the
// original Nyquist frequency.
inline MatrixXd assemble_kernel_matrix_oversampled(KernelId id, const BoundaryCurve& curve,
                                                   const QuadratureGrid& g) {
  QuadratureGrid fine = build_quadrature(curve, 2 * g.n);
  MatrixXd Af = assemble_kernel_matrix(id, curve, fine);
  MatrixXd P = detail::prolongation_matrix(g.n, 2);
  MatrixXd AP = Af * P;
  MatrixXd A(g.n, g.n);
  for (int i = 0; i < g.n; ++i) A.row(i) = AP.row(2 * i);  // coarse nodes are even fine nodes
  return A;
}

struct BoundaryOps {
  QuadratureGrid grid;
  DiscreteOperator S1, S2, S3, N, Lambda;
  MatrixXd density_map;     // f -> single-layer density of the harmonic extension
  VectorXd constant_part;   // f -> additive constant of the extension
  double lambda_cond = 0;   // condition number of the bordered first-kind system
};

// Assembles S1, S2, S3, N with the log-split quadrature and Lambda by the
// bordered first-kind single-layer system (mean-zero density + auxiliary
// constant; the plain system is singular at logarithmic capacity 1), with
// the interior normal-derivative jump  Lambda f = (K' - 1/2 I) psi.
inline BoundaryOps assemble_boundary_ops(const BoundaryCurve& curve,
                                         const QuadratureGrid& grid) {
  if (grid.n < 32) throw std::invalid_argument("assemble_boundary_ops: need N >= 32");
  BoundaryOps ops;
  ops.grid = grid;
  const int n = grid.n;

  ops.S3 = {"S3", assemble_kernel_matrix_oversampled(KernelId::Ehat, curve, grid), grid.w, false};
  ops.S2 = {"S2", assemble_kernel_matrix_oversampled(KernelId::DnuEhat, curve, grid), grid.w, false};
  ops.S1 = {"S1", assemble_kernel_matrix(KernelId::LapEhat, curve, grid), grid.w, false};
  ops.N = {"N", assemble_kernel_matrix(KernelId::DnuLapEhat, curve, grid), grid.w, false};

  MatrixXd S = assemble_kernel_matrix(KernelId::E, curve, grid);
  MatrixXd Kadj = assemble_kernel_matrix(KernelId::DnuXE, curve, grid);

  MatrixXd bordered(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = S;
  bordered.topRightCorner(n, 1).setOnes();
  bordered.bottomLeftCorner(1, n) = grid.w.transpose();
  bordered(n, n) = 0;

  Eigen::PartialPivLU<MatrixXd> lu(bordered);
  {
    Eigen::JacobiSVD<MatrixXd> svd(bordered);
    const auto& sv = svd.singularValues();
    ops.lambda_cond = sv(0) / sv(sv.size() - 1);
    if (!(ops.lambda_cond < 1e12))
      throw std::runtime_error("bordered single-layer system is singular (cond " +
                               std::to_string(ops.lambda_cond) + ")");
  }

  MatrixXd rhs = MatrixXd::Zero(n + 1, n);
  rhs.topLeftCorner(n, n).setIdentity();
  MatrixXd sol = lu.solve(rhs);
  ops.density_map = sol.topRows(n);
  ops.constant_part = sol.row(n).transpose();

  MatrixXd lam = (Kadj - 0.5 * MatrixXd::Identity(n, n)) * ops.density_map;
  ops.Lambda = {"Lambda", lam, grid.w, false};
  return ops;
}

// Trigonometric interpolation of nodal data onto a finer uniform grid.
// Exact for band-limited data; used for near-boundary potential evaluation.
inline VectorXd trig_upsample(const VectorXd& f, int factor) {
  const int n = static_cast<int>(f.size());
  if (factor <= 1) return f;
  const int m = n * factor;
  // Real DFT coefficients a_k, b_k, k = 0..n/2.
  std::vector<double> a(n / 2 + 1, 0.0), b(n / 2 + 1, 0.0);
  for (int k = 0; k <= n / 2; ++k) {
    double ca = 0, cb = 0;
    for (int j = 0; j < n; ++j) {
      double ang = two_pi * k * j / n;
      ca += f[j] * std::cos(ang);
      cb += f[j] * std::sin(ang);
    }
    a[k] = 2.0 * ca / n;
    b[k] = 2.0 * cb / n;
  }
  a[0] *= 0.5;
  a[n / 2] *= 0.5;
  b[n / 2] = 0.0;
  VectorXd out(m);
  for (int j = 0; j < m; ++j) {
    double t = two_pi * j / m, s = 0;
    for (int k = 0; k <= n / 2; ++k)
      s += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    out[j] = s;
  }
  return out;
}

namespace detail {

inline MatrixXd prolongation_matrix(int n, int factor) {
  MatrixXd P(n * factor, n);
  VectorXd e = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e(j) = 1.0;
    P.col(j) = trig_upsample(e, factor);
    e(j) = 0.0;
  }
  return P;
}

}  // namespace detail

struct PotentialField {
  double L1 = 0, L2 = 0, L3 = 0, L4 = 0;
};

// Off-boundary evaluation context: upsampled quadrature grid plus densities.
class PotentialEvaluator {
 public:
  PotentialEvaluator(const BoundaryCurve& curve, const QuadratureGrid& grid, int factor = 4)
      : fine_(build_quadrature(curve, grid.n * std::max(1, factor))),
        factor_(std::max(1, factor)) {}

  const QuadratureGrid& fine_grid() const { return fine_; }

  VectorXd upsample(const VectorXd& f) const { return trig_upsample(f, factor_); }

  // Plain trapezoid of the four kernels against upsampled densities.
  PotentialField potentials(const VectorXd& f1_fine, const VectorXd& f2_fine,
                            const VectorXd& f3_fine, const VectorXd& f4_fine,
                            const Vector2d& p) const {
    PotentialField out;
    for (int j = 0; j < fine_.n; ++j) {
      Vector2d y = fine_.points.row(j).transpose();
      Vector2d nu = fine_.normals.row(j).transpose();
      KernelBundle k = kernel_values(p, y, nu);
      double w = fine_.w[j];
      out.L1 += w * f1_fine[j] * k.Ehat;
      out.L2 += w * f2_fine[j] * k.dnu_Ehat;
      out.L3 += w * f3_fine[j] * k.lap_Ehat;
      out.L4 += w * f4_fine[j] * k.dnu_lap_Ehat;
    }
    return out;
  }

  PotentialField potentials(const VectorXd& f_nodal, const Vector2d& p) const {
    VectorXd f = upsample(f_nodal);
    return potentials(f, f, f, f, p);
  }

 private:
  QuadratureGrid fine_;
  int factor_;
};

// Polynomial (Neville) extrapolation of samples (s_i, y_i) to s = 0.
inline double extrapolate_to_zero(const std::vector<double>& s, std::vector<double> y) {
  const int n = static_cast<int>(s.size());
  for (int m = 1; m < n; ++m)
    for (int i = 0; i < n - m; ++i)
      y[i] = (s[i + m] * y[i] - s[i] * y[i + 1]) / (s[i + m] - s[i]);
  return y[0];
}

struct JumpReport {
  double interior_limit = 0, exterior_limit = 0;
  double expected_interior = 0, expected_exterior = 0;  // +-1/2 f + Nf
  double jump_residual = 0;       // (L4+ - L4-) - f
  double average_residual = 0;    // (L4+ + L4-)/2 - Nf
  double continuity[3] = {0, 0, 0};  // |L_j(+) - L_j(-)| for j = 1, 2, 3
};

// Evaluates L4 f at x(t) -+ s nu and extrapolates s -> 0 on both sides;
// also confirms L1-L3 are continuous across the boundary.
inline JumpReport jump_test(const BoundaryCurve& curve, const BoundaryOps& ops,
                            const VectorXd& f, double t,
                            const std::vector<double>& distances) {
  PotentialEvaluator ev(curve, ops.grid, 8);
  VectorXd ff = ev.upsample(f);
  GeometrySample gs = curve.at(t);

  std::vector<double> in4, out4, in[3], out[3];
  for (double s : distances) {
    PotentialField pi = ev.potentials(ff, ff, ff, ff, gs.point - s * gs.normal);
    PotentialField po = ev.potentials(ff, ff, ff, ff, gs.point + s * gs.normal);
    in4.push_back(pi.L4);
    out4.push_back(po.L4);
    in[0].push_back(pi.L1); out[0].push_back(po.L1);
    in[1].push_back(pi.L2); out[1].push_back(po.L2);
    in[2].push_back(pi.L3); out[2].push_back(po.L3);
  }

  JumpReport r;
  r.interior_limit = extrapolate_to_zero(distances, in4);
  r.exterior_limit = extrapolate_to_zero(distances, out4);

  // Nodal value of f and Nf at parameter t via trig interpolation.
  auto interp = [&](const VectorXd& nodal) {
    VectorXd fine = trig_upsample(nodal, 16);
    int m = static_cast<int>(fine.size());
    double pos = t / two_pi * m;
    int i0 = static_cast<int>(std::floor(pos)) % m;
    double frac = pos - std::floor(pos);
    return fine[i0] * (1 - frac) + fine[(i0 + 1) % m] * frac;
  };
  double ft = interp(f);
  double nft = interp(ops.N.A * f);
  r.expected_interior = 0.5 * ft + nft;
  r.expected_exterior = -0.5 * ft + nft;
  r.jump_residual = (r.interior_limit - r.exterior_limit) - ft;
  r.average_residual = 0.5 * (r.interior_limit + r.exterior_limit) - nft;
  for (int j = 0; j < 3; ++j)
    r.continuity[j] = std::abs(extrapolate_to_zero(distances, in[j]) -
                               extrapolate_to_zero(distances, out[j]));
  return r;
}

}  // namespace steklov
