#pragma once

// Assembly of theta, Theta, Xi, Pi from the boundary integral equations,
// spectral solves, and Cauchy data for eigenfunctions.

#include "steklov/disk_oracle.hpp"
#include "steklov/layer.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <vector>

namespace steklov {

struct SteklovAssembly {
  ProblemKind kind;
  DiscreteOperator op;          // symmetrized weight-conjugated operator (nodal action)
  DiscreteOperator theta_small; // theta = Delta(K1 .)|_boundary (Theta only; else empty)
  double condition_number = 0;  // of (S2 - S3 Lambda)
  double asymmetry_raw = 0;     // diagnostic before symmetrization
  VectorXd curvature;
};

namespace detail {

struct SolveCore {
  MatrixXd inv_s2_minus_s3l;  // (S2 - S3 Lambda)^{-1}
  double cond;
};

inline SolveCore invert_core(const BoundaryOps& ops) {
  MatrixXd core = ops.S2.A - ops.S3.A * ops.Lambda.A;
  Eigen::BDCSVD<MatrixXd> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e12))
    throw std::runtime_error("(S2 - S3 Lambda) is ill-conditioned: cond = " +
                             std::to_string(cond));
  SolveCore out;
  out.cond = cond;
  out.inv_s2_minus_s3l = svd.solve(MatrixXd::Identity(core.rows(), core.cols()));
  return out;
}

// Replace A by the symmetric part of its weight conjugation; returns the
// relative size of the discarded asymmetric part.
inline double symmetrize(DiscreteOperator& op) {
  VectorXd s = op.w.array().sqrt();
  MatrixXd B = s.asDiagonal() * op.A * s.cwiseInverse().asDiagonal();
  double asym = (B - B.transpose()).norm() / B.norm();
  MatrixXd Bs = 0.5 * (B + B.transpose());
  op.A = s.cwiseInverse().asDiagonal() * Bs * s.asDiagonal();
  op.is_symmetrized = true;
  return asym;
}

}  // namespace detail

// theta = (S2 - S3 Lambda)^{-1} (1/2 I - N): the Dirichlet-datum-to-Laplacian
// map, with the full N (the jump relation L4+ = 1/2 f + N f fixes the form).
inline DiscreteOperator assemble_theta_small(const BoundaryOps& ops) {
  auto core = detail::invert_core(ops);
  int n = ops.grid.n;
  MatrixXd rhs = 0.5 * MatrixXd::Identity(n, n) - ops.N.A;
  return {"theta", core.inv_s2_minus_s3l * rhs, ops.grid.w, false};
}

inline SteklovAssembly assemble_operator(ProblemKind kind, const BoundaryOps& ops) {
  auto core = detail::invert_core(ops);
  const int n = ops.grid.n;
  SteklovAssembly out;
  out.kind = kind;
  out.condition_number = core.cond;
  out.curvature = ops.grid.curvature;

  if (kind == ProblemKind::Theta) {
    MatrixXd theta = core.inv_s2_minus_s3l * (0.5 * MatrixXd::Identity(n, n) - ops.N.A);
    out.theta_small = {"theta", theta, ops.grid.w, false};
    out.op = {"Theta", -(ops.Lambda.A * theta), ops.grid.w, false};
  } else {
    MatrixXd xi = core.inv_s2_minus_s3l * ops.S1.A;
    if (kind == ProblemKind::Xi) {
      out.op = {"Xi", xi, ops.grid.w, false};
    } else {
      out.op = {"Pi", xi - MatrixXd(ops.grid.curvature.asDiagonal()), ops.grid.w, false};
    }
  }
  out.asymmetry_raw = detail::symmetrize(out.op);
  return out;
}

struct EigenPair {
  int index = 0;
  double mu = 0;      // raw operator eigenvalue
  double lambda = 0;  // mu^{1/3} for Theta, mu otherwise
  VectorXd phi;       // nodal trace, weight-normalized ||phi||_{L2} = 1
  bool clamped = false;
};

// Ascending eigenpairs of the symmetrized weight-conjugated matrix; small
// negative eigenvalues in (-tol, 0) are clamped to 0 and flagged.
inline std::vector<EigenPair> spectrum(const SteklovAssembly& asmb, int count,
                                       double clamp_tol = 1e-8) {
  const DiscreteOperator& op = asmb.op;
  const int n = static_cast<int>(op.A.rows());
  if (count > n / 4) throw std::invalid_argument("spectrum: count exceeds N/4 accuracy ceiling");
  VectorXd s = op.w.array().sqrt();
  MatrixXd B = s.asDiagonal() * op.A * s.cwiseInverse().asDiagonal();
  B = 0.5 * (B + B.transpose());  // exact symmetry for the solver
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(B);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");

  std::vector<EigenPair> pairs;
  pairs.reserve(count);
  for (int i = 0; i < count; ++i) {
    EigenPair p;
    p.index = i;
    p.mu = es.eigenvalues()(i);
    if (p.mu > -clamp_tol && p.mu < 0) {
      p.mu = 0;
      p.clamped = true;
    }
    p.lambda = asmb.kind == ProblemKind::Theta ? std::cbrt(std::max(p.mu, 0.0)) : p.mu;
    p.phi = s.cwiseInverse().asDiagonal() * es.eigenvectors().col(i);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

// (u, dnu u, lap u, dnu lap u) on the boundary; enough to evaluate the
// eigenfunction anywhere inside via the representation formula.
struct CauchyData {
  VectorXd u, dnu_u, lap_u, dnu_lap_u;
};

inline CauchyData cauchy_data(ProblemKind kind, const EigenPair& pair,
                              const SteklovAssembly& asmb, const BoundaryOps& ops) {
  const int n = ops.grid.n;
  CauchyData cd;
  switch (kind) {
    case ProblemKind::Theta:
      cd.u = pair.phi;
      cd.dnu_u = VectorXd::Zero(n);
      cd.lap_u = asmb.theta_small.A * pair.phi;
      cd.dnu_lap_u = -pair.mu * pair.phi;
      break;
    case ProblemKind::Xi:
      cd.u = VectorXd::Zero(n);
      cd.dnu_u = pair.phi;
      cd.lap_u = pair.lambda * pair.phi;
      cd.dnu_lap_u = ops.Lambda.A * cd.lap_u;
      break;
    case ProblemKind::Pi:
      cd.u = VectorXd::Zero(n);
      cd.dnu_u = pair.phi;
      cd.lap_u = (pair.lambda + ops.grid.curvature.array()).matrix().asDiagonal() * pair.phi;
      cd.dnu_lap_u = ops.Lambda.A * cd.lap_u;
      break;
  }
  return cd;
}

// Boundary quadrature of dnu_u * lap_u - u * dnu_lap_u (equals the interior
// energy integral of (lap u)^2 for biharmonic u).
inline double boundary_energy(const CauchyData& cd, const QuadratureGrid& g) {
  return (g.w.array() *
          (cd.dnu_u.array() * cd.lap_u.array() - cd.u.array() * cd.dnu_lap_u.array()))
      .sum();
}

// Green reciprocity: Int dnu lap(u) v - lap(u) dnu(v) + dnu(u) lap(v) - u dnu lap(v)
// vanishes for biharmonic u, v.
inline double reciprocity_residual(const CauchyData& a, const CauchyData& b,
                                   const QuadratureGrid& g) {
  return (g.w.array() *
          (a.dnu_lap_u.array() * b.u.array() - a.lap_u.array() * b.dnu_u.array() +
           a.dnu_u.array() * b.lap_u.array() - a.u.array() * b.dnu_lap_u.array()))
      .sum();
}

}  // namespace steklov
