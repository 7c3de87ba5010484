#pragma once

// Interior evaluation of biharmonic eigenfunctions from their Cauchy data via
// the representation formula, on points and on Cartesian grids.

#include "steklov/layer.hpp"
#include "steklov/operators.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace steklov {

inline int worker_count() {
  if (const char* env = std::getenv("STEKLOV_THREADS")) {
    int k = std::atoi(env);
    if (k >= 1) return k;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct FieldSample {
  double e = 0;
  Vector2d grad_e = Vector2d::Zero();
  double lap_e = 0;
  Vector2d grad_lap_e = Vector2d::Zero();
};

// u(x)      = Int [ u dnuLapEhat - dnu_u lapEhat + lap_u dnuEhat - dnu_lap_u Ehat ]
// Delta u(x)= Int [ lap_u dnuE - dnu_lap_u E ]          (Delta u is harmonic;
// note dnuE == dnuLapEhat since LapEhat = E + const).  Densities are
// trigonometrically upsampled so the plain trapezoid rule stays accurate down
// to small boundary distances.
class FieldEvaluator {
 public:
  FieldEvaluator(const BoundaryCurve& curve, const QuadratureGrid& grid,
                 const CauchyData& cd, int upsample = 8)
      : fine_(build_quadrature(curve, grid.n * upsample)) {
    u_ = trig_upsample(cd.u, upsample);
    dnu_u_ = trig_upsample(cd.dnu_u, upsample);
    lap_u_ = trig_upsample(cd.lap_u, upsample);
    dnu_lap_u_ = trig_upsample(cd.dnu_lap_u, upsample);
  }

  FieldSample operator()(const Vector2d& p) const {
    FieldSample out;
    for (int j = 0; j < fine_.n; ++j) {
      Vector2d y = fine_.points.row(j);
      Vector2d nu = fine_.normals.row(j);
      KernelBundle k = kernel_values(p, y, nu);
      KernelGradients g = kernel_gradients(p, y, nu);
      double w = fine_.w(j);
      out.e += w * (u_(j) * k.dnu_lap_Ehat - dnu_u_(j) * k.lap_Ehat +
                    lap_u_(j) * k.dnu_Ehat - dnu_lap_u_(j) * k.Ehat);
      out.grad_e += w * (u_(j) * g.dnu_lap_Ehat - dnu_u_(j) * g.lap_Ehat +
                         lap_u_(j) * g.dnu_Ehat - dnu_lap_u_(j) * g.Ehat);
      out.lap_e += w * (lap_u_(j) * k.dnu_lap_Ehat - dnu_lap_u_(j) * k.E);
      out.grad_lap_e += w * (lap_u_(j) * g.dnu_lap_Ehat - dnu_lap_u_(j) * g.E);
    }
    return out;
  }

  const QuadratureGrid& fine_grid() const { return fine_; }

 private:
  QuadratureGrid fine_;
  VectorXd u_, dnu_u_, lap_u_, dnu_lap_u_;
};

enum class FieldComponent { E, LapE };

// Field values on an interior grid; entries at Outside nodes stay zero, and
// Collar nodes are filled only when include_collar is set (the level-set
// routines exclude collar cells anyway).
struct ScalarField {
  const InteriorGrid* grid = nullptr;
  FieldComponent component = FieldComponent::E;
  MatrixXd values;  // (ix, iy) indexed as values(ix, iy)
};

inline ScalarField field_on_grid(const FieldEvaluator& ev, const InteriorGrid& grid,
                                 FieldComponent comp = FieldComponent::E,
                                 bool include_collar = false) {
  ScalarField f;
  f.grid = &grid;
  f.component = comp;
  f.values = MatrixXd::Zero(grid.nx, grid.ny);
  int nthreads = worker_count();
  auto work = [&](int iy0, int stride) {
    for (int iy = iy0; iy < grid.ny; iy += stride)
      for (int ix = 0; ix < grid.nx; ++ix) {
        PointClass c = grid.cls[grid.index(ix, iy)];
        if (c == PointClass::Inside || (include_collar && c == PointClass::Collar)) {
          FieldSample s = ev(grid.node(ix, iy));
          f.values(ix, iy) = comp == FieldComponent::E ? s.e : s.lap_e;
        }
      }
  };
  if (nthreads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(work, k, nthreads);
    for (auto& t : pool) t.join();
  }
  return f;
}

}  // namespace steklov
