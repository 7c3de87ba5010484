#include <catch2/catch_amalgamated.hpp>

#include <steklov/disk_oracle.hpp>
#include <steklov/field.hpp>
#include <steklov/layer.hpp>
#include <steklov/nodal.hpp>
#include <steklov/operators.hpp>

using namespace steklov;

TEST_CASE("trig interpolant reproduces a band-limited trace") {
  int n = 64;
  VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = std::cos(4.0 * two_pi * i / n) - 0.5;
  TrigInterpolant g(f);
  CHECK(g.value(0.3) == Catch::Approx(std::cos(1.2) - 0.5).margin(1e-12));
  CHECK(g.deriv(0.3) == Catch::Approx(-4.0 * std::sin(1.2)).margin(1e-11));
  CHECK(g.deriv2(0.3) == Catch::Approx(-16.0 * std::cos(1.2)).margin(1e-10));
}

TEST_CASE("boundary zero counting with level shifts") {
  int n = 128;
  VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = std::cos(3.0 * two_pi * i / n);
  BoundaryZeros z0 = boundary_zeros(f, 0.0);
  CHECK(z0.count == 6);
  BoundaryZeros zh = boundary_zeros(f, 0.5);  // cos(3t) = 0.5 also has 6 roots
  CHECK(zh.count == 6);
  BoundaryZeros z2 = boundary_zeros(f, 2.0);  // level above the range: none
  CHECK(z2.count == 0);
  // refined roots satisfy the equation
  for (double t : z0.params) CHECK(std::abs(std::cos(3.0 * t)) < 1e-12);
}

TEST_CASE("marching squares recovers a circle length to grid accuracy") {
  // synthetic field r^2 - R^2 on the unit-disk lattice; level set is the
  // circle of radius R with length 2 pi R
  BoundaryCurve curve = BoundaryCurve::from_spec("disk");
  for (int res : {101, 201}) {
    InteriorGrid igrid = build_interior_grid(curve, res, 0.15);
    ScalarField f;
    f.grid = &igrid;
    f.values.resize(igrid.nx, igrid.ny);
    for (int iy = 0; iy < igrid.ny; ++iy)
      for (int ix = 0; ix < igrid.nx; ++ix)
        f.values(ix, iy) = igrid.node(ix, iy).squaredNorm() - 0.25;
    NodalGeometry ng = level_set_extract(f, 0.0);
    INFO("res=" << res);
    CHECK(std::abs(ng.raw_length - M_PI) < 20.0 * igrid.h);
  }
}

TEST_CASE("boundary identity fixture: cos(k t) gives 4k^2 on both sides") {
  BoundaryCurve curve = BoundaryCurve::from_spec("disk");
  int n = 256;
  for (int k : {1, 3, 8, 16}) {
    VectorXd phi(n);
    for (int i = 0; i < n; ++i) phi[i] = std::cos(k * two_pi * i / n);
    BoundaryIdentityReport rep = boundary_ibp_residual(curve, phi, 0.0);
    INFO("k=" << k);
    CHECK(rep.zero_count == 2 * k);
    CHECK(rep.lhs == Catch::Approx(4.0 * k * k).margin(1e-8 * 4 * k * k));
    CHECK(rep.rhs == Catch::Approx(4.0 * k * k).margin(1e-8 * 4 * k * k));
    CHECK(rep.residual <= 1e-8);
  }
}

namespace {

struct ModeFixture {
  BoundaryCurve curve = BoundaryCurve::from_spec("disk");
  QuadratureGrid grid;
  BoundaryOps ops;
  SteklovAssembly asmb;
  std::vector<EigenPair> pairs;
  ModeFixture(ProblemKind kind, int n, int count)
      : grid(build_quadrature(curve, n)),
        ops(assemble_boundary_ops(curve, grid)),
        asmb(assemble_operator(kind, ops)),
        pairs(spectrum(asmb, count)) {}
};

}  // namespace

TEST_CASE("interior identity fixture: B = S = 48 for the XI k = 2 mode") {
  ModeFixture fx(ProblemKind::Xi, 128, 6);
  const EigenPair& p = fx.pairs[3];  // k = 2, lambda = 6
  REQUIRE(p.lambda == Catch::Approx(6.0).margin(1e-8));
  CauchyData cd = cauchy_data(ProblemKind::Xi, p, fx.asmb, fx.ops);
  // rescale so dnu u = cos(2 theta) exactly (fixture normalization)
  double amp = std::sqrt((fx.grid.w.array() * cd.dnu_u.array().square()).sum() / M_PI);
  cd.u /= amp; cd.dnu_u /= amp; cd.lap_u /= amp; cd.dnu_lap_u /= amp;
  FieldEvaluator ev(fx.curve, fx.grid, cd);
  InteriorGrid igrid = build_interior_grid(fx.curve, 201, 0.1);
  InteriorIdentityReport rep =
      interior_ibp_residual(fx.curve, fx.grid, cd, p.lambda, ev, igrid, 0.0);
  CHECK(rep.B == Catch::Approx(48.0).margin(0.5));
  CHECK(rep.S == Catch::Approx(48.0).margin(48.0 * 0.05));
  CHECK(rep.residual <= 0.05);
  CHECK(rep.S_raw < rep.S);  // collar completion added something
}

TEST_CASE("interior flux fixture: F = 48 for the THETA k = 2 mode") {
  ModeFixture fx(ProblemKind::Theta, 128, 6);
  const EigenPair& p = fx.pairs[3];  // k = 2, mu = 24
  REQUIRE(p.mu == Catch::Approx(24.0).margin(1e-8));
  CauchyData cd = cauchy_data(ProblemKind::Theta, p, fx.asmb, fx.ops);
  double amp = std::sqrt((fx.grid.w.array() * cd.u.array().square()).sum() / M_PI);
  cd.u /= amp; cd.dnu_u /= amp; cd.lap_u /= amp; cd.dnu_lap_u /= amp;
  FieldEvaluator ev(fx.curve, fx.grid, cd);
  InteriorGrid igrid = build_interior_grid(fx.curve, 201, 0.1);
  FluxReport rep = interior_flux_check(ProblemKind::Theta, fx.curve, fx.grid, cd,
                                       p.lambda, ev, igrid);
  CHECK(rep.F == Catch::Approx(48.0).margin(48.0 * 0.05));
  CHECK(rep.boundary == Catch::Approx(96.0).margin(0.5));
  CHECK(rep.residual <= 0.05);
  CHECK(rep.ratio >= 0.9);
}

TEST_CASE("XI interior nodal length scales as 2k(1 - delta)") {
  // nodal set of the k-th XI mode is k diameters; the collar strip removes
  // delta from each of the 2k radii, completed back by the ray rule
  ModeFixture fx(ProblemKind::Xi, 128, 11);
  double delta = 0.1;
  InteriorGrid igrid = build_interior_grid(fx.curve, 201, delta);
  for (int k : {2, 4}) {
    const EigenPair& p = fx.pairs[2 * k - 1];
    CauchyData cd = cauchy_data(ProblemKind::Xi, p, fx.asmb, fx.ops);
    FieldEvaluator ev(fx.curve, fx.grid, cd);
    ScalarField f = field_on_grid(ev, igrid, FieldComponent::E);
    NodalGeometry ng = level_set_extract(f, 0.0);
    BoundaryZeros bz = boundary_zeros(cd.dnu_u, 0.0);
    INFO("k=" << k);
    CHECK(bz.count == 2 * k);
    CHECK(ng.raw_length == Catch::Approx(2.0 * k * (1.0 - delta)).epsilon(0.05));
    CHECK(ng.raw_length + bz.count * delta == Catch::Approx(2.0 * k).epsilon(0.05));
  }
}
