#include <catch2/catch_amalgamated.hpp>

#include <steklov/geometry.hpp>

using namespace steklov;

TEST_CASE("curvature integrates to 2*pi on every built-in curve") {
  for (const char* spec : {"disk", "ellipse:2,1", "kite", "star:0.03,5"}) {
    BoundaryCurve c = BoundaryCurve::from_spec(spec);
    QuadratureGrid g = build_quadrature(c, 128);
    double total = 0;
    for (int i = 0; i < g.n; ++i) total += g.curvature[i] * g.w[i];
    INFO(spec);
    CHECK(total == Catch::Approx(two_pi).margin(1e-10));
  }
}

TEST_CASE("normals point outward and are unit length") {
  for (const char* spec : {"disk", "ellipse:2,1", "kite", "star:0.03,5"}) {
    BoundaryCurve c = BoundaryCurve::from_spec(spec);
    QuadratureGrid g = build_quadrature(c, 64);
    Vector2d centroid = g.points.colwise().mean().transpose();
    for (int i = 0; i < g.n; ++i) {
      Vector2d nu = g.normals.row(i).transpose();
      Vector2d p = g.points.row(i).transpose();
      CHECK(nu.norm() == Catch::Approx(1.0).margin(1e-13));
      CHECK(nu.dot(p - centroid) > 0);
    }
  }
}

TEST_CASE("ellipse perimeter matches series value") {
  // Gauss-Kummer series for semi-axes 2, 1
  BoundaryCurve c = BoundaryCurve::from_spec("ellipse:2,1");
  QuadratureGrid g = build_quadrature(c, 256);
  CHECK(g.arclength() == Catch::Approx(9.688448220547675).margin(1e-10));
}

TEST_CASE("unit disk parametrization is exact") {
  BoundaryCurve c = BoundaryCurve::from_spec("disk");
  QuadratureGrid g = build_quadrature(c, 32);
  for (int i = 0; i < g.n; ++i) {
    CHECK(g.points.row(i).norm() == Catch::Approx(1.0).margin(1e-14));
    CHECK(g.speed[i] == Catch::Approx(1.0).margin(1e-14));
    CHECK(g.curvature[i] == Catch::Approx(1.0).margin(1e-14));
  }
  CHECK(g.arclength() == Catch::Approx(two_pi).margin(1e-13));
}

TEST_CASE("star amplitude precondition is enforced") {
  CHECK_THROWS(BoundaryCurve::from_spec("star:0.3,5"));   // needs eps < 1/25
  CHECK_NOTHROW(BoundaryCurve::from_spec("star:0.03,5"));
}

TEST_CASE("quadrature size is validated") {
  BoundaryCurve c = BoundaryCurve::from_spec("disk");
  CHECK_THROWS(build_quadrature(c, 17));
  CHECK_THROWS(build_quadrature(c, 8));
}

TEST_CASE("interior grid classifies points against the curve") {
  BoundaryCurve c = BoundaryCurve::from_spec("disk");
  InteriorGrid grid = build_interior_grid(c, 101, 0.1);
  int inside = 0, collar = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      double r = grid.node(ix, iy).norm();
      PointClass cls = grid.cls[grid.index(ix, iy)];
      if (cls == PointClass::Inside) {
        ++inside;
        CHECK(r < 0.9 + 1e-9);
      } else if (cls == PointClass::Collar) {
        ++collar;
        CHECK(r > 0.9 - 1e-9);
        CHECK(r < 1.1 + 1e-9);
      } else {
        CHECK(r > 1.0 - 1e-9);
      }
    }
  CHECK(inside > 0);
  CHECK(collar > 0);
  // inside count approximates the area pi (1 - delta)^2
  CHECK(inside * grid.h * grid.h == Catch::Approx(M_PI * 0.81).margin(0.05));
}
