// Acceptance suite: one pass/fail line per criterion, exit code = #failures.
// Tolerances are pinned here and in the verification suites they delegate to.

#include <steklov/steklov.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace sk = steklov;

namespace {

int g_failed = 0;

void line(int idx, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s %2d/13 %s  [%s]\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Worst check whose id starts with one of the prefixes; pass iff all pass.
struct SuiteSlice {
  bool pass = true;
  std::string detail = "no matching checks";
  int matched = 0;
};

SuiteSlice slice(const std::vector<sk::SuiteReport>& reports,
                 const std::vector<std::string>& prefixes) {
  SuiteSlice s;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& rep : reports)
    for (const auto& c : rep.checks)
      for (const auto& p : prefixes) {
        if (c.id.rfind(p, 0) != 0) continue;
        ++s.matched;
        if (!c.pass) s.pass = false;
        double tol = std::abs(c.tolerance) > 0 ? std::abs(c.tolerance) : 1.0;
        double margin = (tol - std::abs(c.measured - c.expected)) / tol;
        if (!c.pass || margin < worst_margin) {
          worst_margin = margin;
          s.detail = c.id + " measured=" + fmt(c.measured) + " tol=" + fmt(c.tolerance);
        }
        break;
      }
  if (s.matched == 0) s.pass = false;
  return s;
}

struct DiskModes {
  sk::BoundaryCurve curve = sk::BoundaryCurve::disk();
  sk::QuadratureGrid grid;
  sk::BoundaryOps ops;
  sk::SteklovAssembly theta, xi, pi;
  std::vector<sk::EigenPair> tp, xp, pp;
  explicit DiskModes(int n, int count)
      : grid(sk::build_quadrature(curve, n)),
        ops(sk::assemble_boundary_ops(curve, grid)),
        theta(sk::assemble_operator(sk::ProblemKind::Theta, ops)),
        xi(sk::assemble_operator(sk::ProblemKind::Xi, ops)),
        pi(sk::assemble_operator(sk::ProblemKind::Pi, ops)),
        tp(sk::spectrum(theta, count)),
        xp(sk::spectrum(xi, count)),
        pp(sk::spectrum(pi, count)) {}
  const sk::SteklovAssembly& asmb(sk::ProblemKind k) const {
    return k == sk::ProblemKind::Theta ? theta : k == sk::ProblemKind::Xi ? xi : pi;
  }
  const std::vector<sk::EigenPair>& pairs(sk::ProblemKind k) const {
    return k == sk::ProblemKind::Theta ? tp : k == sk::ProblemKind::Xi ? xp : pp;
  }
};

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  return sk::fit_scaling_exponent(xs, ys).slope;
}

}  // namespace

int main() {
  sk::VerifyConfig cfg;  // defaults: N=256, grid 301

  // Suites reused for criteria 1-7.
  sk::SuiteReport rep_symbols = sk::run_suite("symbols", cfg);
  sk::SuiteReport rep_layers = sk::run_suite("layers", cfg);
  sk::SuiteReport rep_disk = sk::run_suite("disk", cfg);
  sk::VerifyConfig cfg_ident = cfg;
  cfg_ident.grid_resolution = 201;
  sk::SuiteReport rep_ident = sk::run_suite("identities", cfg_ident);
  std::vector<sk::SuiteReport> rep_scaling;
  for (const char* d : {"disk", "ellipse:2,1", "kite"}) {
    sk::VerifyConfig c = cfg;
    c.domain = d;
    c.n = 512;
    rep_scaling.push_back(sk::run_suite("scaling", c));
  }

  {
    SuiteSlice s = slice({rep_disk}, {"disk/spectrum/", "disk/multiplicity/"});
    line(1, s.pass, "disk spectra match closed forms to 1e-6 with exact multiplicity",
         s.detail);
  }
  {
    SuiteSlice s = slice({rep_layers}, {"layers/multiplier/"});
    line(2, s.pass, "circle layer multipliers match the oracle table to 1e-7", s.detail);
  }
  {
    SuiteSlice s = slice({rep_layers}, {"layers/jump/", "layers/continuity/"});
    line(3, s.pass, "double-layer jump 1e-5 and L1-L3 continuity 1e-6 on all domains",
         s.detail);
  }
  {
    SuiteSlice s = slice({rep_symbols}, {"symbols/"});
    line(4, s.pass, "half-space symbol integrals match closed forms to 1e-7", s.detail);
  }
  {
    SuiteSlice s = slice({rep_scaling[1], rep_scaling[2]}, {"scaling/slope/"});
    SuiteSlice r = slice({rep_scaling[0]}, {"scaling/disk-ratio"});
    line(5, s.pass && r.pass,
         "eigenvalue growth exponents 3 / 1 within 0.05 and disk ratio 1 + 1/k",
         s.pass ? r.detail : s.detail);
  }
  {
    SuiteSlice s = slice({rep_ident}, {"identities/green-energy/", "identities/reciprocity/"});
    line(6, s.pass, "Green boundary energy >= -1e-8 and reciprocity residual <= 1e-6",
         s.detail);
  }
  {
    SuiteSlice s = slice({rep_ident, rep_disk},
                         {"identities/xi-minus-pi/", "identities/asymmetry/",
                          "disk/spectrum/pi"});
    line(7, s.pass, "Xi = Pi + curvature with symmetric operators and exact Pi spectrum",
         s.detail);
  }

  // Criterion 8: interior identity, disk modes k = 1..8, all three problems.
  DiskModes dm(128, 32);
  sk::InteriorGrid igrid = sk::build_interior_grid(dm.curve, 201, 0.1);
  {
    double worst = 0;
    std::string worst_id;
    double b48 = 0;
    for (sk::ProblemKind kind :
         {sk::ProblemKind::Theta, sk::ProblemKind::Xi, sk::ProblemKind::Pi})
      for (int k = 1; k <= 8; ++k) {
        const sk::EigenPair& p = dm.pairs(kind)[2 * k - 1];
        sk::CauchyData cd = sk::cauchy_data(kind, p, dm.asmb(kind), dm.ops);
        sk::FieldEvaluator ev(dm.curve, dm.grid, cd);
        sk::InteriorIdentityReport r =
            sk::interior_ibp_residual(dm.curve, dm.grid, cd, p.lambda, ev, igrid, 0.0);
        if (r.residual > worst) {
          worst = r.residual;
          worst_id = std::string(sk::problem_name(kind)) + " k=" + std::to_string(k);
        }
        // traces are weight-normalized; the fixture trace cos(2 theta) is a
        // factor sqrt(pi) larger, and B is linear in the mode (the sign
        // factor is scale-invariant)
        if (kind == sk::ProblemKind::Xi && k == 2) b48 = r.B * std::sqrt(M_PI);
      }
    bool pass = worst <= 0.05 && std::abs(b48 - 48.0) <= 1e-6 * 48.0;
    line(8, pass, "interior identity |B - S|/B <= 5% (k=1..8, all problems), B = 48 fixture",
         "worst " + worst_id + " residual=" + fmt(worst) + " B=" + fmt(b48));
  }

  // Criterion 9: interior flux for THETA modes.
  {
    double worst_ratio = 1e300, f48 = 0, res48 = 0;
    for (int k = 1; k <= 8; ++k) {
      const sk::EigenPair& p = dm.tp[2 * k - 1];
      sk::CauchyData cd = sk::cauchy_data(sk::ProblemKind::Theta, p, dm.theta, dm.ops);
      sk::FieldEvaluator ev(dm.curve, dm.grid, cd);
      sk::FluxReport r = sk::interior_flux_check(sk::ProblemKind::Theta, dm.curve,
                                                 dm.grid, cd, p.lambda, ev, igrid);
      worst_ratio = std::min(worst_ratio, r.ratio);
      if (k == 2) {
        f48 = r.F * std::sqrt(M_PI);  // F is linear in the mode, like B
        res48 = r.residual;
      }
    }
    bool pass = worst_ratio >= 0.9 && std::abs(f48 - 48.0) <= 0.05 * 48.0 && res48 <= 0.05;
    line(9, pass, "interior flux F = 48 fixture within 5% and ratio >= 0.9 for k = 1..8",
         "F=" + fmt(f48) + " residual=" + fmt(res48) + " min ratio=" + fmt(worst_ratio));
  }

  // Criterion 10: boundary identity on pure modes, both sides 4k^2.
  {
    double worst = 0;
    for (int k = 1; k <= 16; ++k) {
      int n = 256;
      sk::VectorXd phi(n);
      for (int i = 0; i < n; ++i) phi[i] = std::cos(k * sk::two_pi * i / n);
      sk::BoundaryIdentityReport r = sk::boundary_ibp_residual(dm.curve, phi, 0.0);
      worst = std::max({worst, r.residual, std::abs(r.lhs - 4.0 * k * k) / (4.0 * k * k),
                        std::abs(r.rhs - 4.0 * k * k) / (4.0 * k * k)});
    }
    line(10, worst <= 1e-8, "boundary identity: cos(k t) gives 4k^2 to 1e-8 for k <= 16",
         "worst residual=" + fmt(worst));
  }

  // Criterion 11: nodal scaling.
  {
    // (a) boundary zero count vs lambda, THETA modes, disk and kite
    DiskModes dm256(256, 34);
    bool pass = true;
    std::string detail;
    // every eigenfunction with index in the k = 4..16 band; off the disk the
    // near-degenerate branches interleave, so no pair grouping is assumed,
    // and the same bias-corrected fit as criterion 5 absorbs the O(1)
    // eigenvalue offset of the finite window
    auto count_slope = [&](const std::vector<sk::EigenPair>& pairs) {
      std::vector<double> xs, ys;
      for (int j = 7; j <= 32; ++j) {
        xs.push_back(pairs[j].lambda);
        ys.push_back(sk::boundary_zeros(pairs[j].phi, 0.0).count);
      }
      return sk::fit_asymptotic_exponent(xs, ys);
    };
    double slope_disk = count_slope(dm256.tp);
    sk::BoundaryCurve kite = sk::BoundaryCurve::kite();
    sk::QuadratureGrid gk = sk::build_quadrature(kite, 256);
    sk::BoundaryOps opsk = sk::assemble_boundary_ops(kite, gk);
    sk::SteklovAssembly thk = sk::assemble_operator(sk::ProblemKind::Theta, opsk);
    double slope_kite = count_slope(sk::spectrum(thk, 34));
    if (std::abs(slope_disk - 1.0) > 0.05 || std::abs(slope_kite - 1.0) > 0.05) pass = false;
    detail = "count slopes disk=" + fmt(slope_disk) + " kite=" + fmt(slope_kite);

    // (b) XI interior nodal length = 2k(1 - delta) within 5%
    double worst_len = 0;
    for (int k : {2, 3, 4}) {
      const sk::EigenPair& p = dm.xp[2 * k - 1];
      sk::CauchyData cd = sk::cauchy_data(sk::ProblemKind::Xi, p, dm.xi, dm.ops);
      sk::FieldEvaluator ev(dm.curve, dm.grid, cd);
      sk::ScalarField f = sk::field_on_grid(ev, igrid, sk::FieldComponent::E);
      sk::NodalGeometry ng = sk::level_set_extract(f, 0.0);
      double expect = 2.0 * k * 0.9;  // 2k radii minus the 0.1 collar on each
      worst_len = std::max(worst_len, std::abs(ng.raw_length - expect) / expect);
    }
    if (worst_len > 0.05) pass = false;
    detail += " xi length err=" + fmt(worst_len);

    // (c) level-set length of {lap e = 0} must not decay with lambda
    std::vector<double> xs, ys;
    for (int k : {4, 6, 8, 12, 16}) {
      const sk::EigenPair& p = dm.xp[2 * k - 1];
      sk::CauchyData cd = sk::cauchy_data(sk::ProblemKind::Xi, p, dm.xi, dm.ops);
      sk::FieldEvaluator ev(dm.curve, dm.grid, cd);
      sk::ScalarField f = sk::field_on_grid(ev, igrid, sk::FieldComponent::LapE);
      sk::NodalGeometry ng = sk::level_set_extract(f, 0.0);
      sk::BoundaryZeros bz = sk::boundary_zeros(cd.lap_u, 0.0);
      xs.push_back(p.lambda);
      ys.push_back(ng.raw_length + bz.count * igrid.delta);
    }
    double zslope = ols_slope(xs, ys);
    if (zslope < -0.05) pass = false;
    detail += " level-length slope=" + fmt(zslope);
    line(11, pass, "nodal scaling: count slope 1 +- 0.05, XI length 2k(1-d), no decay",
         detail);
  }

  // Criterion 12: interior field reconstruction vs the oracle, k <= 8.
  {
    sk::InteriorGrid fgrid = sk::build_interior_grid(dm.curve, 201, 0.05);
    double sup = 0;
    std::string worst_id;
    for (sk::ProblemKind kind :
         {sk::ProblemKind::Theta, sk::ProblemKind::Xi, sk::ProblemKind::Pi})
      for (int k = 0; k <= 8; ++k) {
        const sk::EigenPair& p = dm.pairs(kind)[k == 0 ? 0 : 2 * k - 1];
        sk::CauchyData cd = sk::cauchy_data(kind, p, dm.asmb(kind), dm.ops);
        sk::FieldEvaluator ev(dm.curve, dm.grid, cd);
        // project the trace onto the degenerate cos/sin oracle pair
        double a = 0, b = 0, norm = k == 0 ? 2.0 * M_PI : M_PI;
        for (int i = 0; i < dm.grid.n; ++i) {
          a += dm.grid.w[i] * p.phi[i] * std::cos(k * dm.grid.t[i]) / norm;
          b += dm.grid.w[i] * p.phi[i] * std::sin(k * dm.grid.t[i]) / norm;
        }
        sk::oracle::DiskMode mc = sk::oracle::disk_mode(kind, k, sk::oracle::Parity::Cos);
        sk::oracle::DiskMode ms = sk::oracle::disk_mode(kind, k, sk::oracle::Parity::Sin);
        double worst = 0;
        for (int iy = 0; iy < fgrid.ny; ++iy)
          for (int ix = 0; ix < fgrid.nx; ++ix) {
            if (!fgrid.usable(ix, iy)) continue;
            sk::Vector2d q = fgrid.node(ix, iy);
            sk::FieldSample s = ev(q);
            sk::oracle::FieldValues fc = sk::oracle::eval(mc, q);
            sk::oracle::FieldValues fs = sk::oracle::eval(ms, q);
            worst = std::max(worst, std::abs(s.e - (a * fc.e + b * fs.e)));
            worst = std::max(worst, std::abs(s.lap_e - (a * fc.lap_e + b * fs.lap_e)));
          }
        if (worst > sup) {
          sup = worst;
          worst_id = std::string(sk::problem_name(kind)) + " k=" + std::to_string(k);
        }
      }
    line(12, sup <= 1e-6, "interior fields match the disk oracle to 1e-6 off the collar",
         "sup=" + fmt(sup) + " at " + worst_id);
  }

  // Criterion 13: byte-identical verification reports, metadata excluded.
  {
    sk::VerifyConfig c;
    c.n = 128;
    c.grid_resolution = 151;
    sk::SuiteReport r1 = sk::run_suite("all", c);
    sk::SuiteReport r2 = sk::run_suite("all", c);
    std::string j1 = sk::suite_to_json(r1, false).dump(2);
    std::string j2 = sk::suite_to_json(r2, false).dump(2);
    line(13, j1 == j2 && !j1.empty(), "consecutive full verification runs are byte-identical",
         j1 == j2 ? "reports match (" + std::to_string(j1.size()) + " bytes)"
                  : "reports differ");
  }

  std::printf("%d/13 criteria passed\n", 13 - g_failed);
  return g_failed;
}
