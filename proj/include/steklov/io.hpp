#pragma once

// Serialization: spectrum / nodal-geometry / suite-report JSON, CSV tables,
// and SVG nodal plots.  Nondeterministic values (timings) are confined to a
// "meta" object so reports can be compared byte-for-byte without it.

#include "steklov/operators.hpp"
#include "steklov/nodal.hpp"
#include "steklov/verify.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace steklov {

using nlohmann::json;

inline std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json spectrum_to_json(ProblemKind kind, const std::string& domain, int n,
                             const SteklovAssembly& asmb,
                             const std::vector<EigenPair>& pairs) {
  json j;
  j["problem"] = problem_name(kind);
  j["domain"] = domain;
  j["N"] = n;
  j["eigenvalues"] = json::array();
  j["lambda"] = json::array();
  j["clamped"] = json::array();
  for (const auto& p : pairs) {
    j["eigenvalues"].push_back(p.mu);
    j["lambda"].push_back(p.lambda);
    if (p.clamped) j["clamped"].push_back(p.index);
  }
  j["asymmetry"] = asmb.asymmetry_raw;
  j["condition_number"] = asmb.condition_number;
  return j;
}

inline json nodal_to_json(const NodalGeometry& g) {
  json j;
  j["alpha"] = g.alpha;
  j["length"] = g.length;
  j["raw_length"] = g.raw_length;
  j["boundary_zero_count"] = g.boundary_zero_count;
  j["collar_excluded_cells"] = g.collar_excluded_cells;
  j["ambiguous_cells"] = g.ambiguous_cells;
  j["segments"] = json::array();
  for (const auto& s : g.segments) j["segments"].push_back({s[0], s[1], s[2], s[3]});
  return j;
}

inline json suite_to_json(const SuiteReport& r, bool with_meta = true) {
  json j;
  j["suite"] = r.suite;
  j["domain"] = r.domain;
  j["N"] = r.n;
  j["grid"] = r.grid;
  j["delta"] = r.delta;
  j["admissibility_c"] = r.admissibility_c;
  j["pass"] = r.pass();
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"id", c.id},
                           {"description", c.description},
                           {"measured", c.measured},
                           {"expected", c.expected},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  if (with_meta) j["meta"] = {{"wall_seconds", r.wall_seconds}};
  return j;
}

// One row per check: suite, id, measured, expected, tolerance, pass.
inline std::string suite_to_csv(const SuiteReport& r) {
  std::string out = "suite,id,measured,expected,tolerance,pass\n";
  for (const auto& c : r.checks)
    out += r.suite + "," + c.id + "," + num17(c.measured) + "," + num17(c.expected) +
           "," + num17(c.tolerance) + "," + (c.pass ? "1" : "0") + "\n";
  return out;
}

// Boundary trace table: t, x, y, phi (17 significant digits).
inline std::string eigenfunction_to_csv(const QuadratureGrid& g, const VectorXd& phi) {
  std::string out = "t,x,y,phi\n";
  for (int j = 0; j < g.n; ++j)
    out += num17(g.t(j)) + "," + num17(g.points(j, 0)) + "," + num17(g.points(j, 1)) +
           "," + num17(phi(j)) + "\n";
  return out;
}

inline std::string operator_to_csv(const DiscreteOperator& op) {
  std::string out;
  for (int i = 0; i < op.A.rows(); ++i) {
    for (int j = 0; j < op.A.cols(); ++j) {
      if (j) out += ",";
      out += num17(op.A(i, j));
    }
    out += "\n";
  }
  return out;
}

// Stroke-only plot: domain outline plus one path per nodal segment.
inline std::string nodal_to_svg(const BoundaryCurve& curve, const NodalGeometry& g,
                                int size = 640) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const int ns = 512;
  std::vector<Vector2d> outline;
  outline.reserve(ns + 1);
  for (int i = 0; i <= ns; ++i) {
    Vector2d p = curve.point(two_pi * i / ns);
    outline.push_back(p);
    xmin = std::min(xmin, p.x()); xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y()); ymax = std::max(ymax, p.y());
  }
  double span = std::max(xmax - xmin, ymax - ymin) * 1.1;
  double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  auto sx = [&](double x) { return (x - cx) / span * size + size / 2.0; };
  auto sy = [&](double y) { return size / 2.0 - (y - cy) / span * size; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(size) + "\" height=\"" + std::to_string(size) + "\">\n";
  svg += "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  for (size_t i = 0; i < outline.size(); ++i)
    svg += (i ? "L" : "M") + num17(sx(outline[i].x())) + " " + num17(sy(outline[i].y()));
  svg += "Z\"/>\n";
  for (const auto& s : g.segments)
    svg += "<path fill=\"none\" stroke=\"crimson\" stroke-width=\"1\" d=\"M" +
           num17(sx(s[0])) + " " + num17(sy(s[1])) + "L" + num17(sx(s[2])) + " " +
           num17(sy(s[3])) + "\"/>\n";
  svg += "</svg>\n";
  return svg;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace steklov
