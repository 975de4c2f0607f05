// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include "vgraph/analysis.hpp"
#include "vgraph/bench.hpp"
#include "vgraph/cli.hpp"
#include "vgraph/integrate_hmc.hpp"
#include "vgraph/integrate_poly.hpp"
#include "vgraph/io.hpp"
#include "vgraph/minors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace vgraph;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  // Failure explained by a bound the target cannot satisfy; reported as FAIL
  // but does not change the exit status.
  bool known = false;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

std::vector<int> bounded(const Mesh& mesh) { return bounded_cells(mesh); }

// 1 -------------------------------------------------------------------------------
Outcome raycast_efficiency() {
  Outcome o;
  const double heuristic[] = {2.41, 2.46, 2.54, 2.62};
  const double plain[] = {2.70, 2.82, 2.76, 2.76};
  for (int d = 2; d <= 5; ++d) {
    const auto h = bench_raycast(d, 1000, RaycastMethod::incircle_heuristic, 0.0, kSeed);
    const auto p = bench_raycast(d, 1000, RaycastMethod::incircle, 0.0, kSeed);
    o.check(std::abs(h.calls_per_vertex - heuristic[d - 2]) <= 0.3,
            fmt("d=%d incircle_heuristic %.3f calls/vertex (target %.2f +- 0.3)", d,
                h.calls_per_vertex, heuristic[d - 2]));
    o.check(std::abs(p.calls_per_vertex - plain[d - 2]) <= 0.3,
            fmt("d=%d incircle           %.3f calls/vertex (target %.2f +- 0.3)", d,
                p.calls_per_vertex, plain[d - 2]));
    if (d >= 3) {
      const auto b = bench_raycast(d, 1000, RaycastMethod::bisection, 1e-8, kSeed);
      const double ratio = b.calls_per_vertex / h.calls_per_vertex;
      o.check(ratio >= 2.5, fmt("d=%d bisection(1e-8) %.2f calls/vertex, ratio %.2f (>= 2.5)%s", d,
                                b.calls_per_vertex, ratio,
                                b.spurious_vertices ? ", spurious vertices" : ""));
    }
  }
  return o;
}

// 2 -------------------------------------------------------------------------------
Outcome vertex_exactness() {
  Outcome o;
  int exact = 0;
  double worst = 0.0;
  for (int d = 2; d <= 3; ++d)
    for (int inst = 0; inst < 10; ++inst) {
      const NodeSet ns = uniform_cube(d, 50, 1000 * d + inst);
      const Mesh mesh = voronoi_graph(ns, kSeed + inst);
      std::map<IndexSet, Point> want;
      for (auto& v : brute_force_vertices(ns)) want.emplace(v.sigma, v.r);
      bool same = want.size() == mesh.vertices().size();
      for (const auto& v : mesh.vertices()) {
        auto it = want.find(v.sigma);
        if (it == want.end()) {
          same = false;
          continue;
        }
        const double err = (it->second - v.r).norm();
        worst = std::max(worst, err);
        same = same && err <= 1e-8;
        same = same && verify_vertex(ns, v).ok;
      }
      exact += same;
    }
  o.check(exact == 20, fmt("%d/20 instances equal the subset-enumeration oracle", exact));
  o.note(fmt("largest coordinate difference %.2e (limit 1e-8)", worst));
  return o;
}

// 3 -------------------------------------------------------------------------------
Outcome complexity_bound() {
  Outcome o;
  const double table[] = {6.76, 31.8, 187, 1296, 1.03e4, 9.04e4, 8.72e5, 9.09e6, 1.02e8};
  for (int d = 2; d <= 10; ++d) {
    const double b = expected_vertices_lower_bound(d);
    o.check(std::abs(b - table[d - 2]) <= 0.01 * table[d - 2],
            fmt("d=%2d bound %.4g (table %.4g, rel. diff %.2e)", d, b, table[d - 2],
                std::abs(b - table[d - 2]) / table[d - 2]));
  }
  return o;
}

// 4 -------------------------------------------------------------------------------
Outcome empirical_scaling_check() {
  Outcome o;
  const Mesh plane = voronoi_graph(uniform_cube(2, 1000, kSeed), kSeed);
  const ScalingStats s2 = empirical_scaling(plane);
  const ScalingStats s3 = empirical_scaling(voronoi_graph(uniform_cube(3, 1000, kSeed), kSeed));
  const bool ok2 = std::abs(s2.vertices_per_cell - 6.6) <= 0.5;
  const bool ok3 = std::abs(s3.vertices_per_cell - 29.2) <= 0.15 * 29.2;
  o.check(ok2, fmt("d=2 %.3f vertices/cell (target 6.6 +- 0.5); bounded cells only %.3f",
                   s2.vertices_per_cell, s2.bounded_vertices_per_cell));
  o.check(ok3, fmt("d=3 %.3f vertices/cell (target 29.2 +- 15%%); bounded cells only %.3f",
                   s3.vertices_per_cell, s3.bounded_vertices_per_cell));
  o.note(fmt("d=3 %.3f neighbors/cell (table 16.6)", s3.neighbors_per_cell));
  // Euler with a vertex at infinity: 3V = 6N - 6 - 3b for b unbounded edges.
  const double b = static_cast<double>(plane.boundary().size());
  const double euler = 6.0 - (6.0 + 3.0 * b) / 1000.0;
  o.check(std::abs(s2.vertices_per_cell - euler) <= 1e-12,
          fmt("d=2 mean equals the Euler value 6 - (6 + 3b)/N = %.3f (b = %.0f)", euler, b));
  if (!ok2 && ok3 && s2.vertices_per_cell <= 6.0 && std::abs(s2.vertices_per_cell - euler) <= 1e-12) {
    o.known = true;
    o.note("d=2 target exceeds 6, the Euler-formula ceiling for the mean vertices per planar cell");
  }
  return o;
}

// 5 -------------------------------------------------------------------------------
double cofactor(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n == 1) return a(0, 0);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd m(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) m(r - 1, cc++) = a(r, c);
    sum += ((j % 2) ? -1.0 : 1.0) * a(0, j) * cofactor(m);
  }
  return sum;
}

Outcome determinant_recursion() {
  Outcome o;
  auto rng = make_stream(kSeed, "acceptance-minors");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d = 1; d <= 6; ++d) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      Eigen::MatrixXd a(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = u(rng);
      const double want = cofactor(a);
      worst = std::max(worst, std::abs(minor_determinant(a) - want) / std::abs(want));
    }
    o.check(worst <= 1e-9, fmt("d=%d worst relative error %.2e over 100 matrices", d, worst));
  }
  return o;
}

// 6 -------------------------------------------------------------------------------
double shoelace(const Mesh& mesh, int i, Point& centroid) {
  std::vector<Point> pts;
  for (int v : mesh.cell_vertices(i)) pts.push_back(mesh.vertices()[v].r);
  Point c = Point::Zero(2);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  double area = 0.0;
  Point m = Point::Zero(2);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point& p = pts[k];
    const Point& q = pts[(k + 1) % pts.size()];
    const double cross = p[0] * q[1] - q[0] * p[1];
    area += cross;
    m += (p + q) * cross;
  }
  centroid = m / (3.0 * area);
  return 0.5 * area;
}

Outcome poly_exactness() {
  Outcome o;
  const Mesh mesh = voronoi_graph(uniform_cube(2, 1000, kSeed), kSeed);
  const auto cells = bounded(mesh);
  const Integrand f = [](const Point& x) { return 1.5 * x[0] - 0.75 * x[1] + 0.25; };
  const auto cached = integrate_cells_poly(mesh, cells, f, true);
  const auto fresh = integrate_cells_poly(mesh, cells, f, false);
  double vol_err = 0.0, int_err = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    Point c;
    const double area = shoelace(mesh, cells[k], c);
    vol_err = std::max(vol_err, std::abs(cached[k].volume - area));
    int_err = std::max(int_err, std::abs(cached[k].volume_integral - f(c) * area));
  }
  o.check(vol_err <= 1e-10, fmt("%zu bounded cells: max |V - shoelace| = %.2e", cells.size(), vol_err));
  o.check(int_err <= 1e-9, fmt("linear f: max |I - f(centroid) V| = %.2e", int_err));

  for (int d = 2; d <= 3; ++d) {
    const Mesh m = d == 2 ? mesh : voronoi_graph(uniform_cube(3, 1000, kSeed), kSeed);
    const auto cs = bounded(m);
    const auto r = d == 2 ? fresh : integrate_cells_poly(m, cs, f, false);
    std::map<int, const CellIntegrals*> by_cell;
    for (const auto& c : r) by_cell[c.cell] = &c;
    double sym = 0.0;
    std::size_t pairs = 0;
    for (const auto& c : r)
      for (const auto& [j, a] : c.area) {
        auto it = by_cell.find(j);
        if (it == by_cell.end()) continue;
        sym = std::max(sym, std::abs(it->second->area.at(c.cell) - a));
        ++pairs;
      }
    o.check(sym <= 1e-10, fmt("d=%d independently computed A_ij vs A_ji over %zu faces: max diff %.2e",
                              d, pairs, sym));
  }
  return o;
}

// 7 -------------------------------------------------------------------------------
Outcome mc_convergence() {
  Outcome o;
  std::vector<Point> pts;
  for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
    Point p(2);
    p << x, y;
    pts.push_back(p);
  }
  const NodeSet ns(pts);
  KdTreeSource src(ns);
  const int reps = 50;
  std::vector<double> sizes, vol_sd, area_sd;
  for (int n : {1000, 10000, 100000}) {
    double v = 0.0, v2 = 0.0, a = 0.0, a2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      auto rng = make_stream(kSeed, "acceptance-square", static_cast<std::uint64_t>(n) * 1000 + r);
      const auto c = mc_areas_only(src, 0, n, rng);
      double total = 0.0;
      for (const auto& [j, x] : c.area) total += x;
      v += c.volume;
      v2 += c.volume * c.volume;
      a += total;
      a2 += total * total;
    }
    const double vm = v / reps, am = a / reps;
    const double vs = std::sqrt((v2 / reps - vm * vm) * reps / (reps - 1));
    const double as = std::sqrt((a2 / reps - am * am) * reps / (reps - 1));
    sizes.push_back(n);
    vol_sd.push_back(vs);
    area_sd.push_back(as);
    // Each single estimate has standard error sd; the mean of reps has sd / sqrt(reps).
    o.check(std::abs(vm - 1.0) <= 3 * vs / std::sqrt(reps),
            fmt("n=%6d volume mean %.5f, std err %.2e", n, vm, vs));
    o.check(std::abs(am - 4.0) <= 3 * as / std::sqrt(reps),
            fmt("n=%6d area   mean %.5f, std err %.2e", n, am, as));
  }
  const double sv = loglog_slope(sizes, vol_sd), sa = loglog_slope(sizes, area_sd);
  o.check(std::abs(sv + 0.5) <= 0.1, fmt("volume std err slope %.3f (-0.5 +- 0.1)", sv));
  o.check(std::abs(sa + 0.5) <= 0.1, fmt("area std err slope %.3f (-0.5 +- 0.1)", sa));
  return o;
}

// 8 -------------------------------------------------------------------------------
Outcome mc_poly_agreement() {
  Outcome o;
  const Mesh mesh = voronoi_graph(uniform_cube(3, 1000, kSeed), kSeed);
  const auto cells = bounded(mesh);
  const Integrand zero = [](const Point&) { return 0.0; };
  const auto p = integrate_cells_poly(mesh, cells, zero);
  McOptions opt;
  opt.rays = 10000;
  opt.seed = kSeed;
  const auto m = mc_integrate_cells(mesh, cells, Integrand{}, opt);
  int within = 0;
  std::vector<double> rel;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double dv = std::abs(m[k].volume - p[k].volume);
    within += dv <= 4 * m[k].volume_stderr;
    rel.push_back(dv / p[k].volume);
  }
  const double frac = static_cast<double>(within) / cells.size();
  o.check(frac >= 0.95, fmt("%.1f%% of %zu bounded cells within 4 std errors (>= 95%%)", 100 * frac,
                            cells.size()));
  const double med = median(rel);
  o.check(med <= 0.02, fmt("median relative deviation %.3f%% (<= 2%%)", 100 * med));
  return o;
}

// 9 -------------------------------------------------------------------------------
Outcome hmc_consistency() {
  Outcome o;
  const Integrand f = [](const Point& x) { return std::sin(x[0] * x[0]); };
  for (int d = 2; d <= 4; ++d) {
    const Mesh mesh = voronoi_graph(uniform_cube(d, 1000, kSeed), kSeed);
    const auto cells = bounded(mesh);
    const auto p = integrate_cells_poly(mesh, cells, f);
    double worst = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k)
      worst = std::max(worst, std::abs(hmc_volume(mesh, cells[k], p[k].area) - p[k].volume));
    o.check(worst <= 1e-10, fmt("d=%d exact areas: max |V_hmc - V_poly| = %.2e over %zu cells", d,
                                worst, cells.size()));
    McOptions opt;
    opt.rays = 10000;
    opt.seed = kSeed;
    const auto h = hmc_integrate_cells(mesh, cells, f, opt);
    std::vector<double> rel;
    for (std::size_t k = 0; k < cells.size(); ++k)
      rel.push_back(std::abs(h[k].volume_integral - p[k].volume_integral) /
                    std::abs(p[k].volume_integral));
    const double med = median(rel);
    o.check(med <= 0.05, fmt("d=%d MC areas: median |HMC - P| / P = %.3f%% (<= 5%%)", d, 100 * med));
  }
  return o;
}

// 10 ------------------------------------------------------------------------------
Outcome area_fraction_shape() {
  Outcome o;
  o.note("cells with every vertex inside the unit cube");
  const std::vector<int> rays{1000, 3000, 10000};
  const auto bins = bench_area_accuracy(3, 1000, rays, 30, kSeed);
  std::map<int, std::map<int, BinStats>> by_rays;
  for (const auto& b : bins) by_rays[b.rays][b.bin] = b;
  for (int r : rays) {
    const auto& m = by_rays[r];
    const bool have = m.count(1) && m.count(10);
    const double s1 = have ? m.at(1).stddev : 0.0, s10 = have ? m.at(10).stddev : 0.0;
    o.check(have && s1 > s10, fmt("rays=%5d std at 1%% bin %.4f (n=%zu) > std at 10%% bin %.4f (n=%zu)",
                                  r, s1, have ? m.at(1).count : 0, s10,
                                  have ? m.at(10).count : 0));
  }
  // Pooled deviation spread over all bins.
  std::vector<double> x, y;
  for (int r : rays) {
    double n = 0.0, s = 0.0, s2 = 0.0;
    for (const auto& [bin, b] : by_rays[r]) {
      const double c = static_cast<double>(b.count);
      n += c;
      s += c * b.mean;
      s2 += (c - 1) * b.stddev * b.stddev + c * b.mean * b.mean;
    }
    x.push_back(r);
    y.push_back(std::sqrt(s2 / n - (s / n) * (s / n)));
  }
  const double slope = loglog_slope(x, y);
  o.check(std::abs(slope + 0.5) <= 0.1, fmt("pooled std slope over rays %.3f (-0.5 +- 0.1)", slope));
  return o;
}

// 11 ------------------------------------------------------------------------------
std::string run_cli_capture(std::vector<std::string> args) {
  args.insert(args.begin(), "voronoi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (status != 0) throw std::runtime_error("command failed: " + err.str());
  return out.str();
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vgraph-acceptance";
  fs::create_directories(dir);
  const std::string p2 = (dir / "p2.csv").string(), p3 = (dir / "p3.csv").string();
  {
    std::ofstream(p2) << run_cli_capture({"points", "--dim", "2", "--n", "500", "--seed", "11"});
    std::ofstream(p3) << run_cli_capture({"points", "--dim", "3", "--n", "300", "--seed", "12"});
  }
  const std::vector<std::vector<std::string>> commands{
      {"compute", "--input", p3, "--seed", "42"},
      {"integrate", "--method", "mc", "--rays", "1000", "--cells", "all", "--function", "sinx2",
       "--seed", "5", "--input", p3},
      {"integrate", "--method", "mc", "--rays", "1000", "--cells", "interior", "--function",
       "sinx2", "--seed", "5", "--threads", "4", "--input", p3},
      {"integrate", "--method", "poly", "--cells", "interior", "--function", "linear:1,2,3,4",
       "--input", p3},
      {"integrate", "--method", "hmc", "--rays", "1000", "--cells", "interior", "--seed", "5",
       "--input", p3},
      {"stats", "--input", p2},
      {"bound", "--dim", "9"},
      {"bench", "raycast", "--dim", "2", "3", "--n", "300", "--eps", "1e-4", "1e-8", "--seed", "7"},
      {"bench", "area", "--dim", "2", "--n", "300", "--rays", "500", "2000", "--seed", "7"},
      {"bench", "integrals", "--dim", "2", "--n", "300", "--rays", "1000", "--first", "mc",
       "--second", "poly", "--seed", "7", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const std::string a = run_cli_capture(cmd), b = run_cli_capture(cmd);
    std::string name;
    for (std::size_t k = 0; k < std::min<std::size_t>(cmd.size(), 4); ++k) name += cmd[k] + " ";
    o.check(a == b && !a.empty(), fmt("%-40s %zu bytes identical", name.c_str(), a.size()));
  }
  // Thread count must not change Monte-Carlo output.
  const std::vector<std::string> base{"integrate", "--method", "mc", "--rays", "500", "--cells",
                                      "interior", "--seed", "3", "--input", p3};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  o.check(run_cli_capture(one) == run_cli_capture(four), "mc output independent of --threads");
  const auto s1 = run_cli_capture({"bench", "scaling", "--dim", "2", "--n", "200", "400"});
  const auto s2 = run_cli_capture({"bench", "scaling", "--dim", "2", "--n", "200", "400"});
  auto strip = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
      const auto a = line.find(','), b = line.find(',', a + 1), c = line.find(',', b + 1);
      out += line.substr(0, b) + line.substr(c) + "\n";
    }
    return out;
  };
  o.check(strip(s1) == strip(s2), "bench scaling identical apart from the wall-clock column");
  fs::remove_all(dir);
  return o;
}

// Declared substitutes -------------------------------------------------------------------
Outcome scaling_exponent() {
  Outcome o;
  const std::vector<int> sizes{1000, 2000, 4000, 8000, 16000, 32000};
  std::vector<double> x, y;
  for (const auto& row : bench_scaling(2, sizes, kSeed)) {
    x.push_back(row.n);
    y.push_back(row.seconds);
  }
  const double slope = loglog_slope(x, y);
  o.check(slope >= 0.9 && slope <= 1.3, fmt("d=2 log-log time exponent %.3f in [0.9, 1.3]", slope));
  const double t2 = bench_scaling(2, {1000}, kSeed).at(0).seconds;
  const double t6 = bench_scaling(6, {1000}, kSeed).at(0).seconds;
  o.check(t6 > 10 * t2, fmt("n=1000: d=6 %.2f s vs d=2 %.4f s (ratio %.0f > 10)", t6, t2, t6 / t2));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1", "raycast efficiency", 120, raycast_efficiency},
      {"2", "vertex exactness", 300, vertex_exactness},
      {"3", "complexity bound", 1, complexity_bound},
      {"4", "empirical scaling", 0, empirical_scaling_check},
      {"5", "determinant recursion", 10, determinant_recursion},
      {"6", "poly exactness", 0, poly_exactness},
      {"7", "MC convergence", 0, mc_convergence},
      {"8", "MC/poly agreement", 0, mc_poly_agreement},
      {"9", "HMC consistency", 0, hmc_consistency},
      {"10", "area-fraction accuracy shape", 0, area_fraction_shape},
      {"11", "determinism", 0, determinism},
      {"S", "scaling exponent (substitute for wall-clock parity)", 0, scaling_exponent},
  };

  int failed = 0, known = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details.push_back(std::string("FAIL exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0)
      o.check(secs < c.budget_seconds, fmt("runtime %.2f s (< %.0f s)", secs, c.budget_seconds));
    std::printf("%s [%s] %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                !o.pass && o.known ? " [known limitation]" : "");
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    if (!o.pass) (o.known ? known : failed)++;
  }
  std::printf("\n%d criteria failed, %d of them known limitations\n", failed + known, known);
  return failed == 0 ? 0 : 1;
}
