#include "vgraph/cli.hpp"

#include "vgraph/analysis.hpp"
#include "vgraph/bench.hpp"
#include "vgraph/integrate_hmc.hpp"
#include "vgraph/integrate_poly.hpp"
#include "vgraph/io.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace vgraph {

namespace {

RaycastMethod parse_raycast_method(const std::string& name) {
  if (name == "incircle") return RaycastMethod::incircle;
  if (name == "incircle_heuristic" || name == "heuristic") return RaycastMethod::incircle_heuristic;
  if (name == "bisection") return RaycastMethod::bisection;
  throw InvalidArgument("unknown raycast method '" + name + "'");
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + path + "'");
  file << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
      if (!first) text_ += ',';
      text_ += c;
      first = false;
    }
    text_ += '\n';
  }
  template <typename... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((text_ += (first ? "" : ","), text_ += cell(values), first = false), ...);
    text_ += '\n';
  }
  const std::string& str() const { return text_; }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  template <typename T>
    requires std::is_integral_v<T>
  static std::string cell(T x) {
    return std::to_string(x);
  }
  std::string text_;
};

std::vector<int> parse_cells(const std::string& spec, const Mesh& mesh) {
  std::vector<int> cells;
  if (spec == "all") {
    for (int i = 0; i < mesh.num_cells(); ++i) cells.push_back(i);
  } else if (spec == "interior") {
    cells = bounded_cells(mesh);
  } else if (spec == "cube") {
    cells = cube_cells(mesh);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc() || ptr != item.data() + item.size())
        throw InvalidArgument("bad cell index '" + item + "'");
      if (value < 0 || value >= mesh.num_cells())
        throw InvalidArgument("cell index " + item + " out of range");
      cells.push_back(value);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }
  return cells;
}

// Subcommand settings ---------------------------------------------------------------

struct Common {
  std::string input;
  std::string output;
  bool header = false;
  std::uint64_t seed = 0;
};

struct ComputeArgs {
  Common io;
  bool verify = false;
  std::string method = "incircle_heuristic";
  double eps = 1e-8;
};

struct IntegrateArgs {
  Common io;
  std::string method = "mc";
  int rays = 1000;
  int subsamples = 2;
  std::string cells = "all";
  std::string function = "sinx2";
  int threads = 1;
  bool scan_all = false;
};

struct BenchArgs {
  std::string kind;
  std::vector<int> dims{2};
  std::vector<int> sizes{1000};
  std::vector<int> rays{1000};
  std::vector<double> eps{1e-8};
  std::vector<std::string> methods;
  int subsamples = 2;
  int bins = 30;
  int threads = 1;
  std::string function = "sinx2";
  std::string first = "mc";
  std::string second = "poly";
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";
};

int run_compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
  NodeSet nodes = read_points_csv(a.io.input, a.io.header);
  GraphOptions options;
  options.method = parse_raycast_method(a.method);
  options.eps = a.eps;
  Mesh mesh = voronoi_graph(nodes, a.io.seed, options);
  emit(dump(mesh_to_json(mesh)), a.io.output, out);
  if (!a.verify) return 0;
  const MeshReport report = verify_mesh(mesh);
  err << "verify: " << (report.ok ? "ok" : "FAILED") << ", " << report.vertices_checked
      << " vertices checked";
  if (report.oracle_run)
    err << ", oracle missing " << report.oracle_missing << " extra " << report.oracle_extra;
  err << '\n';
  for (const auto& m : report.messages) err << "  " << m << '\n';
  return report.ok ? 0 : 3;
}

int run_integrate(const IntegrateArgs& a, std::ostream& out) {
  NodeSet nodes = read_points_csv(a.io.input, a.io.header);
  const int d = nodes.dim();
  const Integrand f = parse_function(a.function, d);
  const IntegrationMethod method = parse_integration_method(a.method);
  Mesh mesh = voronoi_graph(nodes, a.io.seed);
  mesh.finalize();

  std::vector<int> cells;
  std::vector<SkippedCell> skipped;
  for (int i : parse_cells(a.cells, mesh)) {
    if (mesh.is_bounded(i))
      cells.push_back(i);
    else
      skipped.push_back({i, "unbounded"});
  }

  McOptions mc;
  mc.rays = a.rays;
  mc.subsamples = a.subsamples;
  mc.seed = a.io.seed;
  mc.known_neighbors = !a.scan_all;
  mc.threads = a.threads;

  std::vector<CellIntegrals> results;
  switch (method) {
    case IntegrationMethod::mc: results = mc_integrate_cells(mesh, cells, f, mc); break;
    case IntegrationMethod::poly: {
      const bool all_bounded = cells.size() == bounded_cells(mesh).size();
      results = integrate_cells_poly(mesh, cells, f, all_bounded);
      break;
    }
    case IntegrationMethod::hmc: results = hmc_integrate_cells(mesh, cells, f, mc); break;
  }

  IntegralsHeader header;
  header.method = to_string(method);
  header.function = a.function;
  header.dim = d;
  header.n_nodes = nodes.size();
  header.seed = a.io.seed;
  header.exact = method == IntegrationMethod::poly;
  if (method != IntegrationMethod::poly) {
    header.n_rays = a.rays;
    header.m_subsamples = method == IntegrationMethod::mc ? a.subsamples : 0;
  }
  emit(dump(integrals_to_json(header, results, skipped)), a.io.output, out);
  return 0;
}

int run_stats(const Common& a, std::ostream& out) {
  NodeSet nodes = read_points_csv(a.input, a.header);
  Mesh mesh = voronoi_graph(nodes, a.seed);
  mesh.finalize();
  const ScalingStats s = empirical_scaling(mesh);
  nlohmann::ordered_json j;
  j["dim"] = nodes.dim();
  j["n_nodes"] = nodes.size();
  j["vertices"] = s.vertices;
  j["boundary_rays"] = mesh.boundary().size();
  j["vertices_per_cell"] = s.vertices_per_cell;
  j["neighbors_per_cell"] = s.neighbors_per_cell;
  j["bounded_cells"] = s.bounded_cells;
  j["bounded_vertices_per_cell"] = s.bounded_vertices_per_cell;
  j["bounded_neighbors_per_cell"] = s.bounded_neighbors_per_cell;
  j["note"] =
      "non-periodic diagram: unbounded boundary cells have fewer vertices, so the all-cell "
      "averages sit below periodic or infinite-domain values";
  emit(dump(j), a.output, out);
  return 0;
}

int run_bound(int dim, const std::string& output, std::ostream& out) {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["expected_vertices_lower_bound"] = expected_vertices_lower_bound(dim);
  emit(dump(j), output, out);
  return 0;
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const bool json = a.format == "json";
  if (!json && a.format != "csv") throw InvalidArgument("format must be csv or json");
  std::string text;

  if (a.kind == "raycast") {
    std::vector<std::string> methods = a.methods;
    if (methods.empty()) methods = {"incircle", "incircle_heuristic", "bisection"};
    Csv csv{"dim", "n", "method", "eps", "nn_calls", "vertices", "calls_per_vertex",
            "spurious_vertices"};
    auto arr = nlohmann::ordered_json::array();
    for (int d : a.dims)
      for (int n : a.sizes)
        for (const auto& name : methods) {
          const RaycastMethod m = parse_raycast_method(name);
          const std::vector<double> eps_list =
              m == RaycastMethod::bisection ? a.eps : std::vector<double>{0.0};
          for (double eps : eps_list) {
            const RaycastBench r = bench_raycast(d, n, m, eps, a.seed);
            if (r.spurious_vertices)
              err << "warning: bisection eps=" << eps << " d=" << d
                  << " found a different vertex count (spurious vertices)\n";
            csv.row(d, n, to_string(m), eps, r.nn_calls, r.vertices, r.calls_per_vertex,
                    r.spurious_vertices);
            arr.push_back({{"dim", d}, {"n", n}, {"method", to_string(m)}, {"eps", eps},
                           {"nn_calls", r.nn_calls}, {"vertices", r.vertices},
                           {"calls_per_vertex", r.calls_per_vertex},
                           {"spurious_vertices", r.spurious_vertices}});
          }
        }
    text = json ? dump(arr) : csv.str();
  } else if (a.kind == "scaling") {
    Csv csv{"dim", "n", "seconds", "vertices"};
    auto arr = nlohmann::ordered_json::array();
    for (int d : a.dims)
      for (const auto& row : bench_scaling(d, a.sizes, a.seed)) {
        csv.row(d, row.n, row.seconds, row.vertices);
        arr.push_back({{"dim", d}, {"n", row.n}, {"seconds", row.seconds}, {"vertices", row.vertices}});
      }
    text = json ? dump(arr) : csv.str();
  } else if (a.kind == "area" || a.kind == "integrals") {
    Csv csv{"dim", "rays", "bin", "count", "mean", "std"};
    auto arr = nlohmann::ordered_json::array();
    for (int d : a.dims) {
      std::vector<BinStats> bins;
      if (a.kind == "area") {
        bins = bench_area_accuracy(d, a.sizes.front(), a.rays, a.bins, a.seed, a.threads);
      } else {
        const Integrand f = parse_function(a.function, d);
        for (int rays : a.rays) {
          ComparisonOptions o;
          o.rays = rays;
          o.subsamples = a.subsamples;
          o.bins = a.bins;
          o.threads = a.threads;
          auto c = bench_integral_comparison(d, a.sizes.front(), parse_integration_method(a.first),
                                             parse_integration_method(a.second), f, a.seed, o);
          bins.insert(bins.end(), c.bins.begin(), c.bins.end());
        }
      }
      for (const auto& b : bins) {
        csv.row(d, b.rays, b.bin, b.count, b.mean, b.stddev);
        arr.push_back({{"dim", d}, {"rays", b.rays}, {"bin", b.bin}, {"count", b.count},
                       {"mean", b.mean}, {"std", b.stddev}});
      }
    }
    text = json ? dump(arr) : csv.str();
  } else {
    throw InvalidArgument("unknown bench '" + a.kind + "'");
  }
  emit(text, a.output, out);
  return 0;
}

void add_common(CLI::App* app, Common& c, bool with_output = true) {
  app->add_option("--input,-i", c.input, "Point CSV, one point per row")->required();
  if (with_output) app->add_option("--output,-o", c.output, "Output file (default stdout)");
  app->add_flag("--header", c.header, "Skip the first line of the input");
  app->add_option("--seed", c.seed, "Random seed");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Voronoi diagrams by raycasting, with cell integration"};
  app.name("voronoi");
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Compute the diagram and write it as JSON");
  add_common(c, compute.io);
  c->add_flag("--verify", compute.verify, "Check every vertex (and a brute-force oracle for small d, N)");
  c->add_option("--method", compute.method, "incircle | incircle_heuristic | bisection");
  c->add_option("--eps", compute.eps, "Bracket width for bisection");

  IntegrateArgs integrate;
  auto* in = app.add_subcommand("integrate", "Cell volumes, interface areas and integrals");
  add_common(in, integrate.io);
  in->add_option("--method", integrate.method, "mc | poly | hmc");
  in->add_option("--rays", integrate.rays, "Rays per cell (mc, hmc)");
  in->add_option("--subsamples", integrate.subsamples, "Radial samples per ray (mc)");
  in->add_option("--cells", integrate.cells, "all | interior | cube | comma separated indices");
  in->add_option("--function", integrate.function, "sinx2 | const1 | linear:a_1,...,a_d,b");
  in->add_option("--threads", integrate.threads, "Worker threads");
  in->add_flag("--scan-all", integrate.scan_all, "Do not restrict MC raycasts to known neighbors");

  Common stats;
  auto* st = app.add_subcommand("stats", "Vertices and neighbors per cell");
  add_common(st, stats);

  int bound_dim = 2;
  std::string bound_output;
  auto* bo = app.add_subcommand("bound", "Expected vertices per cell lower bound");
  bo->add_option("--dim", bound_dim)->required()->check(CLI::Range(2, 30));
  bo->add_option("--output,-o", bound_output);

  int gen_dim = 2, gen_n = 1000;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  auto* pg = app.add_subcommand("points", "Uniform points in [0,1]^d as CSV");
  pg->add_option("--dim", gen_dim)->required();
  pg->add_option("--n", gen_n)->required();
  pg->add_option("--seed", gen_seed);
  pg->add_option("--output,-o", gen_output);

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Benchmarks on uniform points in the unit cube");
  be->add_option("kind", bench.kind, "raycast | scaling | area | integrals")->required();
  be->add_option("--dim", bench.dims, "Dimensions")->expected(1, -1);
  be->add_option("--n", bench.sizes, "Node counts")->expected(1, -1);
  be->add_option("--rays", bench.rays, "Ray counts (area, integrals)")->expected(1, -1);
  be->add_option("--eps", bench.eps, "Bisection widths (raycast)")->expected(1, -1);
  be->add_option("--methods", bench.methods, "Raycast methods (raycast)")->expected(1, -1);
  be->add_option("--subsamples", bench.subsamples);
  be->add_option("--bins", bench.bins, "Area-fraction bins of 1 %");
  be->add_option("--threads", bench.threads);
  be->add_option("--function", bench.function, "Integrand (integrals)");
  be->add_option("--first", bench.first, "First method (integrals)");
  be->add_option("--second", bench.second, "Second method (integrals)");
  be->add_option("--seed", bench.seed);
  be->add_option("--output,-o", bench.output);
  be->add_option("--format", bench.format, "csv | json");
  be->footer(
      "CSV columns:\n"
      "  raycast:   dim,n,method,eps,nn_calls,vertices,calls_per_vertex,spurious_vertices\n"
      "  scaling:   dim,n,seconds,vertices\n"
      "  area:      dim,rays,bin,count,mean,std  (relative MC area deviation vs exact)\n"
      "  integrals: dim,rays,bin,count,mean,std  (1 + 2 (I1 - I2) / (I1 + I2))\n"
      "bin b covers area fractions [b %, b+1 %).");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*c) return run_compute(compute, out, err);
    if (*in) return run_integrate(integrate, out);
    if (*st) return run_stats(stats, out);
    if (*bo) return run_bound(bound_dim, bound_output, out);
    if (*be) return run_bench(bench, out, err);
    if (*pg) {
      std::ostringstream csv;
      write_points_csv(csv, uniform_cube(gen_dim, gen_n, gen_seed));
      emit(csv.str(), gen_output, out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace vgraph
