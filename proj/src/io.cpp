#include "vgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vgraph {

namespace {

double parse_double(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidArgument("line " + std::to_string(line) + ": cannot parse '" + std::string(text) +
                          "' as a number");
  return value;
}

std::vector<double> split_numbers(std::string_view text, std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<Point> parse_points_csv(std::istream& in, bool header) {
  std::vector<Point> points;
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (header && line == 1) continue;
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto values = split_numbers(row, line);
    points.emplace_back(Eigen::Map<const Point>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return points;
}

NodeSet read_points_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return NodeSet(parse_points_csv(in, header));
}

void write_points_csv(std::ostream& out, const NodeSet& nodes) {
  char buf[64];
  for (int i = 0; i < nodes.size(); ++i) {
    for (int k = 0; k < nodes.dim(); ++k) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, nodes.point(i)[k]);
      if (k) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

namespace {

nlohmann::ordered_json to_json(const IndexSet& s) {
  auto arr = nlohmann::ordered_json::array();
  for (int g : s) arr.push_back(g);
  return arr;
}

nlohmann::ordered_json to_json(const Point& p) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) arr.push_back(p[k]);
  return arr;
}

}  // namespace

nlohmann::ordered_json mesh_to_json(const Mesh& mesh) {
  nlohmann::ordered_json j;
  j["dim"] = mesh.dim();
  j["n_nodes"] = mesh.num_cells();
  // Sorted by sigma so the output does not depend on discovery order.
  std::vector<const Vertex*> verts;
  for (const auto& v : mesh.vertices()) verts.push_back(&v);
  std::sort(verts.begin(), verts.end(), [](auto* a, auto* b) { return a->sigma < b->sigma; });
  auto& vs = j["vertices"] = nlohmann::ordered_json::array();
  for (const Vertex* v : verts) vs.push_back({{"sigma", to_json(v->sigma)}, {"r", to_json(v->r)}});

  std::vector<const BoundaryRay*> rays;
  for (const auto& r : mesh.boundary()) rays.push_back(&r);
  std::sort(rays.begin(), rays.end(), [](auto* a, auto* b) {
    return a->sigma < b->sigma || (a->sigma == b->sigma && a->eta < b->eta);
  });
  auto& bs = j["boundary_rays"] = nlohmann::ordered_json::array();
  for (const BoundaryRay* r : rays) bs.push_back({{"sigma", to_json(r->sigma)}, {"u", to_json(r->u)}});
  return j;
}

nlohmann::ordered_json integrals_to_json(const IntegralsHeader& header,
                                 const std::vector<CellIntegrals>& cells,
                                 const std::vector<SkippedCell>& skipped) {
  nlohmann::ordered_json j;
  j["method"] = header.method;
  j["function"] = header.function;
  j["dim"] = header.dim;
  j["n_nodes"] = header.n_nodes;
  j["seed"] = header.seed;
  j["n_rays"] = header.n_rays;
  j["m_subsamples"] = header.m_subsamples;
  j["exact"] = header.exact;
  auto& cs = j["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json cell;
    cell["cell"] = c.cell;
    cell["volume"] = c.volume;
    if (!c.exact) cell["volume_stderr"] = c.volume_stderr;
    cell["volume_integral"] = c.volume_integral;
    auto& faces = cell["faces"] = nlohmann::ordered_json::array();
    for (const auto& [nb, area] : c.area) {
      nlohmann::ordered_json face{{"neighbor", nb}, {"area", area}};
      if (auto it = c.surface_integral.find(nb); it != c.surface_integral.end())
        face["surface_integral"] = it->second;
      faces.push_back(std::move(face));
    }
    cs.push_back(std::move(cell));
  }
  auto& sk = j["skipped"] = nlohmann::ordered_json::array();
  for (const auto& s : skipped) sk.push_back({{"cell", s.cell}, {"reason", s.reason}});
  return j;
}

Integrand parse_function(const std::string& spec, int dim) {
  if (spec == "sinx2") return [](const Point& x) { return std::sin(x[0] * x[0]); };
  if (spec == "const1") return [](const Point&) { return 1.0; };
  constexpr std::string_view prefix = "linear:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto coeffs = split_numbers(std::string_view(spec).substr(prefix.size()), 0);
    if (static_cast<int>(coeffs.size()) != dim + 1)
      throw InvalidArgument("linear function needs " + std::to_string(dim + 1) +
                            " coefficients (a_1..a_d, b)");
    Point a = Eigen::Map<const Point>(coeffs.data(), dim);
    const double b = coeffs.back();
    return [a, b](const Point& x) { return a.dot(x) + b; };
  }
  throw InvalidArgument("unknown function '" + spec + "'");
}

}  // namespace vgraph
