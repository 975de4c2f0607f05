#pragma once

#include "vgraph/integrate_mc.hpp"
#include "vgraph/mesh.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vgraph {

/// One point per row, comma separated, '.' decimal point. Blank lines are
/// ignored; header skips the first line.
std::vector<Point> parse_points_csv(std::istream& in, bool header = false);
NodeSet read_points_csv(const std::string& path, bool header = false);
void write_points_csv(std::ostream& out, const NodeSet& nodes);

/// {"dim", "n_nodes", "vertices": [{"sigma", "r"}], "boundary_rays": [{"sigma", "u"}]}
nlohmann::ordered_json mesh_to_json(const Mesh& mesh);

struct SkippedCell {
  int cell = 0;
  std::string reason;
};

struct IntegralsHeader {
  std::string method;
  std::string function;
  int dim = 0;
  int n_nodes = 0;
  std::uint64_t seed = 0;
  int n_rays = 0;
  int m_subsamples = 0;
  bool exact = false;
};

nlohmann::ordered_json integrals_to_json(const IntegralsHeader& header,
                                 const std::vector<CellIntegrals>& cells,
                                 const std::vector<SkippedCell>& skipped = {});

/// Built-in integrands: "sinx2" (sin(x_1^2)), "const1", "linear:a_1,...,a_d,b".
Integrand parse_function(const std::string& spec, int dim);

}  // namespace vgraph
