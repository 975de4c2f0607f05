#pragma once

#include <iosfwd>

namespace vgraph {

/// Entry point of the voronoi command line tool. Output files are written
/// directly; without --output results go to out. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vgraph
