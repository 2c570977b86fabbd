#pragma once

#include <string>
#include <vector>

#include "pergraph/bands.hpp"
#include "pergraph/estimates.hpp"
#include "pergraph/graph.hpp"

namespace pergraph::io {

/// Graph document:
///   {"dimension": d,
///    "vertices": [{"id": "v1", "potential": 0.0}, ...],
///    "edges": [{"u": "v1", "v": "v2", "index": [0, 1]}, ...]}
/// or, instead of "edges", "bonds": [{"u", "v", "shift"}] read as a periodic description whose
/// indices are assigned from a spanning tree. "potential" may be omitted. Unknown fields are rejected.
FundamentalGraph parse_graph(const std::string& text);
FundamentalGraph read_graph(const std::string& path);

/// Canonical form (always "edges"). parse_graph(emit_graph(g)) reproduces g.
std::string emit_graph(const FundamentalGraph& graph);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// {"id": value, ...}. Ids missing from the object get 0; ids not in the graph are errors.
std::vector<double> parse_potential(const std::string& text, const FundamentalGraph& graph);

/// 15 significant digits.
std::string format_number(double x);

/// Columns band_index, lambda_min, lambda_max, flat, multiplicity (blank unless flat).
std::string bands_csv(const BandStructure& bands);

struct PathSpec {
    Quasimomentum from;
    Quasimomentum to;
    int steps = 0;
};

/// "θa..θb:steps" where each θ is a comma list, optionally in parentheses. Components are
/// numbers or multiples of pi: "pi", "-pi/2", "2*pi", "0.5pi".
PathSpec parse_path(const std::string& text, int dimension);

/// Columns step, theta_1..theta_d, lambda_1..lambda_ν.
std::string path_csv(const std::vector<PathSample>& samples);

/// Structured report; numbers carry 15 significant digits.
std::string report_json(const SpectralReport& report, const FundamentalGraph& graph, const BZGrid& grid);

}  // namespace pergraph::io
