#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pergraph {

/// Integer vector in Z^d: an edge index or a cell shift.
using IndexVector = std::vector<int>;

/// Raised for malformed graphs and descriptions; the CLI maps it to exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Vertex {
    std::string id;
    double potential = 0.0;
};

/// One representative of an undirected edge. The reverse edge (head, tail, -index) is implied.
/// Endpoints are positions into FundamentalGraph::vertices.
struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    IndexVector index;

    bool is_loop() const { return tail == head; }
};

/// Quotient of a Z^d-periodic graph: finite multigraph (loops allowed) whose edges carry indices.
struct FundamentalGraph {
    int dimension = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    std::size_t order() const { return vertices.size(); }
    std::vector<double> potential() const;
    std::optional<std::size_t> find(const std::string& id) const;
};

/// Edge from vertex `tail` in cell 0 to vertex `head` in cell `shift`.
struct Bond {
    std::size_t tail = 0;
    std::size_t head = 0;
    IndexVector shift;
};

struct PeriodicDescription {
    int dimension = 0;
    std::vector<Vertex> vertices;
    std::vector<Bond> bonds;
};

struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string message() const;
};

ValidationResult validate(const FundamentalGraph& graph);
ValidationResult validate(const PeriodicDescription& desc);

/// Throws InputError carrying every violation.
void require_valid(const FundamentalGraph& graph);

/// κ_v: number of directed edges leaving v. A loop representative counts twice.
std::vector<int> degrees(const FundamentalGraph& graph);

struct SpanningTreeAssignment {
    /// Positions into the description's bond list.
    std::vector<std::size_t> tree_bonds;
    /// Offset of the chosen fundamental representative of each vertex.
    std::vector<IndexVector> coordinates;
};

struct IndexedGraph {
    FundamentalGraph graph;
    SpanningTreeAssignment tree;
};

/// Builds the fundamental graph of a periodic description.
///
/// A spanning tree of the quotient is grown breadth-first from the vertex with the
/// lexicographically smallest id, scanning bonds in input order. Crossing a tree bond
/// (u, v, m) fixes the representative of v at coordinate [v] = [u] + m, so every tree bond
/// ends up with index zero. A bond (u, v, m) then gets index m + [u] - [v].
IndexedGraph assign_indices(const PeriodicDescription& desc);

/// A directed edge of the fundamental graph, with the representative it came from.
struct DirectedEdge {
    std::size_t tail = 0;
    std::size_t head = 0;
    IndexVector index;
    std::size_t representative = 0;
    bool reversed = false;
};

struct BridgeSet {
    /// Both orientations of every nonzero-index edge.
    std::vector<DirectedEdge> edges;
    /// ζ_v: bridges starting at v.
    std::vector<int> per_vertex;
};

BridgeSet bridges(const FundamentalGraph& graph);

/// Every directed edge (both orientations of each representative).
std::vector<DirectedEdge> directed_edges(const FundamentalGraph& graph);

struct ZetaReport {
    double value = 0.0;  ///< ζ = Σ ζ_v / κ_v
    std::vector<int> bridges_per_vertex;
    std::vector<int> degree;
    /// 1 when ν = 1, ν - Σ 1/κ_v otherwise.
    double bound = 0.0;
    bool within_bound = true;
    /// No bridges at all: the periodic graph cannot be connected.
    bool no_bridges = false;
};

ZetaReport zeta(const FundamentalGraph& graph);

/// Every bridge is a loop.
bool is_loop_graph(const FundamentalGraph& graph);

/// Searches θ0 ∈ {0, π}^d with cos<τ(e), θ0> = -1 on every bridge. Sufficient test only.
/// Throws std::logic_error on a non-loop graph.
std::optional<std::vector<double>> exact_quasimomentum(const FundamentalGraph& graph);

using Bipartition = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

/// 2-colouring of the fundamental multigraph; the first part holds vertex 0. Loops make it fail.
std::optional<Bipartition> is_bipartite(const FundamentalGraph& graph);

/// Whether the infinite periodic graph is bipartite. A connected periodic graph is bipartite
/// iff some colouring c: V* -> Z2 and homomorphism s: Z^d -> Z2 satisfy
/// c(u) + c(v) + s(τ(e)) = 1 (mod 2) on every edge; s is searched over all 2^d choices.
bool is_periodic_bipartite(const FundamentalGraph& graph);

/// Rank over Q of the bridge indices.
int bridge_index_rank(const FundamentalGraph& graph);

/// Non-fatal structural remarks (currently: bridge indices span a sublattice of rank < d).
std::vector<std::string> connectivity_warnings(const FundamentalGraph& graph);

}  // namespace pergraph
