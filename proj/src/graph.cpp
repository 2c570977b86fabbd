#include "pergraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

namespace pergraph {

namespace {

bool is_zero(const IndexVector& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

IndexVector negate(const IndexVector& v) {
    IndexVector out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](int x) { return -x; });
    return out;
}

/// Connectivity of the undirected multigraph on n vertices given as endpoint pairs.
/// Endpoints out of range are ignored (they are reported separately).
bool connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& links) {
    if (n == 0) return false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : links) {
        if (a >= n || b >= n) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!todo.empty()) {
        const auto v = todo.front();
        todo.pop();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                todo.push(w);
            }
    }
    return count == n;
}

void check_vertices(int dimension, const std::vector<Vertex>& vertices, std::vector<std::string>& out) {
    if (dimension < 1) out.push_back("dimension must be positive");
    if (vertices.empty()) out.push_back("graph has no vertices");
    std::set<std::string> ids;
    for (const auto& v : vertices) {
        if (!ids.insert(v.id).second) out.push_back("duplicate vertex id '" + v.id + "'");
        if (!std::isfinite(v.potential)) out.push_back("non-finite potential at vertex '" + v.id + "'");
    }
}

}  // namespace

std::vector<double> FundamentalGraph::potential() const {
    std::vector<double> q(vertices.size());
    std::transform(vertices.begin(), vertices.end(), q.begin(), [](const Vertex& v) { return v.potential; });
    return q;
}

std::optional<std::size_t> FundamentalGraph::find(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    return std::nullopt;
}

std::string ValidationResult::message() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << violations[i];
    return os.str();
}

std::vector<int> degrees(const FundamentalGraph& graph) {
    std::vector<int> kappa(graph.order(), 0);
    for (const auto& e : graph.edges) {
        if (e.tail >= kappa.size() || e.head >= kappa.size()) continue;
        ++kappa[e.tail];
        ++kappa[e.head];
    }
    return kappa;
}

ValidationResult validate(const FundamentalGraph& graph) {
    ValidationResult r;
    check_vertices(graph.dimension, graph.vertices, r.violations);
    const auto n = graph.order();
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        const auto& e = graph.edges[k];
        if (e.tail >= n || e.head >= n)
            r.violations.push_back("edge " + std::to_string(k) + " references an unknown vertex");
        if (e.index.size() != static_cast<std::size_t>(std::max(graph.dimension, 0)))
            r.violations.push_back("index dimension mismatch (edge " + std::to_string(k) + ")");
        links.emplace_back(e.tail, e.head);
    }
    if (n > 0 && !connected(n, links)) r.violations.push_back("disconnected");
    const auto kappa = degrees(graph);
    for (std::size_t v = 0; v < n; ++v)
        if (kappa[v] < 1) r.violations.push_back("vertex '" + graph.vertices[v].id + "' has degree 0");
    return r;
}

ValidationResult validate(const PeriodicDescription& desc) {
    ValidationResult r;
    check_vertices(desc.dimension, desc.vertices, r.violations);
    const auto n = desc.vertices.size();
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t k = 0; k < desc.bonds.size(); ++k) {
        const auto& b = desc.bonds[k];
        if (b.tail >= n || b.head >= n)
            r.violations.push_back("bond " + std::to_string(k) + " references an unknown vertex");
        if (b.shift.size() != static_cast<std::size_t>(std::max(desc.dimension, 0)))
            r.violations.push_back("shift dimension mismatch (bond " + std::to_string(k) + ")");
        links.emplace_back(b.tail, b.head);
    }
    if (n > 0 && !connected(n, links)) r.violations.push_back("disconnected");
    return r;
}

void require_valid(const FundamentalGraph& graph) {
    const auto r = validate(graph);
    if (!r.ok()) throw InputError("invalid fundamental graph: " + r.message());
}

IndexedGraph assign_indices(const PeriodicDescription& desc) {
    const auto check = validate(desc);
    for (const auto& v : check.violations)
        if (v == "disconnected") throw InputError("quotient not connected");
    if (!check.ok()) throw InputError("invalid periodic description: " + check.message());

    const auto n = desc.vertices.size();
    const auto d = static_cast<std::size_t>(desc.dimension);

    std::size_t root = 0;
    for (std::size_t v = 1; v < n; ++v)
        if (desc.vertices[v].id < desc.vertices[root].id) root = v;

    // incidence lists in bond input order
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t k = 0; k < desc.bonds.size(); ++k) {
        incident[desc.bonds[k].tail].push_back(k);
        if (desc.bonds[k].head != desc.bonds[k].tail) incident[desc.bonds[k].head].push_back(k);
    }

    SpanningTreeAssignment tree;
    tree.coordinates.assign(n, IndexVector(d, 0));
    std::vector<bool> placed(n, false);
    placed[root] = true;
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
        const auto u = todo.front();
        todo.pop();
        for (auto k : incident[u]) {
            const auto& b = desc.bonds[k];
            if (b.tail == u && !placed[b.head]) {
                for (std::size_t i = 0; i < d; ++i) tree.coordinates[b.head][i] = tree.coordinates[u][i] + b.shift[i];
                placed[b.head] = true;
                tree.tree_bonds.push_back(k);
                todo.push(b.head);
            } else if (b.head == u && !placed[b.tail]) {
                for (std::size_t i = 0; i < d; ++i) tree.coordinates[b.tail][i] = tree.coordinates[u][i] - b.shift[i];
                placed[b.tail] = true;
                tree.tree_bonds.push_back(k);
                todo.push(b.tail);
            }
        }
    }

    IndexedGraph out;
    out.graph.dimension = desc.dimension;
    out.graph.vertices = desc.vertices;
    out.graph.edges.reserve(desc.bonds.size());
    for (const auto& b : desc.bonds) {
        Edge e{b.tail, b.head, IndexVector(d)};
        for (std::size_t i = 0; i < d; ++i)
            e.index[i] = b.shift[i] + tree.coordinates[b.tail][i] - tree.coordinates[b.head][i];
        out.graph.edges.push_back(std::move(e));
    }
    out.tree = std::move(tree);
    return out;
}

std::vector<DirectedEdge> directed_edges(const FundamentalGraph& graph) {
    std::vector<DirectedEdge> out;
    out.reserve(2 * graph.edges.size());
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        const auto& e = graph.edges[k];
        out.push_back({e.tail, e.head, e.index, k, false});
        out.push_back({e.head, e.tail, negate(e.index), k, true});
    }
    return out;
}

BridgeSet bridges(const FundamentalGraph& graph) {
    BridgeSet out;
    out.per_vertex.assign(graph.order(), 0);
    for (auto& e : directed_edges(graph)) {
        if (is_zero(e.index)) continue;
        ++out.per_vertex[e.tail];
        out.edges.push_back(std::move(e));
    }
    return out;
}

ZetaReport zeta(const FundamentalGraph& graph) {
    ZetaReport r;
    r.degree = degrees(graph);
    r.bridges_per_vertex = bridges(graph).per_vertex;
    const auto n = graph.order();
    double inverse_sum = 0.0;
    int total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        r.value += static_cast<double>(r.bridges_per_vertex[v]) / r.degree[v];
        inverse_sum += 1.0 / r.degree[v];
        total += r.bridges_per_vertex[v];
    }
    r.bound = n == 1 ? 1.0 : static_cast<double>(n) - inverse_sum;
    r.within_bound = r.value <= r.bound + 1e-12;
    r.no_bridges = total == 0;
    return r;
}

bool is_loop_graph(const FundamentalGraph& graph) {
    return std::all_of(graph.edges.begin(), graph.edges.end(),
                       [](const Edge& e) { return e.is_loop() || is_zero(e.index); });
}

std::optional<std::vector<double>> exact_quasimomentum(const FundamentalGraph& graph) {
    if (!is_loop_graph(graph)) throw std::logic_error("exact quasimomentum requested for a non-loop graph");
    const auto d = static_cast<std::size_t>(graph.dimension);
    // Components of θ0 in {0, π}: cos<τ, θ0> = -1 iff Σ_{i in mask} τ_i is odd.
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        bool exact = true;
        for (const auto& e : graph.edges) {
            if (is_zero(e.index)) continue;
            long parity = 0;
            for (std::size_t i = 0; i < d; ++i)
                if (mask >> i & 1U) parity += e.index[i];
            if (parity % 2 == 0) {
                exact = false;
                break;
            }
        }
        if (!exact) continue;
        std::vector<double> theta(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1U) theta[i] = std::numbers::pi;
        return theta;
    }
    return std::nullopt;
}

namespace {

/// Parity 2-colouring with per-edge parity demand; returns the colouring or nothing.
std::optional<std::vector<int>> parity_colouring(const FundamentalGraph& graph, const std::vector<int>& edge_parity) {
    const auto n = graph.order();
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
        const auto& e = graph.edges[k];
        if (e.is_loop()) {
            if (edge_parity[k] != 0) return std::nullopt;
            continue;
        }
        adj[e.tail].emplace_back(e.head, edge_parity[k]);
        adj[e.head].emplace_back(e.tail, edge_parity[k]);
    }
    std::vector<int> colour(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (colour[start] >= 0) continue;
        colour[start] = 0;
        std::queue<std::size_t> todo;
        todo.push(start);
        while (!todo.empty()) {
            const auto v = todo.front();
            todo.pop();
            for (auto [w, p] : adj[v]) {
                const int want = colour[v] ^ p;
                if (colour[w] < 0) {
                    colour[w] = want;
                    todo.push(w);
                } else if (colour[w] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return colour;
}

}  // namespace

std::optional<Bipartition> is_bipartite(const FundamentalGraph& graph) {
    const auto colour = parity_colouring(graph, std::vector<int>(graph.edges.size(), 1));
    if (!colour) return std::nullopt;
    Bipartition parts;
    for (std::size_t v = 0; v < graph.order(); ++v) ((*colour)[v] == 0 ? parts.first : parts.second).push_back(v);
    return parts;
}

bool is_periodic_bipartite(const FundamentalGraph& graph) {
    const auto d = static_cast<std::size_t>(graph.dimension);
    std::vector<int> parity(graph.edges.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        for (std::size_t k = 0; k < graph.edges.size(); ++k) {
            long s = 0;
            for (std::size_t i = 0; i < d; ++i)
                if (mask >> i & 1U) s += graph.edges[k].index[i];
            // need c(u) + c(v) = 1 + s(τ) (mod 2)
            parity[k] = static_cast<int>((1 + (s % 2 + 2) % 2) % 2);
        }
        if (parity_colouring(graph, parity)) return true;
    }
    return false;
}

int bridge_index_rank(const FundamentalGraph& graph) {
    const auto d = static_cast<std::size_t>(graph.dimension);
    std::vector<std::vector<double>> rows;
    for (const auto& e : graph.edges)
        if (!is_zero(e.index)) rows.emplace_back(e.index.begin(), e.index.end());
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < rows.size(); ++col) {
        std::size_t pivot = row;
        for (std::size_t r = row; r < rows.size(); ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        if (std::abs(rows[pivot][col]) < 1e-9) continue;
        std::swap(rows[row], rows[pivot]);
        for (std::size_t r = row + 1; r < rows.size(); ++r) {
            const double f = rows[r][col] / rows[row][col];
            for (std::size_t c = col; c < d; ++c) rows[r][c] -= f * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<std::string> connectivity_warnings(const FundamentalGraph& graph) {
    std::vector<std::string> out;
    const int rank = bridge_index_rank(graph);
    if (rank < graph.dimension)
        out.push_back("bridge indices span a sublattice of rank " + std::to_string(rank) + " < d = " +
                      std::to_string(graph.dimension) + "; the periodic graph is not connected");
    return out;
}

}  // namespace pergraph
