#include "pergraph/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pergraph {

namespace {

bool is_bridge(const Edge& e) {
    return std::any_of(e.index.begin(), e.index.end(), [](int x) { return x != 0; });
}

}  // namespace

Quasimomentum Quasimomentum::pi(int d) {
    return Quasimomentum(std::vector<double>(static_cast<std::size_t>(d), std::numbers::pi));
}

Quasimomentum Quasimomentum::wrapped() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double t = std::fmod(theta[i], two_pi);
        if (t < 0) t += two_pi;
        if (t >= two_pi) t = 0.0;
        out[i] = t;
    }
    return Quasimomentum(std::move(out));
}

double Quasimomentum::phase(const IndexVector& index) const {
    double s = 0.0;
    for (std::size_t i = 0; i < index.size(); ++i)
        if (index[i] != 0) s += index[i] * theta[i];
    return s;
}

FiberFamily::FiberFamily(FundamentalGraph graph) : graph_(std::move(graph)) {
    require_valid(graph_);
    degree_ = degrees(graph_);
    inv_sqrt_degree_.resize(degree_.size());
    for (std::size_t v = 0; v < degree_.size(); ++v) inv_sqrt_degree_[v] = 1.0 / std::sqrt(static_cast<double>(degree_[v]));
}

void FiberFamily::check(const Quasimomentum& theta) const {
    if (theta.dimension() != static_cast<std::size_t>(graph_.dimension)) {
        std::ostringstream os;
        os << "quasimomentum has " << theta.dimension() << " components, graph dimension is " << graph_.dimension;
        throw InputError(os.str());
    }
}

void FiberFamily::check(std::span<const double> q, const Quasimomentum& theta) const {
    check(theta);
    if (q.size() != order()) throw InputError("potential must have one value per vertex");
}

FiberMatrix FiberFamily::laplacian(const Quasimomentum& theta) const {
    check(theta);
    const auto n = order();
    FiberMatrix a = CMatrix::identity(n);
    for (const auto& e : graph_.edges) {
        const double phi = theta.phase(e.index);
        if (e.is_loop()) {
            a(e.tail, e.tail) -= 2.0 * std::cos(phi) / degree_[e.tail];
        } else {
            const double s = inv_sqrt_degree_[e.tail] * inv_sqrt_degree_[e.head];
            const cplx w = -s * std::polar(1.0, -phi);
            a(e.tail, e.head) += w;
            a(e.head, e.tail) += std::conj(w);
        }
    }
    return a;
}

FiberMatrix FiberFamily::schrodinger(std::span<const double> q, const Quasimomentum& theta) const {
    check(q, theta);
    FiberMatrix a = laplacian(theta);
    for (std::size_t v = 0; v < order(); ++v) a(v, v) += q[v];
    return a;
}

CMatrix FiberFamily::nabla(const Quasimomentum& theta) const {
    check(theta);
    CMatrix out(graph_.edges.size(), order());
    for (std::size_t r = 0; r < graph_.edges.size(); ++r) {
        const auto& e = graph_.edges[r];
        const double half = 0.5 * theta.phase(e.index);
        out(r, e.tail) += std::polar(inv_sqrt_degree_[e.tail], half);
        out(r, e.head) -= std::polar(inv_sqrt_degree_[e.head], -half);
    }
    return out;
}

OffsetSplit FiberFamily::offset(std::span<const double> q, const Quasimomentum& theta) const {
    check(q, theta);
    const auto n = order();
    OffsetSplit split{CMatrix(n, n), schrodinger(q, theta)};
    for (const auto& e : graph_.edges) {
        if (!is_bridge(e)) continue;
        const double phi = theta.phase(e.index);
        if (e.is_loop()) {
            split.offset(e.tail, e.tail) -= 2.0 * std::cos(phi) / degree_[e.tail];
        } else {
            const double s = inv_sqrt_degree_[e.tail] * inv_sqrt_degree_[e.head];
            const cplx w = -s * std::polar(1.0, -phi);
            split.offset(e.tail, e.head) += w;
            split.offset(e.head, e.tail) += std::conj(w);
        }
    }
    split.constant = split.constant - split.offset;
    return split;
}

double FiberFamily::trace_bound() const {
    double s = 0.0;
    for (const auto& e : graph_.edges) {
        if (!is_bridge(e)) continue;
        // each representative is two directed bridges: (u,v) and (v,u), or two loops at u
        s += 2.0 * inv_sqrt_degree_[e.tail] * inv_sqrt_degree_[e.head];
    }
    return 2.0 * s;
}

std::vector<double> FiberFamily::eigenvalues(std::span<const double> q, const Quasimomentum& theta) const {
    return hermitian_eigenvalues(schrodinger(q, theta));
}

PerronVector FiberFamily::perron(std::span<const double> q) const {
    const auto eig = hermitian_eigen(schrodinger(q, Quasimomentum::zero(dimension())));
    const auto n = order();
    PerronVector out;
    out.eigenvalue = eig.values[0];
    out.spectral_gap = n > 1 ? eig.values[1] - eig.values[0] : std::numeric_limits<double>::infinity();

    // H(0) is real symmetric: rotate the column so its largest entry is real positive.
    std::size_t big = 0;
    for (std::size_t v = 1; v < n; ++v)
        if (std::abs(eig.vectors(v, 0)) > std::abs(eig.vectors(big, 0))) big = v;
    const cplx unphase = std::conj(eig.vectors(big, 0)) / std::abs(eig.vectors(big, 0));
    out.psi.resize(n);
    double norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        out.psi[v] = (eig.vectors(v, 0) * unphase).real();
        norm += out.psi[v] * out.psi[v];
    }
    norm = std::sqrt(norm);
    for (auto& x : out.psi) x /= norm;
    for (std::size_t v = 0; v < n; ++v)
        if (out.psi[v] < -1e-12) {
            std::ostringstream os;
            os << "Perron vector has a negative component " << out.psi[v] << " at vertex '" << graph_.vertices[v].id
               << "'";
            throw EigenError(os.str());
        }
    return out;
}

FiberMatrix assemble_laplacian(const FundamentalGraph& graph, const Quasimomentum& theta) {
    return FiberFamily(graph).laplacian(theta);
}

FiberMatrix assemble_schrodinger(const FundamentalGraph& graph, std::span<const double> q, const Quasimomentum& theta) {
    return FiberFamily(graph).schrodinger(q, theta);
}

CMatrix assemble_nabla(const FundamentalGraph& graph, const Quasimomentum& theta) {
    return FiberFamily(graph).nabla(theta);
}

OffsetSplit fiber_offset(const FundamentalGraph& graph, std::span<const double> q, const Quasimomentum& theta) {
    return FiberFamily(graph).offset(q, theta);
}

}  // namespace pergraph
