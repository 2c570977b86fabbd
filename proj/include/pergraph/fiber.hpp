#pragma once

#include <span>
#include <vector>

#include "pergraph/eigen.hpp"
#include "pergraph/graph.hpp"
#include "pergraph/matrix.hpp"

namespace pergraph {

/// Point of the torus R^d / (2πZ)^d. Fibers are 2π-periodic, so components are stored as given.
struct Quasimomentum {
    std::vector<double> theta;

    Quasimomentum() = default;
    explicit Quasimomentum(std::vector<double> components) : theta(std::move(components)) {}

    static Quasimomentum zero(int d) { return Quasimomentum(std::vector<double>(static_cast<std::size_t>(d), 0.0)); }
    static Quasimomentum pi(int d);

    std::size_t dimension() const { return theta.size(); }
    /// Components reduced into [0, 2π).
    Quasimomentum wrapped() const;
    double phase(const IndexVector& index) const;  ///< <τ, θ>
};

/// H(θ) = H0 + h(θ): h collects the bridges, H0 is θ-independent.
struct OffsetSplit {
    FiberMatrix offset;    ///< h(θ)
    FiberMatrix constant;  ///< H0
};

/// Positive eigenvector of H(0) at its lowest eigenvalue.
struct PerronVector {
    double eigenvalue = 0.0;
    double spectral_gap = 0.0;  ///< λ2(0) - λ1(0); +inf for ν = 1
    std::vector<double> psi;    ///< unit norm, componentwise positive
};

/// Fiber operators of one fundamental graph. Validates once; assembly is then cheap and pure.
///
/// Matrix convention (standard basis of l²(V*)):
///   Δ_uu(θ) = 1 - (1/κ_u) Σ_{loops e=(u,u)} cos<τ(e),θ>   (both orientations of each loop)
///   Δ_uv(θ) = -(1/√(κ_u κ_v)) Σ_{e=(u,v)} exp(-i<τ(e),θ>),  u ≠ v
class FiberFamily {
public:
    explicit FiberFamily(FundamentalGraph graph);

    const FundamentalGraph& graph() const { return graph_; }
    const std::vector<int>& degree() const { return degree_; }
    std::size_t order() const { return graph_.order(); }
    int dimension() const { return graph_.dimension; }

    FiberMatrix laplacian(const Quasimomentum& theta) const;
    /// Δ(θ) + diag(q); q has one entry per vertex.
    FiberMatrix schrodinger(std::span<const double> q, const Quasimomentum& theta) const;

    /// ∇(θ): one row per edge representative e = (v, u) with index τ, φ = <τ, θ>:
    /// e^{iφ/2}/√κ_v in column v minus e^{-iφ/2}/√κ_u in column u. Then ∇(θ)*∇(θ) = Δ(θ).
    CMatrix nabla(const Quasimomentum& theta) const;

    OffsetSplit offset(std::span<const double> q, const Quasimomentum& theta) const;

    /// 2 Tr B(0) = 2 Σ_{u,v} ζ_uv / √(κ_u κ_v), ζ_uv = number of bridges (u, v).
    double trace_bound() const;

    std::vector<double> eigenvalues(std::span<const double> q, const Quasimomentum& theta) const;

    /// Throws EigenError when a component is below -1e-12 (impossible on a connected graph).
    PerronVector perron(std::span<const double> q) const;

private:
    void check(std::span<const double> q, const Quasimomentum& theta) const;
    void check(const Quasimomentum& theta) const;

    FundamentalGraph graph_;
    std::vector<int> degree_;
    std::vector<double> inv_sqrt_degree_;
};

// One-shot forms of the FiberFamily members.
FiberMatrix assemble_laplacian(const FundamentalGraph& graph, const Quasimomentum& theta);
FiberMatrix assemble_schrodinger(const FundamentalGraph& graph, std::span<const double> q, const Quasimomentum& theta);
CMatrix assemble_nabla(const FundamentalGraph& graph, const Quasimomentum& theta);
OffsetSplit fiber_offset(const FundamentalGraph& graph, std::span<const double> q, const Quasimomentum& theta);

}  // namespace pergraph
