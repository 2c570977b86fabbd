#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pergraph/bands.hpp"
#include "pergraph/graph.hpp"

namespace pergraph {

/// Additive slack for every inequality checked against grid-derived numbers.
inline constexpr double kSlack = 1e-9;

enum class Verdict { pass, fail, skipped };

const char* to_string(Verdict v);

/// Band structures of H and Δ on one grid plus the graph invariants the checks share.
struct SpectralContext {
    FiberFamily family;
    std::vector<double> potential;
    BZGrid grid;
    BandStructure bands;            ///< H = Δ + Q
    BandStructure laplacian_bands;  ///< Δ
    ZetaReport zeta;
};

SpectralContext analyze(const FundamentalGraph& graph, std::span<const double> q, const BZGrid& grid,
                        const BandOptions& options = {});

/// |σ(H)| ≤ Σ|σ_n| ≤ 2 Tr B(0) ≤ 2ζ
struct MeasureBoundCheck {
    double measure = 0.0;
    double band_length_sum = 0.0;
    double trace_bound = 0.0;
    double two_zeta = 0.0;
    bool holds = false;
    bool equality = false;  ///< |σ(H)| = 2ζ
};

MeasureBoundCheck check_measure_bound(const SpectralContext& ctx);

/// Σ|γ_n| ≥ λ_ν^+ - λ_1^- - 2ζ and λ_ν^+ - λ_1^- ≥ C0 = |λ_ν^{0+} - q•|, q• = max Q - min Q
struct GapSumCheck {
    std::vector<Interval> gap_list;
    double gap_sum = 0.0;
    double extent = 0.0;  ///< λ_ν^+ - λ_1^-
    double lower_bound = 0.0;     ///< extent - 2ζ
    double c0_bound = 0.0;        ///< C0
    double c0_lower_bound = 0.0;  ///< C0 - 2ζ
    bool holds = false;
    bool equality = false;  ///< Σ|γ_n| = extent - 2ζ
};

GapSumCheck check_gap_sum(const SpectralContext& ctx);

/// c0^{-2}|σ1(Δ)| ≤ |σ1(H)| ≤ c0^2 |σ1(Δ)|, with c0 = ψ+/ψ- from the Perron vector of H(0).
struct FirstBandCheck {
    std::vector<double> psi;
    double psi_minus = 0.0;  ///< min ψ(v)/√κ_v
    double psi_plus = 0.0;   ///< max ψ(v)/√κ_v
    double c0 = 1.0;
    double laplacian_width = 0.0;
    double width = 0.0;
    double lower = 0.0;  ///< c0^{-2}|σ1(Δ)|
    double upper = 0.0;  ///< c0^2|σ1(Δ)|
    bool holds = false;
};

FirstBandCheck check_first_band(const SpectralContext& ctx);

/// c0^{-2} m0 ≤ m ≤ c0^2 m0 in the symmetric-matrix order.
struct MassBoundCheck {
    Verdict verdict = Verdict::skipped;
    std::string reason;
    double c0 = 1.0;
    std::optional<EffectiveMass> mass;            ///< of H
    std::optional<EffectiveMass> laplacian_mass;  ///< of Δ
    double min_eig_upper_gap = 0.0;  ///< min eigenvalue of c0^2 m0 - m
    double min_eig_lower_gap = 0.0;  ///< min eigenvalue of m - c0^{-2} m0
};

inline constexpr double kMassSlack = 1e-6;

MassBoundCheck check_effective_mass_bound(const FiberFamily& family, std::span<const double> q,
                                          double step = 1e-3);

/// Band edges of loop graphs: λ_n^- = λ_n(0); with an exact θ0 also λ_n^+ = λ_n(θ0) and Σ|σ_n| = 2ζ;
/// when all bridges are loops at one vertex also |σ(H)| = Σ|σ_n|.
struct LoopGraphCheck {
    std::optional<std::vector<double>> exact_theta;
    bool single_vertex_bridges = false;
    double bottom_error = 0.0;
    double top_error = 0.0;
    double band_length_sum = 0.0;
    double two_zeta = 0.0;
    double measure = 0.0;
    bool holds = false;
};

/// Throws std::logic_error on a non-loop graph.
LoopGraphCheck check_loop_graph(const SpectralContext& ctx);

/// Laplacian statements for bipartite graphs.
struct BipartiteCheck {
    bool fundamental_bipartite = false;
    bool periodic_bipartite = false;
    bool loop_graph = false;
    int part_difference = 0;       ///< |#V1 - #V2| on a bipartite fundamental graph
    double symmetry_error = 0.0;   ///< max_θ,k |λ_k(θ) + λ_{ν+1-k}(θ) - 2|
    int flat_one_multiplicity = 0;
    double gap_sum = 0.0;
    double gap_bound = 0.0;  ///< 2(1 - ζ)
    bool endpoints_from_zero_fiber = true;
    Verdict verdict = Verdict::skipped;
    std::string detail;
};

BipartiteCheck check_bipartite(const SpectralContext& ctx);

/// Pointwise identities, returned as defects (0 when the identity holds exactly).

/// max |∇(θ)*∇(θ) - Δ(θ)|
double factorization_defect(const FiberFamily& family, const Quasimomentum& theta);

/// <Δ(θ)f, f> against (1/2) Σ_{e=(v,u)} |f(v)/√κ_v - e^{-i<τ(e),θ>} f(u)/√κ_u|^2 over all directed
/// edges, relative to the sum of the term magnitudes.
double quadratic_form_defect(const FiberFamily& family, const Quasimomentum& theta, std::span<const cplx> f);

/// <(H(θ) - λ1(0)) Ψf, Ψf> against (1/2) Σ_{e=(v,u)} c_uv |f(v) - e^{-i<τ(e),θ>} f(u)|^2,
/// Ψ = diag ψ, c_uv = ψ(u)ψ(v)/√(κ_u κ_v). Relative as above.
double perron_form_defect(const FiberFamily& family, std::span<const double> q, const PerronVector& perron,
                          const Quasimomentum& theta, std::span<const cplx> f);

/// Eigenvalues of Δ(θ) over a grid lie in [0, 2].
struct RangeCheck {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool holds = false;
};

inline constexpr double kRangeSlack = 1e-10;

RangeCheck check_laplacian_range(const FiberFamily& family, const BZGrid& grid, unsigned threads = 0);

struct CheckLine {
    std::string name;
    Verdict verdict = Verdict::skipped;
    std::string detail;
};

struct SpectralReport {
    ZetaReport zeta;
    bool loop_graph = false;
    std::optional<std::vector<double>> exact_theta;
    std::optional<Bipartition> bipartition;
    bool periodic_bipartite = false;
    std::vector<std::string> warnings;

    BandStructure bands;
    SpectrumUnion spectrum;
    MeasureBoundCheck measure;
    GapSumCheck gap_sum;
    FirstBandCheck first_band;
    MassBoundCheck mass;
    std::optional<LoopGraphCheck> loop;
    BipartiteCheck bipartite;

    std::vector<CheckLine> verdicts;
    bool passed() const;
};

SpectralReport build_report(const FundamentalGraph& graph, std::span<const double> q, const BZGrid& grid,
                            const BandOptions& options = {});

}  // namespace pergraph
