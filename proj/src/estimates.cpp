#include "pergraph/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pergraph {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

SpectralContext analyze(const FundamentalGraph& graph, std::span<const double> q, const BZGrid& grid,
                        const BandOptions& options) {
    FiberFamily family(graph);
    if (q.size() != family.order()) throw InputError("potential must have one value per vertex");
    const std::vector<double> zero(family.order(), 0.0);
    auto bands = compute_bands(family, q, grid, options);
    auto laplacian_bands = compute_bands(family, zero, grid, options);
    auto z = zeta(graph);
    return SpectralContext{std::move(family), std::vector<double>(q.begin(), q.end()), grid, std::move(bands),
                           std::move(laplacian_bands), std::move(z)};
}

MeasureBoundCheck check_measure_bound(const SpectralContext& ctx) {
    MeasureBoundCheck c;
    c.measure = spectrum_union(ctx.bands).measure;
    c.band_length_sum = ctx.bands.total_band_length();
    c.trace_bound = ctx.family.trace_bound();
    c.two_zeta = 2.0 * ctx.zeta.value;
    c.holds = c.measure <= c.band_length_sum + kSlack && c.band_length_sum <= c.trace_bound + kSlack &&
              c.trace_bound <= c.two_zeta + kSlack;
    c.equality = std::abs(c.measure - c.two_zeta) <= kSlack;
    return c;
}

GapSumCheck check_gap_sum(const SpectralContext& ctx) {
    GapSumCheck c;
    c.gap_list = gaps(ctx.bands);
    for (const auto& g : c.gap_list) c.gap_sum += g.length();
    c.extent = ctx.bands.bands.back().hi - ctx.bands.bands.front().lo;
    const double two_zeta = 2.0 * ctx.zeta.value;
    c.lower_bound = c.extent - two_zeta;
    const auto [qmin, qmax] = std::minmax_element(ctx.potential.begin(), ctx.potential.end());
    c.c0_bound = std::abs(ctx.laplacian_bands.bands.back().hi - (*qmax - *qmin));
    c.c0_lower_bound = c.c0_bound - two_zeta;
    c.holds = c.gap_sum >= c.lower_bound - kSlack && c.extent >= c.c0_bound - kSlack;
    c.equality = std::abs(c.gap_sum - c.lower_bound) <= kSlack;
    return c;
}

FirstBandCheck check_first_band(const SpectralContext& ctx) {
    FirstBandCheck c;
    c.psi = ctx.family.perron(ctx.potential).psi;
    c.psi_minus = INFINITY;
    c.psi_plus = -INFINITY;
    for (std::size_t v = 0; v < c.psi.size(); ++v) {
        const double r = c.psi[v] / std::sqrt(static_cast<double>(ctx.family.degree()[v]));
        c.psi_minus = std::min(c.psi_minus, r);
        c.psi_plus = std::max(c.psi_plus, r);
    }
    c.c0 = c.psi_plus / c.psi_minus;
    c.laplacian_width = ctx.laplacian_bands.bands.front().width();
    c.width = ctx.bands.bands.front().width();
    c.lower = c.laplacian_width / (c.c0 * c.c0);
    c.upper = c.laplacian_width * c.c0 * c.c0;
    c.holds = c.lower <= c.width + kSlack && c.width <= c.upper + kSlack && c.width > kSlack;
    return c;
}

namespace {

double min_eigenvalue_of_combination(const EffectiveMass& a, double wa, const EffectiveMass& b, double wb) {
    auto m = a.mass;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = wa * a.mass[i][j] + wb * b.mass[i][j];
    return symmetric_eigenvalues(m).front();
}

double c0_of(const FiberFamily& family, std::span<const double> q) {
    const auto psi = family.perron(q).psi;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t v = 0; v < psi.size(); ++v) {
        const double r = psi[v] / std::sqrt(static_cast<double>(family.degree()[v]));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi / lo;
}

}  // namespace

MassBoundCheck check_effective_mass_bound(const FiberFamily& family, std::span<const double> q, double step) {
    MassBoundCheck c;
    try {
        c.c0 = c0_of(family, q);
        c.mass = effective_mass(family, q, step);
        c.laplacian_mass = effective_mass(family, std::vector<double>(family.order(), 0.0), step);
    } catch (const MassError& e) {
        c.verdict = Verdict::skipped;
        c.reason = e.what();
        return c;
    }
    const double c2 = c.c0 * c.c0;
    c.min_eig_upper_gap = min_eigenvalue_of_combination(*c.laplacian_mass, c2, *c.mass, -1.0);
    c.min_eig_lower_gap = min_eigenvalue_of_combination(*c.mass, 1.0, *c.laplacian_mass, -1.0 / c2);
    const bool ok = c.min_eig_upper_gap >= -kMassSlack && c.min_eig_lower_gap >= -kMassSlack;
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    return c;
}

LoopGraphCheck check_loop_graph(const SpectralContext& ctx) {
    const auto& graph = ctx.family.graph();
    if (!is_loop_graph(graph)) throw std::logic_error("loop-graph check requested for a non-loop graph");
    LoopGraphCheck c;
    const auto& bands = ctx.bands.bands;
    const auto at_zero = ctx.family.eigenvalues(ctx.potential, Quasimomentum::zero(graph.dimension));
    for (std::size_t n = 0; n < bands.size(); ++n) c.bottom_error = std::max(c.bottom_error, std::abs(bands[n].lo - at_zero[n]));
    c.band_length_sum = ctx.bands.total_band_length();
    c.two_zeta = 2.0 * ctx.zeta.value;
    c.measure = spectrum_union(ctx.bands).measure;

    std::optional<std::size_t> hub;
    c.single_vertex_bridges = true;
    for (const auto& b : bridges(graph).edges) {
        if (hub && *hub != b.tail) c.single_vertex_bridges = false;
        hub = b.tail;
    }

    c.holds = c.bottom_error <= kSlack;
    c.exact_theta = exact_quasimomentum(graph);
    if (c.exact_theta) {
        const auto at_exact = ctx.family.eigenvalues(ctx.potential, Quasimomentum(*c.exact_theta));
        for (std::size_t n = 0; n < bands.size(); ++n) c.top_error = std::max(c.top_error, std::abs(bands[n].hi - at_exact[n]));
        c.holds = c.holds && c.top_error <= kSlack && std::abs(c.band_length_sum - c.two_zeta) <= kSlack;
        if (c.single_vertex_bridges) c.holds = c.holds && std::abs(c.measure - c.band_length_sum) <= kSlack;
    }
    return c;
}

BipartiteCheck check_bipartite(const SpectralContext& ctx) {
    const auto& graph = ctx.family.graph();
    BipartiteCheck c;
    const auto parts = is_bipartite(graph);
    c.fundamental_bipartite = parts.has_value();
    c.periodic_bipartite = is_periodic_bipartite(graph);
    c.loop_graph = is_loop_graph(graph);
    if (!c.periodic_bipartite) {
        c.verdict = Verdict::skipped;
        c.detail = "periodic graph is not bipartite";
        return c;
    }

    bool ok = true;
    std::ostringstream detail;
    detail.precision(15);
    const auto& lap = ctx.laplacian_bands;

    if (parts) {
        const auto n = ctx.family.order();
        const std::vector<double> zero(n, 0.0);
        std::vector<double> worst(ctx.grid.size(), 0.0);
        parallel_for(ctx.grid.size(), 0, [&](std::size_t i) {
            const auto ev = ctx.family.eigenvalues(zero, ctx.grid.point(i));
            for (std::size_t k = 0; k < n; ++k) worst[i] = std::max(worst[i], std::abs(ev[k] + ev[n - 1 - k] - 2.0));
        });
        for (double w : worst) c.symmetry_error = std::max(c.symmetry_error, w);
        ok = ok && c.symmetry_error <= kSlack;

        c.part_difference = std::abs(static_cast<int>(parts->first.size()) - static_cast<int>(parts->second.size()));
        for (const auto& f : lap.flat_bands)
            if (std::abs(f.value - 1.0) < lap.flat_tol) c.flat_one_multiplicity = f.multiplicity;
        if (c.part_difference > 0) ok = ok && c.flat_one_multiplicity >= c.part_difference;
        detail << "fiber spectra symmetric about 1 (error " << c.symmetry_error << "); flat {1} multiplicity "
               << c.flat_one_multiplicity << " vs part difference " << c.part_difference << "; ";
    }

    for (const auto& g : gaps(lap)) c.gap_sum += g.length();
    c.gap_bound = 2.0 * (1.0 - ctx.zeta.value);
    ok = ok && c.gap_sum >= c.gap_bound - kSlack;
    detail << "gap sum " << c.gap_sum << " >= 2(1 - zeta) = " << c.gap_bound;

    if (c.loop_graph) {
        const auto at_zero = ctx.family.eigenvalues(std::vector<double>(ctx.family.order(), 0.0),
                                                    Quasimomentum::zero(graph.dimension));
        auto member = [&](double x, bool reflected) {
            return std::any_of(at_zero.begin(), at_zero.end(),
                               [&](double e) { return std::abs((reflected ? 2.0 - e : e) - x) <= kSlack; });
        };
        for (const auto& b : lap.bands)
            c.endpoints_from_zero_fiber = c.endpoints_from_zero_fiber && member(b.lo, false) && member(b.hi, true);
        ok = ok && c.endpoints_from_zero_fiber;
        detail << "; band edges from sigma(Delta(0)) and 2 - sigma(Delta(0)): "
               << (c.endpoints_from_zero_fiber ? "yes" : "no");
    }
    c.verdict = ok ? Verdict::pass : Verdict::fail;
    c.detail = detail.str();
    return c;
}

double factorization_defect(const FiberFamily& family, const Quasimomentum& theta) {
    const auto nabla = family.nabla(theta);
    return (nabla.adjoint() * nabla - family.laplacian(theta)).max_abs();
}

double quadratic_form_defect(const FiberFamily& family, const Quasimomentum& theta, std::span<const cplx> f) {
    if (f.size() != family.order()) throw InputError("test vector must have one entry per vertex");
    const auto df = family.laplacian(theta).apply(f);
    const double lhs = inner(df, f).real();
    double rhs = 0.0, scale = 0.0;
    for (const auto& e : directed_edges(family.graph())) {
        const double a = 1.0 / std::sqrt(static_cast<double>(family.degree()[e.tail]));
        const double b = 1.0 / std::sqrt(static_cast<double>(family.degree()[e.head]));
        const cplx term = a * f[e.tail] - std::polar(b, -theta.phase(e.index)) * f[e.head];
        rhs += 0.5 * std::norm(term);
        scale += 0.5 * std::pow(a * std::abs(f[e.tail]) + b * std::abs(f[e.head]), 2);
    }
    return std::abs(lhs - rhs) / std::max(scale, std::numeric_limits<double>::min());
}

double perron_form_defect(const FiberFamily& family, std::span<const double> q, const PerronVector& perron,
                          const Quasimomentum& theta, std::span<const cplx> f) {
    if (f.size() != family.order()) throw InputError("test vector must have one entry per vertex");
    const auto& psi = perron.psi;
    std::vector<cplx> g(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) g[v] = psi[v] * f[v];
    auto shifted = family.schrodinger(q, theta);
    for (std::size_t v = 0; v < f.size(); ++v) shifted(v, v) -= perron.eigenvalue;
    const double lhs = inner(shifted.apply(g), g).real();
    double rhs = 0.0, scale = 0.0;
    for (const auto& e : directed_edges(family.graph())) {
        const double c = psi[e.tail] * psi[e.head] /
                         std::sqrt(static_cast<double>(family.degree()[e.tail]) * family.degree()[e.head]);
        const cplx term = f[e.tail] - std::polar(1.0, -theta.phase(e.index)) * f[e.head];
        rhs += 0.5 * c * std::norm(term);
        scale += 0.5 * std::abs(c) * std::pow(std::abs(f[e.tail]) + std::abs(f[e.head]), 2);
    }
    return std::abs(lhs - rhs) / std::max(scale, std::numeric_limits<double>::min());
}

RangeCheck check_laplacian_range(const FiberFamily& family, const BZGrid& grid, unsigned threads) {
    std::vector<std::pair<double, double>> extremes(grid.size());
    const std::vector<double> zero(family.order(), 0.0);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const auto ev = family.eigenvalues(zero, grid.point(i));
        extremes[i] = {ev.front(), ev.back()};
    });
    RangeCheck c;
    c.min_eigenvalue = INFINITY;
    c.max_eigenvalue = -INFINITY;
    for (const auto& [lo, hi] : extremes) {
        c.min_eigenvalue = std::min(c.min_eigenvalue, lo);
        c.max_eigenvalue = std::max(c.max_eigenvalue, hi);
    }
    c.holds = c.min_eigenvalue >= -kRangeSlack && c.max_eigenvalue <= 2.0 + kRangeSlack;
    return c;
}

bool SpectralReport::passed() const {
    return std::none_of(verdicts.begin(), verdicts.end(), [](const CheckLine& l) { return l.verdict == Verdict::fail; });
}

namespace {

Verdict of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

std::string num(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace

SpectralReport build_report(const FundamentalGraph& graph, std::span<const double> q, const BZGrid& grid,
                            const BandOptions& options) {
    const auto ctx = analyze(graph, q, grid, options);
    SpectralReport r;
    r.zeta = ctx.zeta;
    r.loop_graph = is_loop_graph(graph);
    if (r.loop_graph) r.exact_theta = exact_quasimomentum(graph);
    r.bipartition = is_bipartite(graph);
    r.periodic_bipartite = is_periodic_bipartite(graph);
    r.warnings = connectivity_warnings(graph);
    if (r.zeta.no_bridges) r.warnings.push_back("no bridges: periodic graph cannot be connected");

    r.bands = ctx.bands;
    r.spectrum = spectrum_union(ctx.bands);
    r.measure = check_measure_bound(ctx);
    r.gap_sum = check_gap_sum(ctx);
    r.first_band = check_first_band(ctx);
    r.mass = check_effective_mass_bound(ctx.family, ctx.potential);
    if (r.loop_graph) r.loop = check_loop_graph(ctx);
    r.bipartite = check_bipartite(ctx);

    r.verdicts.push_back({"zeta_bound", of(r.zeta.within_bound),
                          "zeta = " + num(r.zeta.value) + " <= " + num(r.zeta.bound)});
    r.verdicts.push_back({"measure_bound", of(r.measure.holds),
                          num(r.measure.measure) + " <= " + num(r.measure.band_length_sum) + " <= " +
                              num(r.measure.trace_bound) + " <= " + num(r.measure.two_zeta) +
                              (r.measure.equality ? " (equality)" : "")});
    r.verdicts.push_back({"gap_sum_bound", of(r.gap_sum.holds),
                          "gap sum " + num(r.gap_sum.gap_sum) + " >= " + num(r.gap_sum.lower_bound) + "; extent " +
                              num(r.gap_sum.extent) + " >= C0 " + num(r.gap_sum.c0_bound) +
                              (r.gap_sum.equality ? " (equality)" : "")});
    r.verdicts.push_back({"first_band", of(r.first_band.holds),
                          num(r.first_band.lower) + " <= " + num(r.first_band.width) + " <= " +
                              num(r.first_band.upper) + " (c0 = " + num(r.first_band.c0) + ")"});
    r.verdicts.push_back({"effective_mass_bound", r.mass.verdict,
                          r.mass.verdict == Verdict::skipped ? r.mass.reason
                                                             : "min eigenvalues " + num(r.mass.min_eig_upper_gap) +
                                                                   ", " + num(r.mass.min_eig_lower_gap)});
    if (r.loop)
        r.verdicts.push_back({"loop_graph", of(r.loop->holds),
                              "bottom error " + num(r.loop->bottom_error) + ", top error " + num(r.loop->top_error) +
                                  (r.loop->exact_theta ? ", exact" : ", no exact quasimomentum found")});
    else
        r.verdicts.push_back({"loop_graph", Verdict::skipped, "not a loop graph"});
    r.verdicts.push_back({"bipartite", r.bipartite.verdict, r.bipartite.detail});
    return r;
}

}  // namespace pergraph
