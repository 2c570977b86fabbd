#include "pergraph/bands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace pergraph {

BZGrid::BZGrid(int dimension, int points_per_axis) : d_(dimension), k_(points_per_axis), size_(1) {
    if (dimension < 1) throw InputError("grid dimension must be positive");
    if (points_per_axis < 2 || points_per_axis % 2 != 0) throw InputError("grid must be even to include π");
    for (int i = 0; i < d_; ++i) {
        if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(k_)) throw InputError("grid too large");
        size_ *= static_cast<std::size_t>(k_);
    }
}

Quasimomentum BZGrid::point(std::size_t i) const {
    std::vector<double> theta(static_cast<std::size_t>(d_));
    const auto k = static_cast<std::size_t>(k_);
    for (int axis = d_ - 1; axis >= 0; --axis) {
        theta[static_cast<std::size_t>(axis)] = 2.0 * std::numbers::pi * static_cast<double>(i % k) / k_;
        i /= k;
    }
    return Quasimomentum(std::move(theta));
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("PERGRAPH_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads == 0) threads = default_thread_count();
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t begin = count * w / workers;
                const std::size_t end = count * (w + 1) / workers;
                try {
                    for (std::size_t i = begin; i < end; ++i) f(i);
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

double BandStructure::total_band_length() const {
    double s = 0.0;
    for (const auto& b : bands) s += b.width();
    return s;
}

std::vector<FlatBand> group_flat_bands(const std::vector<Band>& bands, double flat_tol) {
    std::vector<FlatBand> groups;
    for (std::size_t n = 0; n < bands.size(); ++n) {
        if (!bands[n].flat) continue;
        const double value = 0.5 * (bands[n].lo + bands[n].hi);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const FlatBand& g) { return std::abs(g.value - value) < flat_tol; });
        if (it == groups.end()) {
            groups.push_back({value, 1, {n}});
        } else {
            ++it->multiplicity;
            it->bands.push_back(n);
        }
    }
    return groups;
}

BandStructure compute_bands(const FiberFamily& family, std::span<const double> q, const BZGrid& grid,
                            const BandOptions& options) {
    if (grid.dimension() != family.dimension()) throw InputError("grid dimension differs from graph dimension");
    const auto n = family.order();
    std::vector<std::vector<double>> values(grid.size());
    parallel_for(grid.size(), options.threads,
                 [&](std::size_t i) { values[i] = family.eigenvalues(q, grid.point(i)); });

    BandStructure out;
    out.dimension = grid.dimension();
    out.points_per_axis = grid.points_per_axis();
    out.flat_tol = options.flat_tol;
    out.bands.assign(n, Band{INFINITY, -INFINITY, false});
    for (const auto& row : values)
        for (std::size_t b = 0; b < n; ++b) {
            out.bands[b].lo = std::min(out.bands[b].lo, row[b]);
            out.bands[b].hi = std::max(out.bands[b].hi, row[b]);
        }
    for (auto& b : out.bands) b.flat = b.width() < options.flat_tol;
    out.flat_bands = group_flat_bands(out.bands, options.flat_tol);
    return out;
}

SpectrumUnion spectrum_union(const BandStructure& bands, double touch_tol) {
    std::vector<Interval> pieces;
    for (const auto& b : bands.bands)
        if (!b.flat) pieces.push_back({b.lo, b.hi});
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

    SpectrumUnion out;
    for (const auto& p : pieces) {
        if (!out.components.empty() && p.lo <= out.components.back().hi + touch_tol)
            out.components.back().hi = std::max(out.components.back().hi, p.hi);
        else
            out.components.push_back(p);
    }
    for (const auto& c : out.components) out.measure += c.length();
    for (const auto& f : bands.flat_bands) {
        const bool inside = std::any_of(out.components.begin(), out.components.end(), [&](const Interval& c) {
            return f.value >= c.lo - touch_tol && f.value <= c.hi + touch_tol;
        });
        if (!inside) out.isolated.push_back(f.value);
    }
    std::sort(out.isolated.begin(), out.isolated.end());
    return out;
}

std::vector<Interval> gaps(const BandStructure& bands, double touch_tol) {
    const auto u = spectrum_union(bands, touch_tol);
    std::vector<Interval> out;
    for (std::size_t i = 1; i < u.components.size(); ++i) out.push_back({u.components[i - 1].hi, u.components[i].lo});
    return out;
}

std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& a) {
    CMatrix m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
    return hermitian_eigenvalues(m);
}

namespace {

using Real = std::vector<std::vector<double>>;

Real hessian(const FiberFamily& family, std::span<const double> q, double h, double f0) {
    const auto d = static_cast<std::size_t>(family.dimension());
    auto lambda1 = [&](std::size_t i, double si, std::size_t j, double sj) {
        std::vector<double> theta(d, 0.0);
        theta[i] += si * h;
        theta[j] += sj * h;
        return family.eigenvalues(q, Quasimomentum(std::move(theta)))[0];
    };
    Real m(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        // lambda1(i, s, i, 0) shifts only axis i
        m[i][i] = (lambda1(i, 1, i, 0) - 2.0 * f0 + lambda1(i, -1, i, 0)) / (h * h);
        for (std::size_t j = i + 1; j < d; ++j) {
            m[i][j] = (lambda1(i, 1, j, 1) - lambda1(i, 1, j, -1) - lambda1(i, -1, j, 1) + lambda1(i, -1, j, -1)) /
                      (4.0 * h * h);
            m[j][i] = m[i][j];
        }
    }
    return m;
}

Real invert(Real a) {
    const auto n = a.size();
    Real inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) throw MassError("effective mass undefined (M singular)");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double p = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace

EffectiveMass effective_mass(const FiberFamily& family, std::span<const double> q, double step) {
    if (!(step > 0.0)) throw InputError("finite-difference step must be positive");
    const auto perron = family.perron(q);
    if (perron.spectral_gap <= 1e-8) throw MassError("effective mass undefined (lowest eigenvalue at 0 is degenerate)");
    const double f0 = perron.eigenvalue;

    const Real coarse = hessian(family, q, step, f0);
    const Real fine = hessian(family, q, 0.5 * step, f0);
    const auto d = coarse.size();
    EffectiveMass out;
    out.hessian.assign(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out.hessian[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double s = 0.5 * (out.hessian[i][j] + out.hessian[j][i]);
            out.hessian[i][j] = out.hessian[j][i] = s;
        }

    const auto ev = symmetric_eigenvalues(out.hessian);
    double lo = INFINITY, hi = 0.0;
    for (double x : ev) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    if (!(lo > 0.0) || hi / lo > 1e12) throw MassError("effective mass undefined (M singular)");
    out.mass = invert(out.hessian);
    return out;
}

std::vector<PathSample> sample_path(const FiberFamily& family, std::span<const double> q, const Quasimomentum& from,
                                    const Quasimomentum& to, int steps) {
    if (steps < 1) throw InputError("path needs at least one step");
    if (from.dimension() != to.dimension()) throw InputError("path endpoints differ in dimension");
    std::vector<PathSample> out(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        std::vector<double> theta(from.dimension());
        const double t = static_cast<double>(k) / steps;
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = from.theta[i] + t * (to.theta[i] - from.theta[i]);
        auto& s = out[static_cast<std::size_t>(k)];
        s.theta = Quasimomentum(std::move(theta));
        s.eigenvalues = family.eigenvalues(q, s.theta);
    }
    return out;
}

}  // namespace pergraph
