#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pergraph/fiber.hpp"

namespace pergraph {

/// K^d points θ_k = 2πk/K per axis. K even keeps both 0 and π on the grid.
class BZGrid {
public:
    BZGrid(int dimension, int points_per_axis);

    int dimension() const { return d_; }
    int points_per_axis() const { return k_; }
    std::size_t size() const { return size_; }
    /// Point number `i` in row-major order, last axis fastest.
    Quasimomentum point(std::size_t i) const;

private:
    int d_;
    int k_;
    std::size_t size_;
};

/// Threads used for grid sweeps: PERGRAPH_THREADS if set and positive, else hardware concurrency.
unsigned default_thread_count();

/// Evaluates f(0..count-1) across threads; results land in index order.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f);

struct Band {
    double lo = 0.0;  ///< λ_n^-
    double hi = 0.0;  ///< λ_n^+
    bool flat = false;

    double width() const { return hi - lo; }
};

struct FlatBand {
    double value = 0.0;
    int multiplicity = 0;
    std::vector<std::size_t> bands;  ///< zero-based band numbers in the group
};

struct BandOptions {
    double flat_tol = 1e-8;
    unsigned threads = 0;  ///< 0: default_thread_count()
};

struct BandStructure {
    int dimension = 0;
    int points_per_axis = 0;
    double flat_tol = 1e-8;
    std::vector<Band> bands;
    std::vector<FlatBand> flat_bands;

    std::size_t order() const { return bands.size(); }
    /// Σ_n |σ_n|
    double total_band_length() const;
};

/// Band endpoints as min/max of the sorted eigenvalues of H(θ) over the grid.
BandStructure compute_bands(const FiberFamily& family, std::span<const double> q, const BZGrid& grid,
                            const BandOptions& options = {});

/// Groups flat bands by value: consecutive flat bands within flat_tol of the group's first value.
std::vector<FlatBand> group_flat_bands(const std::vector<Band>& bands, double flat_tol);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

struct SpectrumUnion {
    std::vector<Interval> components;  ///< merged non-flat bands, ascending
    std::vector<double> isolated;      ///< flat-band values outside every component
    double measure = 0.0;
};

/// Default tolerance for joining band intervals that touch up to rounding.
inline constexpr double kTouchTol = 1e-9;

SpectrumUnion spectrum_union(const BandStructure& bands, double touch_tol = kTouchTol);

/// Open intervals between consecutive components of the non-flat union.
std::vector<Interval> gaps(const BandStructure& bands, double touch_tol = kTouchTol);

struct EffectiveMass {
    std::vector<std::vector<double>> hessian;  ///< M_ij = ∂²λ1(0)/∂θi∂θj
    std::vector<std::vector<double>> mass;     ///< m = M^{-1}
};

class MassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Central second differences of λ1 at θ = 0 with steps h and h/2, combined by one Richardson
/// step. Throws MassError when λ1(0) is degenerate or M has condition number above 1e12.
EffectiveMass effective_mass(const FiberFamily& family, std::span<const double> q, double step = 1e-3);

/// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& a);

/// Eigenvalues along the straight segment from `from` to `to` in `steps` equal steps (steps + 1 rows).
struct PathSample {
    Quasimomentum theta;
    std::vector<double> eigenvalues;
};
std::vector<PathSample> sample_path(const FiberFamily& family, std::span<const double> q, const Quasimomentum& from,
                                    const Quasimomentum& to, int steps);

}  // namespace pergraph
