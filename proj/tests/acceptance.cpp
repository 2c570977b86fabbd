// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.
// Expected values are closed forms evaluated here, independent of the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "pergraph/bands.hpp"
#include "pergraph/catalog.hpp"
#include "pergraph/eigen.hpp"
#include "pergraph/estimates.hpp"
#include "pergraph/fiber.hpp"
#include "support/oracles.hpp"

using namespace pergraph;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) notes << "; ";
            notes << what;
            pass = false;
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        if (std::abs(got - want) > tol || !std::isfinite(got)) {
            std::ostringstream os;
            os.precision(15);
            os << what << ": got " << got << ", expected " << want;
            expect(false, os.str());
        }
    }
};

BandStructure bands_of(const FundamentalGraph& g, const std::vector<double>& q, int k) {
    return compute_bands(FiberFamily(g), q, BZGrid(g.dimension, k));
}

std::vector<double> zeros(const FundamentalGraph& g) { return std::vector<double>(g.order(), 0.0); }

void criterion_1(Outcome& o) {
    const auto g = generate(CrystalFamily::bcc());
    const auto b = bands_of(g, zeros(g), 16);
    o.near(b.bands[0].lo, 0.0, kTol, "lambda1-");
    o.near(b.bands[0].hi, 1.0, kTol, "lambda1+");
    o.near(b.bands[1].lo, 1.0, kTol, "lambda2-");
    o.near(b.bands[1].hi, 11.0 / 7.0, kTol, "lambda2+");
}

void criterion_2(Outcome& o) {
    const auto g = generate(CrystalFamily::bcc());
    for (double q1 : {-1.0, -1.0 / 7.0, 0.0, 3.0 / 7.0, 1.0}) {
        const auto b = bands_of(g, {q1, 0.0}, 16);
        const double root = 0.5 * std::sqrt(std::pow(3.0 / 7.0 + q1, 2) + 16.0 / 7.0);
        const std::string tag = "q1=" + std::to_string(q1) + " ";
        o.near(b.bands[0].lo, 11.0 / 14.0 + q1 / 2 - root, kTol, tag + "lambda1-");
        o.near(b.bands[1].hi, 11.0 / 14.0 + q1 / 2 + root, kTol, tag + "lambda2+");
        o.near(b.bands[0].hi, q1 <= 3.0 / 7.0 ? 1.0 + q1 : 10.0 / 7.0, kTol, tag + "lambda1+");
        o.near(b.bands[1].lo, q1 >= -1.0 / 7.0 ? 1.0 + q1 : 6.0 / 7.0, kTol, tag + "lambda2-");

        const auto gp = gaps(b);
        if (q1 > 3.0 / 7.0 + 1e-12) {
            o.expect(gp.size() == 1, tag + "expected one gap");
            if (gp.size() == 1) {
                o.near(gp[0].lo, 10.0 / 7.0, kTol, tag + "gap lo");
                o.near(gp[0].hi, 1.0 + q1, kTol, tag + "gap hi");
            }
        } else if (q1 < -1.0 / 7.0 - 1e-12) {
            o.expect(gp.size() == 1, tag + "expected one gap");
            if (gp.size() == 1) {
                o.near(gp[0].lo, 1.0 + q1, kTol, tag + "gap lo");
                o.near(gp[0].hi, 6.0 / 7.0, kTol, tag + "gap hi");
            }
        } else {
            o.expect(gp.empty(), tag + "expected no gap");
        }
    }
}

void criterion_3(Outcome& o) {
    const auto g = generate(CrystalFamily::fcc());
    const auto b = bands_of(g, zeros(g), 16);
    o.near(b.bands[0].lo, 0.0, kTol, "band 1 min");
    o.near(b.bands[0].hi, 1.0, kTol, "band 1 max");
    o.expect(!b.bands[0].flat && !b.bands[3].flat, "bands 1 and 4 should be non-flat");
    o.expect(b.flat_bands.size() == 1 && b.flat_bands[0].multiplicity == 2, "expected flat {1} with multiplicity 2");
    if (!b.flat_bands.empty()) o.near(b.flat_bands[0].value, 1.0, kTol, "flat value");
    o.near(b.bands[3].lo, 4.0 / 3.0, kTol, "band 4 min");
    o.near(b.bands[3].hi, 5.0 / 3.0, kTol, "band 4 max");

    const double q = 0.3;
    const auto b3 = bands_of(g, {q, q, q, 0.0}, 16);
    bool found = false;
    for (const auto& f : b3.flat_bands)
        if (std::abs(f.value - (q + 1)) < kTol && f.multiplicity == 2) found = true;
    o.expect(found && b3.flat_bands.size() == 1, "Q=(q,q,q,0): flat q+1 with multiplicity 2");

    const auto b2 = bands_of(g, {q, q, 0.0, 0.0}, 16);
    found = false;
    for (const auto& f : b2.flat_bands)
        if (std::abs(f.value - (q + 1)) < kTol && f.multiplicity == 1) found = true;
    o.expect(found && b2.flat_bands.size() == 1, "Q=(q,q,0,0): flat q+1 with multiplicity 1");
}

void criterion_4(Outcome& o) {
    std::mt19937_64 rng(4);
    const int d = 2;
    for (int nu : {3, 5, 9}) {
        const auto g = generate(CrystalFamily::star_decorated(d, nu));
        const double xi = nu + 2 * d - 1;
        for (int t = 0; t < 20; ++t) {
            const auto q = oracle::uniform_vector(rng, g.order(), -1.0, 1.0);
            const auto ctx = analyze(g, q, BZGrid(d, 16));
            const auto m = check_measure_bound(ctx);
            const auto gs = check_gap_sum(ctx);
            const std::string tag = "nu=" + std::to_string(nu) + " trial " + std::to_string(t) + " ";
            o.near(m.measure, 4.0 * d / xi, kTol, tag + "|sigma(H)|");
            o.expect(m.holds && m.equality, tag + "measure bound equality");
            o.expect(gs.holds && gs.equality, tag + "gap-sum bound equality");
        }
    }
}

void criterion_5(Outcome& o) {
    for (int d : {2, 3}) {
        for (int n = 1; n <= 3; ++n) {
            const auto g = generate(CrystalFamily::subdivided(d, n));
            const auto b = bands_of(g, zeros(g), d == 2 ? 16 : 8);
            const std::string tag = "d=" + std::to_string(d) + " N=" + std::to_string(n) + " ";
            o.expect(b.flat_bands.size() == static_cast<std::size_t>(n), tag + "expected N flat values");
            for (int k = 1; k <= n; ++k) {
                const double want = 1.0 + std::cos(oracle::pi * k / (n + 1));
                bool found = false;
                for (const auto& f : b.flat_bands)
                    if (std::abs(f.value - want) < kTol && f.multiplicity == d - 1) found = true;
                o.expect(found, tag + "flat band at 1+cos(" + std::to_string(k) + "pi/(N+1)) multiplicity d-1");
            }
            const auto u = spectrum_union(b);
            o.expect(u.components.size() == 1, tag + "non-flat union should be one interval");
            if (!u.components.empty()) {
                o.near(u.components.front().lo, 0.0, kTol, tag + "union min");
                o.near(u.components.back().hi, 2.0, kTol, tag + "union max");
            }
        }
    }
}

void criterion_6(Outcome& o) {
    std::mt19937_64 rng(6);
    const std::vector<CrystalFamily> families{CrystalFamily::lattice(1),         CrystalFamily::lattice(2),
                                              CrystalFamily::lattice(3),         CrystalFamily::star_decorated(2, 3),
                                              CrystalFamily::star_decorated(2, 5), CrystalFamily::star_decorated(3, 4)};
    for (int t = 0; t < 50; ++t) {
        const auto& f = families[static_cast<std::size_t>(t) % families.size()];
        const auto g = generate(f);
        const auto q = oracle::uniform_vector(rng, g.order(), -1.0, 1.0);
        const auto ctx = analyze(g, q, BZGrid(g.dimension, g.dimension == 3 ? 8 : 16));
        const auto c = check_loop_graph(ctx);
        const std::string tag = f.name() + " trial " + std::to_string(t) + " ";
        o.expect(c.exact_theta.has_value(), tag + "exact quasimomentum");
        if (c.exact_theta)
            for (double x : *c.exact_theta) o.near(x, oracle::pi, 0.0, tag + "theta0 component");
        // independent: band edges against the fibers at 0 and at (pi, ..., pi)
        const auto at0 = ctx.family.eigenvalues(q, Quasimomentum::zero(g.dimension));
        const auto atpi = ctx.family.eigenvalues(q, Quasimomentum::pi(g.dimension));
        double sum = 0.0;
        for (std::size_t n = 0; n < g.order(); ++n) {
            o.near(ctx.bands.bands[n].lo, at0[n], kTol, tag + "lambda_n- = lambda_n(0)");
            o.near(ctx.bands.bands[n].hi, atpi[n], kTol, tag + "lambda_n+ = lambda_n(pi)");
            sum += ctx.bands.bands[n].width();
        }
        const auto kappa = oracle::degrees(g);
        double zeta = 0.0;
        for (const auto& e : g.edges) {
            bool bridge = false;
            for (int x : e.index) bridge = bridge || x != 0;
            if (bridge) zeta += 1.0 / kappa[e.tail] + 1.0 / kappa[e.head];
        }
        o.near(sum, 2.0 * zeta, kTol, tag + "band length sum = 2 zeta");
        o.expect(c.holds, tag + "loop-graph verdict");
    }
}

void criterion_7(Outcome& o) {
    std::mt19937_64 rng(7);
    const auto families = oracle::catalog();
    for (const auto& f : families) {
        const auto g = generate(f);
        const auto c = check_first_band(analyze(g, zeros(g), BZGrid(g.dimension, g.dimension == 3 ? 8 : 16)));
        o.near(c.c0, 1.0, kTol, f.name() + " Q=0 c0");
        o.near(c.width, c.laplacian_width, kTol, f.name() + " Q=0 width");
        o.near(c.lower, c.upper, kTol, f.name() + " Q=0 chain collapse");
    }
    for (int t = 0; t < 200; ++t) {
        const auto& f = families[static_cast<std::size_t>(t) % families.size()];
        const auto g = generate(f);
        const auto q = oracle::uniform_vector(rng, g.order(), -1.0, 1.0);
        const auto c = check_first_band(analyze(g, q, BZGrid(g.dimension, g.dimension == 3 ? 8 : 16)));
        const std::string tag = f.name() + " trial " + std::to_string(t) + " ";
        o.expect(c.lower <= c.width + kSlack, tag + "lower bound");
        o.expect(c.width <= c.upper + kSlack, tag + "upper bound");
        o.expect(c.width > 1e-6, tag + "|sigma1(H)| > 1e-6");
    }
}

void criterion_8(Outcome& o) {
    for (int d = 1; d <= 3; ++d) {
        const auto m = effective_mass(FiberFamily(generate(CrystalFamily::lattice(d))), std::vector<double>{0.0});
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                o.near(m.mass[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], i == j ? d : 0.0, 1e-4,
                       "lattice(" + std::to_string(d) + ") m");
    }
    const FiberFamily bcc(generate(CrystalFamily::bcc()));
    for (double q1 : {0.0, 0.5}) {
        const auto c = check_effective_mass_bound(bcc, std::vector<double>{q1, 0.0});
        o.expect(c.verdict == Verdict::pass, "bcc q1=" + std::to_string(q1) + " mass sandwich " + c.reason);
    }
}

void criterion_9(Outcome& o) {
    std::mt19937_64 rng(9);
    for (const auto& fam_spec : oracle::catalog()) {
        const auto g = generate(fam_spec);
        const FiberFamily fam(g);
        const auto kappa = oracle::degrees(g);
        double fact = 0.0, form = 0.0, ground = 0.0;
        for (int t = 0; t < 100; ++t) {
            const auto theta = oracle::uniform_vector(rng, static_cast<std::size_t>(g.dimension), 0.0, 2 * oracle::pi);
            const auto f = oracle::random_vector(rng, g.order());
            const auto q = oracle::uniform_vector(rng, g.order(), -1.0, 1.0);
            const Quasimomentum th(theta);
            const auto delta = oracle::laplacian(g, theta);
            const auto nabla = fam.nabla(th);
            fact = std::max(fact, (nabla.adjoint() * nabla - delta).max_abs());

            const double lhs = inner(delta.apply(f), f).real();
            const auto p = fam.perron(q);
            std::vector<cplx> pf(f.size());
            for (std::size_t v = 0; v < f.size(); ++v) pf[v] = p.psi[v] * f[v];
            CMatrix h = delta;
            for (std::size_t v = 0; v < f.size(); ++v) h(v, v) += q[v] - p.eigenvalue;
            const double lhs_ground = inner(h.apply(pf), pf).real();

            double rhs = 0.0, rhs_ground = 0.0;
            for (const auto& e : g.edges) {
                double phi = 0.0;
                for (std::size_t i = 0; i < theta.size(); ++i) phi += e.index[i] * theta[i];
                const cplx w = std::exp(cplx(0, -phi));
                const auto a = f[e.tail] / std::sqrt(kappa[e.tail]);
                const auto b = f[e.head] / std::sqrt(kappa[e.head]);
                rhs += 0.5 * (std::norm(a - w * b) + std::norm(b - std::conj(w) * a));
                const double c = p.psi[e.tail] * p.psi[e.head] / std::sqrt(kappa[e.tail] * kappa[e.head]);
                rhs_ground += 0.5 * c * (std::norm(f[e.tail] - w * f[e.head]) + std::norm(f[e.head] - std::conj(w) * f[e.tail]));
            }
            form = std::max(form, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            ground = std::max(ground, std::abs(lhs_ground - rhs_ground) / std::max(1.0, std::abs(rhs_ground)));
        }
        o.expect(fact < 1e-12, fam_spec.name() + " factorization defect " + std::to_string(fact));
        o.expect(form < 1e-10, fam_spec.name() + " quadratic form defect " + std::to_string(form));
        o.expect(ground < 1e-10, fam_spec.name() + " ground-state form defect " + std::to_string(ground));
    }
}

void criterion_10(Outcome& o) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    double worst = 0.0, worst_interlace = 0.0, worst_shift = 0.0;
    for (int t = 0; t < 500; ++t) {
        const auto n = size(rng);
        const auto a = oracle::random_hermitian(rng, n, t % 5 == 0 ? 5.0 : 1.0);
        const auto j = hermitian_eigenvalues(a);
        const auto b = oracle::bisection_eigenvalues(a);
        for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(j[k] - b[k]));
        if (n >= 2) {
            const auto sub = hermitian_eigenvalues(a.leading_block(n - 1));
            for (std::size_t k = 0; k + 1 < n; ++k) {
                worst_interlace = std::max(worst_interlace, j[k] - sub[k]);
                worst_interlace = std::max(worst_interlace, sub[k] - j[k + 1]);
            }
        }
        const double c = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        CMatrix s = a;
        for (std::size_t i = 0; i < n; ++i) s(i, i) += c;
        const auto js = hermitian_eigenvalues(s);
        for (std::size_t k = 0; k < n; ++k) worst_shift = std::max(worst_shift, std::abs(js[k] - j[k] - c));
    }
    o.expect(worst < 1e-8, "jacobi vs bisection " + std::to_string(worst));
    o.expect(worst_interlace <= 1e-10, "interlacing violated by " + std::to_string(worst_interlace));
    o.expect(worst_shift <= 1e-10, "shift property violated by " + std::to_string(worst_shift));
}

void criterion_11(Outcome& o) {
    for (const auto& f : oracle::catalog()) {
        const auto g = generate(f);
        const auto r = check_laplacian_range(FiberFamily(g), BZGrid(g.dimension, 16));
        o.expect(r.min_eigenvalue >= -1e-10 && r.max_eigenvalue <= 2.0 + 1e-10,
                 f.name() + " eigenvalues outside [0, 2]");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"1 bcc Laplacian bands", criterion_1},
        {"2 bcc Schrodinger band edges and gap", criterion_2},
        {"3 fcc bands and flat bands", criterion_3},
        {"4 star-decorated measure independent of Q", criterion_4},
        {"5 subdivided lattice flat bands and union", criterion_5},
        {"6 loop-graph band edges", criterion_6},
        {"7 first-band estimate", criterion_7},
        {"8 effective mass", criterion_8},
        {"9 factorization and form identities", criterion_9},
        {"10 eigensolver against bisection", criterion_10},
        {"11 Laplacian fiber range", criterion_11},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %s  (%.2fs)", o.pass ? "PASS" : "FAIL", name.c_str(), secs);
        if (!o.pass) std::printf("  %s", o.notes.str().c_str());
        std::printf("\n");
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
