#include "pergraph/cli.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "pergraph/catalog.hpp"
#include "pergraph/io.hpp"

namespace pergraph::cli {

namespace {

struct Common {
    std::string input;
    int grid = 16;
    std::string potential;
};

void add_common(CLI::App* sub, Common& c, int default_grid) {
    c.grid = default_grid;
    sub->add_option("input", c.input, "graph file")->required();
    sub->add_option("--grid", c.grid, "points per axis (even)")->capture_default_str();
    sub->add_option("--potential", c.potential, "potential file: {id: value}; absent ids get 0");
}

struct Loaded {
    FundamentalGraph graph;
    std::vector<double> q;
};

// Q comes from the potential file when given, else from the graph's own vertex potentials.
Loaded load(const Common& c, std::ostream& err) {
    Loaded l{io::read_graph(c.input), {}};
    l.q = c.potential.empty() ? l.graph.potential() : io::parse_potential(io::read_text(c.potential), l.graph);
    for (const auto& w : connectivity_warnings(l.graph)) err << "warning: " << w << '\n';
    return l;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) out << text;
    else io::write_text(path, text);
}

CrystalFamily family_from(const std::string& name, int d, int nu, int n, bool d_given) {
    if (name == "lattice") return CrystalFamily::lattice(d);
    if (name == "star_decorated" || name == "star") return CrystalFamily::star_decorated(d, nu);
    if (name == "subdivided") return CrystalFamily::subdivided(d, n);
    if (name == "bcc" || name == "fcc") {
        if (d_given && d != 3) throw InputError(name + " is three-dimensional");
        return name == "bcc" ? CrystalFamily::bcc() : CrystalFamily::fcc();
    }
    throw InputError("unknown family '" + name + "' (lattice, star_decorated, subdivided, bcc, fcc)");
}

std::string matrix_text(const std::vector<std::vector<double>>& m) {
    std::ostringstream os;
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << io::format_number(row[j]);
        os << '\n';
    }
    return os.str();
}

int do_check(const Common& c, int trials, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    const auto loaded = load(c, err);
    const FiberFamily family(loaded.graph);
    const BZGrid grid(loaded.graph.dimension, c.grid);
    const auto n = family.order();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    bool ok = true;
    double fact = 0.0, form = 0.0, perron_form = 0.0;
    int first_band_failures = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> q(n), theta(static_cast<std::size_t>(loaded.graph.dimension));
        std::vector<cplx> f(n);
        for (auto& x : q) x = unit(rng);
        for (auto& x : theta) x = angle(rng);
        for (auto& x : f) x = cplx(unit(rng), unit(rng));
        const Quasimomentum th(theta);
        fact = std::max(fact, factorization_defect(family, th));
        form = std::max(form, quadratic_form_defect(family, th, f));
        perron_form = std::max(perron_form, perron_form_defect(family, q, family.perron(q), th, f));
        const auto ctx = analyze(loaded.graph, q, grid);
        if (!check_first_band(ctx).holds) ++first_band_failures;
    }
    auto line = [&](const char* name, bool pass, const std::string& detail) {
        out << (pass ? "ok   " : "FAIL ") << name << "  " << detail << '\n';
        ok = ok && pass;
    };
    line("factorization", fact < 1e-12, "max |grad* grad - Delta| = " + io::format_number(fact));
    line("quadratic_form", form < 1e-10, "max relative defect = " + io::format_number(form));
    line("perron_form", perron_form < 1e-10, "max relative defect = " + io::format_number(perron_form));
    const auto range = check_laplacian_range(family, grid);
    line("laplacian_range", range.holds,
         "eigenvalues in [" + io::format_number(range.min_eigenvalue) + ", " + io::format_number(range.max_eigenvalue) + "]");
    line("first_band", first_band_failures == 0,
         std::to_string(trials - first_band_failures) + "/" + std::to_string(trials) + " random potentials");
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Floquet band spectra of Laplacians and Schrodinger operators on periodic graphs", "pergraph"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "write a catalog graph");
    std::string family_name, gen_out;
    int d = 2, nu = 3, n_sub = 1;
    gen->add_option("family", family_name, "lattice | star_decorated | subdivided | bcc | fcc")->required();
    auto* d_opt = gen->add_option("--d", d, "lattice dimension")->capture_default_str();
    gen->add_option("--nu", nu, "vertices of the star-decorated cell")->capture_default_str();
    gen->add_option("--n", n_sub, "subdivision points per lattice edge")->capture_default_str();
    gen->add_option("-o,--output", gen_out, "output file (stdout if omitted)");

    Common bands_c, report_c, check_c, mass_c;
    auto* bands = app.add_subcommand("bands", "band table as CSV");
    add_common(bands, bands_c, 16);
    std::string csv_out, path_spec, path_out;
    bands->add_option("--csv", csv_out, "band CSV file (stdout if omitted)");
    bands->add_option("--path", path_spec, "straight path 'a..b:steps', e.g. '0,0..pi,pi:8'");
    bands->add_option("--path-csv", path_out, "path table file (stdout if omitted)");

    auto* report = app.add_subcommand("report", "spectral report with theorem checks");
    add_common(report, report_c, 16);
    std::string report_out;
    report->add_option("-o,--output", report_out, "report file (stdout if omitted)");

    auto* check = app.add_subcommand("check", "identity and invariant checks on random inputs");
    add_common(check, check_c, 8);
    int trials = 20;
    std::uint64_t seed = 1;
    check->add_option("--trials", trials, "random trials")->capture_default_str()->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "random seed")->capture_default_str();

    auto* mass = app.add_subcommand("mass", "Hessian M of the lowest band at 0 and m = M^-1");
    mass->add_option("input", mass_c.input, "graph file")->required();
    mass->add_option("--potential", mass_c.potential, "potential file");
    double step = 1e-3;
    mass->add_option("--step", step, "finite-difference step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*gen) {
            const auto g = generate(family_from(family_name, d, nu, n_sub, d_opt->count() > 0));
            emit(gen_out, io::emit_graph(g), out);
            return kOk;
        }
        if (*bands) {
            const auto l = load(bands_c, err);
            const FiberFamily family(l.graph);
            const BZGrid grid(l.graph.dimension, bands_c.grid);
            std::optional<io::PathSpec> path;
            if (!path_spec.empty()) path = io::parse_path(path_spec, l.graph.dimension);
            emit(csv_out, io::bands_csv(compute_bands(family, l.q, grid)), out);
            if (path) emit(path_out, io::path_csv(sample_path(family, l.q, path->from, path->to, path->steps)), out);
            return kOk;
        }
        if (*report) {
            const auto l = load(report_c, err);
            const BZGrid grid(l.graph.dimension, report_c.grid);
            const auto r = build_report(l.graph, l.q, grid);
            emit(report_out, io::report_json(r, l.graph, grid), out);
            for (const auto& v : r.verdicts)
                if (v.verdict == Verdict::fail) err << "check failed: " << v.name << ": " << v.detail << '\n';
            return r.passed() ? kOk : kCheckFailed;
        }
        if (*check) return do_check(check_c, trials, seed, out, err);
        if (*mass) {
            const auto l = load(mass_c, err);
            const auto m = effective_mass(FiberFamily(l.graph), l.q, step);
            out << "M\n" << matrix_text(m.hessian) << "m\n" << matrix_text(m.mass);
            return kOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const MassError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kOk;
}

}  // namespace pergraph::cli
