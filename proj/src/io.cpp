#include "pergraph/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pergraph::io {

using json = nlohmann::ordered_json;

namespace {

void only_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw InputError(where + ": unknown field '" + key + "'");
    }
}

const json& field(const json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw InputError(where + ": missing field '" + name + "'");
    return *it;
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<int>();
}

IndexVector as_index(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an integer array");
    IndexVector out;
    for (const auto& x : j) out.push_back(as_int(x, where));
    return out;
}

std::string as_id(const json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where + ": vertex ids are strings");
    return j.get<std::string>();
}

std::size_t lookup(const std::vector<Vertex>& vertices, const std::string& id, const std::string& where) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    throw InputError(where + " references an unknown vertex '" + id + "'");
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

/// Rounded to 15 significant digits, so dump() prints at most that many.
double rounded(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return rounded(x);
}

json matrix(const std::vector<std::vector<double>>& m) {
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (double x : row) r.push_back(number(x));
        out.push_back(r);
    }
    return out;
}

double parse_angle(std::string s, const std::string& whole) {
    auto trim = [](std::string& t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    auto plain = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (t.empty() || used != t.size()) throw InputError("bad path component '" + t + "' in '" + whole + "'");
        return v;
    };
    const auto at = s.find("pi");
    if (at == std::string::npos) return plain(s);

    std::string coef = s.substr(0, at);
    std::string rest = s.substr(at + 2);
    trim(coef);
    trim(rest);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    trim(coef);
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (coef == "+") c = 1.0;
    else if (!coef.empty()) c = plain(coef);
    double div = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw InputError("bad path component '" + s + "' in '" + whole + "'");
        rest.erase(0, 1);
        trim(rest);
        div = plain(rest);
        if (div == 0.0) throw InputError("division by zero in path '" + whole + "'");
    }
    return c * std::numbers::pi / div;
}

Quasimomentum parse_point(std::string s, int dimension, const std::string& whole) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    std::vector<double> theta;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) theta.push_back(parse_angle(part, whole));
    if (theta.size() != static_cast<std::size_t>(dimension)) {
        std::ostringstream os;
        os << "path point '" << s << "' has " << theta.size() << " components, graph dimension is " << dimension;
        throw InputError(os.str());
    }
    return Quasimomentum(std::move(theta));
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

FundamentalGraph parse_graph(const std::string& text) {
    const json doc = parse_json(text);
    only_fields(doc, {"dimension", "vertices", "edges", "bonds"}, "graph");
    const int d = as_int(field(doc, "dimension", "graph"), "dimension");

    std::vector<Vertex> vertices;
    const auto& vs = field(doc, "vertices", "graph");
    if (!vs.is_array()) throw InputError("vertices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "vertex " + std::to_string(i);
        only_fields(vs[i], {"id", "potential"}, where);
        Vertex v;
        v.id = as_id(field(vs[i], "id", where), where);
        if (auto it = vs[i].find("potential"); it != vs[i].end()) {
            if (!it->is_number()) throw InputError(where + ": potential must be a number");
            v.potential = it->get<double>();
        }
        vertices.push_back(std::move(v));
    }

    const bool has_edges = doc.contains("edges");
    const bool has_bonds = doc.contains("bonds");
    if (has_edges == has_bonds) throw InputError("graph needs exactly one of 'edges' and 'bonds'");

    // duplicate ids would make endpoint lookup ambiguous; validation reports them in full
    std::set<std::string> seen;
    for (const auto& v : vertices)
        if (!seen.insert(v.id).second) throw InputError("duplicate vertex id '" + v.id + "'");

    const auto& list = has_edges ? doc["edges"] : doc["bonds"];
    const char* vec_name = has_edges ? "index" : "shift";
    if (!list.is_array()) throw InputError(std::string(has_edges ? "edges" : "bonds") + ": expected an array");

    if (has_edges) {
        FundamentalGraph g{d, std::move(vertices), {}};
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string where = "edge " + std::to_string(k);
            only_fields(list[k], {"u", "v", vec_name}, where);
            Edge e;
            e.tail = lookup(g.vertices, as_id(field(list[k], "u", where), where), where);
            e.head = lookup(g.vertices, as_id(field(list[k], "v", where), where), where);
            e.index = as_index(field(list[k], vec_name, where), where);
            g.edges.push_back(std::move(e));
        }
        require_valid(g);
        return g;
    }

    PeriodicDescription desc{d, std::move(vertices), {}};
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string where = "bond " + std::to_string(k);
        only_fields(list[k], {"u", "v", vec_name}, where);
        Bond b;
        b.tail = lookup(desc.vertices, as_id(field(list[k], "u", where), where), where);
        b.head = lookup(desc.vertices, as_id(field(list[k], "v", where), where), where);
        b.shift = as_index(field(list[k], vec_name, where), where);
        desc.bonds.push_back(std::move(b));
    }
    auto indexed = assign_indices(desc);
    require_valid(indexed.graph);
    return std::move(indexed.graph);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("cannot write '" + path + "'");
}

FundamentalGraph read_graph(const std::string& path) { return parse_graph(read_text(path)); }

std::string emit_graph(const FundamentalGraph& graph) {
    json doc;
    doc["dimension"] = graph.dimension;
    doc["vertices"] = json::array();
    for (const auto& v : graph.vertices) doc["vertices"].push_back({{"id", v.id}, {"potential", v.potential}});
    doc["edges"] = json::array();
    for (const auto& e : graph.edges)
        doc["edges"].push_back(
            {{"u", graph.vertices[e.tail].id}, {"v", graph.vertices[e.head].id}, {"index", e.index}});
    return doc.dump(2) + "\n";
}

std::vector<double> parse_potential(const std::string& text, const FundamentalGraph& graph) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("potential file: expected an object mapping vertex id to value");
    std::vector<double> q(graph.order(), 0.0);
    for (const auto& [id, value] : doc.items()) {
        const auto v = graph.find(id);
        if (!v) throw InputError("potential file: unknown vertex '" + id + "'");
        if (!value.is_number()) throw InputError("potential file: value for '" + id + "' is not a number");
        q[*v] = value.get<double>();
        if (!std::isfinite(q[*v])) throw InputError("potential file: non-finite value for '" + id + "'");
    }
    return q;
}

std::string bands_csv(const BandStructure& bands) {
    std::vector<int> multiplicity(bands.order(), 0);
    for (const auto& f : bands.flat_bands)
        for (auto n : f.bands) multiplicity[n] = f.multiplicity;
    std::ostringstream os;
    os << "band_index,lambda_min,lambda_max,flat,multiplicity\n";
    for (std::size_t n = 0; n < bands.order(); ++n) {
        const auto& b = bands.bands[n];
        os << n + 1 << ',' << format_number(b.lo) << ',' << format_number(b.hi) << ',' << (b.flat ? "true" : "false")
           << ',';
        if (b.flat) os << multiplicity[n];
        os << '\n';
    }
    return os.str();
}

PathSpec parse_path(const std::string& text, int dimension) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw InputError("path must look like 'a..b:steps', got '" + text + "'");
    const auto dots = text.find("..");
    if (dots == std::string::npos || dots > colon) throw InputError("path must look like 'a..b:steps', got '" + text + "'");
    PathSpec spec;
    spec.from = parse_point(text.substr(0, dots), dimension, text);
    spec.to = parse_point(text.substr(dots + 2, colon - dots - 2), dimension, text);
    const std::string steps = text.substr(colon + 1);
    std::size_t used = 0;
    try {
        spec.steps = std::stoi(steps, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != steps.size() || spec.steps < 1) throw InputError("path steps must be a positive integer, got '" + steps + "'");
    return spec;
}

std::string path_csv(const std::vector<PathSample>& samples) {
    std::ostringstream os;
    if (samples.empty()) return os.str();
    os << "step";
    for (std::size_t i = 0; i < samples.front().theta.dimension(); ++i) os << ",theta_" << i + 1;
    for (std::size_t n = 0; n < samples.front().eigenvalues.size(); ++n) os << ",lambda_" << n + 1;
    os << '\n';
    for (std::size_t k = 0; k < samples.size(); ++k) {
        os << k;
        for (double t : samples[k].theta.theta) os << ',' << format_number(t);
        for (double x : samples[k].eigenvalues) os << ',' << format_number(x);
        os << '\n';
    }
    return os.str();
}

std::string report_json(const SpectralReport& r, const FundamentalGraph& graph, const BZGrid& grid) {
    json doc;
    doc["dimension"] = graph.dimension;
    doc["vertices"] = graph.order();
    doc["edges"] = graph.edges.size();
    doc["grid"] = grid.points_per_axis();

    json cls;
    cls["loop"] = r.loop_graph;
    cls["exact"] = r.exact_theta.has_value();
    if (r.exact_theta) {
        json t = json::array();
        for (double x : *r.exact_theta) t.push_back(number(x));
        cls["exact_quasimomentum"] = t;
    }
    cls["bipartite"] = r.bipartition.has_value();
    if (r.bipartition) {
        cls["part_sizes"] = {r.bipartition->first.size(), r.bipartition->second.size()};
    }
    cls["periodic_bipartite"] = r.periodic_bipartite;
    doc["classification"] = cls;

    doc["zeta"] = number(r.zeta.value);
    doc["zeta_bound"] = number(r.zeta.bound);

    json bands = json::array();
    for (std::size_t n = 0; n < r.bands.order(); ++n) {
        const auto& b = r.bands.bands[n];
        bands.push_back({{"index", n + 1}, {"lambda_min", number(b.lo)}, {"lambda_max", number(b.hi)}, {"flat", b.flat}});
    }
    doc["bands"] = bands;
    json flats = json::array();
    for (const auto& f : r.bands.flat_bands) flats.push_back({{"value", number(f.value)}, {"multiplicity", f.multiplicity}});
    doc["flat_bands"] = flats;

    json comps = json::array();
    for (const auto& c : r.spectrum.components) comps.push_back({number(c.lo), number(c.hi)});
    json isolated = json::array();
    for (double x : r.spectrum.isolated) isolated.push_back(number(x));
    doc["spectrum"] = {{"components", comps}, {"isolated", isolated}};

    doc["measure"] = number(r.measure.measure);
    doc["band_length_sum"] = number(r.measure.band_length_sum);
    doc["trace_bound"] = number(r.measure.trace_bound);
    doc["two_zeta"] = number(r.measure.two_zeta);

    json gap_list = json::array();
    for (const auto& g : r.gap_sum.gap_list) gap_list.push_back({number(g.lo), number(g.hi)});
    doc["gaps"] = gap_list;
    doc["gap_sum"] = number(r.gap_sum.gap_sum);
    doc["gap_sum_lower_bound"] = number(r.gap_sum.lower_bound);
    doc["C0"] = number(r.gap_sum.c0_bound);
    doc["gap_sum_C0_lower_bound"] = number(r.gap_sum.c0_lower_bound);

    doc["c0"] = number(r.first_band.c0);
    doc["first_band"] = {{"lower", number(r.first_band.lower)},
                         {"width", number(r.first_band.width)},
                         {"upper", number(r.first_band.upper)}};

    json mass;
    mass["verdict"] = to_string(r.mass.verdict);
    if (r.mass.verdict == Verdict::skipped) {
        mass["reason"] = r.mass.reason;
    } else {
        mass["mass"] = matrix(r.mass.mass->mass);
        mass["laplacian_mass"] = matrix(r.mass.laplacian_mass->mass);
        mass["min_eigenvalue_upper"] = number(r.mass.min_eig_upper_gap);
        mass["min_eigenvalue_lower"] = number(r.mass.min_eig_lower_gap);
    }
    doc["effective_mass"] = mass;

    json warnings = json::array();
    for (const auto& w : r.warnings) warnings.push_back(w);
    doc["warnings"] = warnings;

    json verdicts = json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"name", v.name}, {"verdict", to_string(v.verdict)}, {"detail", v.detail}});
    doc["verdicts"] = verdicts;
    doc["passed"] = r.passed();
    return doc.dump(2) + "\n";
}

}  // namespace pergraph::io
