#include "pergraph/catalog.hpp"

namespace pergraph {

namespace {

IndexVector unit(int d, int j) {
    IndexVector a(static_cast<std::size_t>(d), 0);
    a[static_cast<std::size_t>(j)] = 1;
    return a;
}

std::vector<Vertex> named_vertices(int count) {
    std::vector<Vertex> v;
    for (int k = 1; k <= count; ++k) v.push_back({"v" + std::to_string(k), 0.0});
    return v;
}

FundamentalGraph lattice(int d) {
    FundamentalGraph g{d, named_vertices(1), {}};
    for (int j = 0; j < d; ++j) g.edges.push_back({0, 0, unit(d, j)});
    return g;
}

FundamentalGraph star_decorated(int d, int nu) {
    FundamentalGraph g{d, named_vertices(nu), {}};
    const auto hub = static_cast<std::size_t>(nu - 1);
    for (std::size_t k = 0; k < hub; ++k) g.edges.push_back({k, hub, IndexVector(static_cast<std::size_t>(d), 0)});
    for (int j = 0; j < d; ++j) g.edges.push_back({hub, hub, unit(d, j)});
    return g;
}

FundamentalGraph subdivided(int d, int n) {
    FundamentalGraph g{d, named_vertices(d * n + 1), {}};
    const auto hub = static_cast<std::size_t>(d * n);
    const IndexVector zero(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j) {
        std::size_t prev = hub;
        for (int k = 0; k < n; ++k) {
            const auto mid = static_cast<std::size_t>(j * n + k);
            g.edges.push_back({prev, mid, zero});
            prev = mid;
        }
        g.edges.push_back({prev, hub, unit(d, j)});
    }
    return g;
}

FundamentalGraph bcc() {
    FundamentalGraph g{3, named_vertices(2), {}};
    for (int j = 0; j < 3; ++j) g.edges.push_back({1, 1, unit(3, j)});
    const IndexVector body[] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    for (const auto& tau : body) g.edges.push_back({0, 1, tau});
    return g;
}

FundamentalGraph fcc() {
    FundamentalGraph g{3, named_vertices(4), {}};
    for (int j = 0; j < 3; ++j) g.edges.push_back({3, 3, unit(3, j)});
    // face centres perpendicular to a_3, a_2, a_1
    const IndexVector faces[3][4] = {
        {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
        {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1}},
        {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}},
    };
    for (std::size_t f = 0; f < 3; ++f)
        for (const auto& tau : faces[f]) g.edges.push_back({f, 3, tau});
    return g;
}

}  // namespace

std::string CrystalFamily::name() const {
    switch (kind) {
        case Kind::lattice: return "lattice(d=" + std::to_string(d) + ")";
        case Kind::star_decorated: return "star_decorated(d=" + std::to_string(d) + ",nu=" + std::to_string(nu) + ")";
        case Kind::subdivided: return "subdivided(d=" + std::to_string(d) + ",N=" + std::to_string(n) + ")";
        case Kind::bcc: return "bcc";
        case Kind::fcc: return "fcc";
    }
    return "unknown";
}

FundamentalGraph generate(const CrystalFamily& family) {
    using K = CrystalFamily::Kind;
    if (family.d < 1) throw InputError("family dimension must be >= 1");
    switch (family.kind) {
        case K::lattice: return lattice(family.d);
        case K::star_decorated:
            if (family.nu < 2) throw InputError("star_decorated needs nu >= 2");
            return star_decorated(family.d, family.nu);
        case K::subdivided:
            if (family.n < 1) throw InputError("subdivided needs N >= 1");
            return subdivided(family.d, family.n);
        case K::bcc:
            if (family.d != 3) throw InputError("bcc is three-dimensional");
            return bcc();
        case K::fcc:
            if (family.d != 3) throw InputError("fcc is three-dimensional");
            return fcc();
    }
    throw InputError("unknown crystal family");
}

}  // namespace pergraph
