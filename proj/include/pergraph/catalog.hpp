#pragma once

#include <string>

#include "pergraph/graph.hpp"

namespace pergraph {

/// Graph families with closed-form spectra.
struct CrystalFamily {
    enum class Kind { lattice, star_decorated, subdivided, bcc, fcc };

    Kind kind = Kind::lattice;
    int d = 1;    ///< lattice dimension (fixed to 3 for bcc / fcc)
    int nu = 2;   ///< star_decorated: number of fundamental vertices
    int n = 1;    ///< subdivided: vertices inserted on each lattice edge

    static CrystalFamily lattice(int d) { return {Kind::lattice, d, 1, 1}; }
    static CrystalFamily star_decorated(int d, int nu) { return {Kind::star_decorated, d, nu, 1}; }
    static CrystalFamily subdivided(int d, int n) { return {Kind::subdivided, d, 1, n}; }
    static CrystalFamily bcc() { return {Kind::bcc, 3, 2, 1}; }
    static CrystalFamily fcc() { return {Kind::fcc, 3, 4, 1}; }

    std::string name() const;
};

/// Fundamental graph of the family, vertices named v1..vν, zero potential.
///
/// lattice(d): one vertex with d loops of index a_1..a_d.
/// star_decorated(d, ν): spokes (v_k, v_ν), k < ν, of index 0, then d loops at v_ν.
/// subdivided(d, N): for each direction j a chain v_ν -> m_{j,1} -> ... -> m_{j,N} -> v_ν whose
///   last edge carries a_j; midpoint m_{j,k} is v_{(j-1)N+k} and the lattice vertex is v_{dN+1}.
/// bcc, fcc: loops at the corner vertex followed by the centre-to-corner edges.
FundamentalGraph generate(const CrystalFamily& family);

}  // namespace pergraph
