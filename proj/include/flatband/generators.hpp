#ifndef FLATBAND_GENERATORS_HPP
#define FLATBAND_GENERATORS_HPP

#include "flatband/singlecell.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flatband {

// Cartesian product of a periodic graph and a finite graph; vertex (p, u) gets
// index p*|gf| + u.
PeriodicGraph cartesian_product(const PeriodicGraph& base, const FiniteGraph& gf);

// Flat-band generator: base has the verified flat band lambda_b with compact
// eigenvector f; every eigenvalue mu of gf yields the flat band lambda_b + mu
// of the product with eigenvector f (x) phi.  Exactness needs lambda_b and f
// rational, or mu rational (a single field extension hosts the result).
std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cartesian_flatband(const PeriodicGraph& base,
                                                                             const CompactEigenvector& f,
                                                                             const FiniteGraph& gf);

// Convenience: base = the rungless two-chain with flat band 0, vector (1, -1).
std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cartesian_flatband_base_zero(const FiniteGraph& gf);

// Cone generator for a k-regular connected gf: attach an apex to every vertex
// and Z-periodize along the apexes; every non-top eigenvalue of gf goes flat.
std::pair<PeriodicGraph, std::vector<CompactEigenvector>> cone_periodize(const FiniteGraph& gf);

enum class ProductKind { Cartesian, Tensor };

// Products with a nu=1 lattice that provably carry no flat bands.  Tensor
// products additionally need gf non-bipartite with nonsingular adjacency.
PeriodicGraph no_flatband_product(const PeriodicGraph& lattice, const FiniteGraph& gf, ProductKind kind);

enum class SymmetryMode { Strict, Equitable };

// A nontrivial permutation of the fundamental cell exchanging whole vertex
// stars: I_{i,j} \ {0} = I_{phi(i),j} \ {0} for all i, j, with the in-cell
// adjacency either preserved (strict automorphism) or inducing an equitable
// partition via the cycles.
struct LocalSymmetry {
    std::vector<int> perm;
    std::vector<std::vector<int>> cycles;  // including fixed points
    bool strict = false;

    int cycle_count() const { return static_cast<int>(cycles.size()); }
    std::string cycle_notation() const;
};

std::vector<LocalSymmetry> find_local_symmetries(const PeriodicGraph& g,
                                                 SymmetryMode mode = SymmetryMode::Equitable);
bool symmetry_valid(const PeriodicGraph& g, const LocalSymmetry& sym, SymmetryMode mode);

// The theta-independent block of the symbol in the cycle-indicator complement:
// its nu - r eigenpairs are single-cell flat bands, each returned verified.
std::vector<std::pair<RealValue, CompactEigenvector>> symmetry_flat_bands(const PeriodicGraph& g,
                                                                          const LocalSymmetry& sym);

}  // namespace flatband

#endif
