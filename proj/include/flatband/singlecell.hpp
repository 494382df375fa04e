#ifndef FLATBAND_SINGLECELL_HPP
#define FLATBAND_SINGLECELL_HPP

#include "flatband/eigenvectors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flatband {

// Simple undirected graph on up to 12 vertices, adjacency as row bitmasks.
struct FiniteGraph {
    int n = 0;
    std::vector<uint16_t> adj;

    explicit FiniteGraph(int n_ = 0) : n(n_), adj(static_cast<size_t>(n_), 0) {}
    static FiniteGraph path(int n);
    static FiniteGraph cycle(int n);
    static FiniteGraph complete(int n);
    static FiniteGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    bool edge(int i, int j) const { return (adj[static_cast<size_t>(i)] >> j) & 1; }
    void add_edge(int i, int j);
    int degree(int v) const;
    int edge_count() const;
    bool connected() const;
    bool bipartite() const;
    // Regular with the common degree reported, or nullopt-like -1.
    int regular_degree() const;
    // Canonical upper-triangle bitstring, minimized over vertex permutations.
    uint64_t canonical_code() const;
};

// det(lambda I - A), monic, by Faddeev-LeVerrier over exact integers.
ZPoly finite_char_poly(const FiniteGraph& g);

struct ExactEigenpair {
    RealValue value;
    FieldPtr field;                            // Q(value)
    std::vector<std::vector<NFElem>> kernel;   // basis of ker(A - value I)
    int multiplicity = 1;                      // = geometric = algebraic
};

// Ascending eigenvalues with exact kernels (n <= 12).
std::vector<ExactEigenpair> exact_spectrum(const FiniteGraph& g);

// Neighborhood condition N(v_i) \ {v_j} = N(v_j) \ {v_i} on a periodic
// graph, phrased through the index sets.
bool neighborhood_condition(const PeriodicGraph& g, int i, int j);

struct SubsetWitness {
    bool holds = false;
    std::vector<int> delta;       // 0/1, not all zero when holds
    std::vector<NFElem> psi;      // eigenvector with sum_i delta_i psi_i = 0
};

// Existence of 0/1 coefficients, not all zero, annihilating some nonzero
// eigenvector of the pair's eigenspace.
SubsetWitness subset_zero_criterion(const ExactEigenpair& pair);

// All graphs on n vertices up to isomorphism (n <= 7), by vertex augmentation;
// ascending canonical codes.
std::vector<FiniteGraph> enumerate_graphs(int n);
std::vector<FiniteGraph> enumerate_connected_graphs(int n);

// d=1 periodization of a finite graph along delta-bridges:
// A(z) = A_fg + (z + z^-1) (delta_i delta_j).
PeriodicGraph witness_graph(const FiniteGraph& fg, const RealValue& lambda, const std::vector<NFElem>& psi,
                            const std::vector<int>& delta);

struct SingleCellWitness {
    RealValue value;
    PeriodicGraph graph;
    CompactEigenvector vector;
};

struct SingleCellSet {
    int nu = 1;
    std::vector<RealValue> values;               // ascending
    std::vector<SingleCellWitness> new_witnesses;  // for values first appearing at this nu
};

// F_nu^s for nu <= 6: recursive construction over connected graphs on nu
// vertices (tops excluded) plus, for even nu, all spectra of connected graphs
// on nu/2 vertices.
SingleCellSet enumerate_single_cell(int nu, bool with_witnesses = true);

std::string single_cell_to_json(const SingleCellSet& s);
std::string single_cell_table(const SingleCellSet& s);

// Eigen-table of every connected graph on n vertices: edges, exact
// eigenvalues, kernel bases.
std::string eigen_table(int n);

}  // namespace flatband

#endif
