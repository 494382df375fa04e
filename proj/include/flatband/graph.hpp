#ifndef FLATBAND_GRAPH_HPP
#define FLATBAND_GRAPH_HPP

#include "flatband/laurent.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace flatband {

// One stored translation class of edges: the fundamental-cell vertex `from` is
// adjacent to `to` translated by `offset`.  Storage is canonical (from < to, or
// from == to with lexicographically positive offset); the reflected class
// (to, from, -offset, conj(weight)) is derived, never stored.
struct EdgeSpec {
    int from = 0;
    int to = 0;
    Offset offset;
    GaussianRational weight{1};

    friend bool operator<(const EdgeSpec& a, const EdgeSpec& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return a.offset < b.offset;
    }
    friend bool operator==(const EdgeSpec& a, const EdgeSpec& b) {
        return a.from == b.from && a.to == b.to && a.offset == b.offset && a.weight == b.weight;
    }
};

// Combinatorial Z^d-periodic graph.  Immutable after construction.
struct PeriodicGraph {
    int dimension = 1;
    int nu = 1;
    std::vector<EdgeSpec> edges;
    std::vector<Rational> potential;  // size nu (zero-filled)

    PeriodicGraph() = default;
    PeriodicGraph(int d, int nu_, std::vector<EdgeSpec> e, std::vector<Rational> q = {});

    // Derived index set I_ij with weights, both orientations expanded.
    // I_ij maps offset k -> w_ij(k); satisfies I_ii = -I_ii and I_ji = -I_ij.
    std::map<Offset, GaussianRational> index_set(int i, int j) const;
    std::set<Offset> offsets(int i, int j) const;
    bool adjacent_in_cell(int i, int j) const;  // epsilon_ij
    // Maximal hopping range per coordinate.
    std::vector<int> hopping_range() const;
};

struct ValidationReport {
    struct Item {
        std::string rule;
        bool pass = true;
        std::string detail;
    };
    std::vector<Item> items;
    bool ok() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

ValidationReport validate(const PeriodicGraph& g);
void require_valid(const PeriodicGraph& g);

// Canonicalize edge orientations and sort; throws on zero-offset self-loops.
std::vector<EdgeSpec> canonicalize_edges(int dimension, std::vector<EdgeSpec> edges);

// Connectivity of the infinite lift: quotient connectivity plus the corrected
// cycle labels generating all of Z^d (Hermite-normal-form test).
bool is_connected(const PeriodicGraph& g);

// True iff the integer vectors generate Z^d.
bool generates_full_lattice(std::vector<Offset> vectors, int d);

PeriodicGraph relabel(const PeriodicGraph& g, const std::vector<int>& perm);
PeriodicGraph shift_cell(const PeriodicGraph& g, int vertex, const Offset& by);
PeriodicGraph with_potential(const PeriodicGraph& g, std::vector<Rational> q);

std::string to_json(const PeriodicGraph& g);
PeriodicGraph graph_from_json(const std::string& text);
PeriodicGraph load_graph(const std::string& path);
void save_graph(const PeriodicGraph& g, const std::string& path);

}  // namespace flatband

#endif
