#ifndef FLATBAND_EIGENVECTORS_HPP
#define FLATBAND_EIGENVECTORS_HPP

#include "flatband/floquet.hpp"
#include "flatband/numberfield.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flatband {

// Kernel vector of H(z) - lambda0 I with trigonometric-polynomial entries,
// over Q(lambda0)(i).
struct SymbolVector {
    FieldPtr field;
    int dim = 1;
    std::vector<LaurentPoly<NFElem>> entries;

    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero()) return false;
        return true;
    }
};

// Finitely supported eigenvector psi_p(k) of the periodic operator.
struct CompactEigenvector {
    FieldPtr field;
    RealValue lambda{0};
    int dim = 1;
    int nu = 1;
    std::map<std::pair<int, Offset>, NFElem> values;  // (vertex, cell) -> value

    NFElem at(int vertex, const Offset& cell) const {
        auto it = values.find({vertex, cell});
        return it == values.end() ? NFElem() : it->second;
    }
    // Bounding box of the support along one axis.
    std::pair<int, int> window(int axis) const;
};

// Matrix of H(z) - lambda0 I over Q(lambda0)(i).
std::vector<std::vector<LaurentPoly<NFElem>>> shifted_symbol(const FloquetSymbol& s, const FieldPtr& field);

// Cayley-Hamilton synthesis: the first nonzero column of B^n q(B), where
// mu^m q(z; mu) is the characteristic polynomial of B = H - lambda0 I and n is
// minimal with B^{n+1} q(B) = 0.  Ties broken by lowest power, lowest column.
SymbolVector synthesize_symbol_eigenvector(const FloquetSymbol& s, const CharPoly& cp, const RealValue& lambda0,
                                           int multiplicity);

// Exact check that f lies in the kernel of H(z) - lambda0 I (lambda0 is the
// field's distinguished root).
bool in_kernel(const FloquetSymbol& s, const SymbolVector& f);

// psi_p(k) = coefficient of z^{-k} in f_p, recentred so the support's bounding
// box is centred at the origin.
CompactEigenvector unfold(const SymbolVector& f, const RealValue& lambda0, int nu);

// f_p(z) = sum_k psi_p(k) z^{-k}.
SymbolVector refold(const CompactEigenvector& v);

// Exact eigen-equation check on the support's one-hop enlargement.
bool verify_eigenvector(const PeriodicGraph& g, const CompactEigenvector& v);

CompactEigenvector translate(const CompactEigenvector& v, const Offset& by);

std::string eigenvector_to_json(const CompactEigenvector& v);

}  // namespace flatband

#endif
