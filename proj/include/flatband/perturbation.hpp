#ifndef FLATBAND_PERTURBATION_HPP
#define FLATBAND_PERTURBATION_HPP

#include "flatband/floquet.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatband {

// Polynomial in (Q_0, ..., Q_{nu-1}, lambda): exponents are nonnegative, the
// last axis is lambda.
using QPotentialPoly = LaurentPoly<GaussianRational>;

// det(A(z) + diag(Q) - lambda I) expanded as sum_r p_r(Q, lambda) z^r.
struct CoefficientSystem {
    int dim = 1;
    int nu = 1;
    std::map<Offset, QPotentialPoly> coeffs;

    QPotentialPoly at(const Offset& r) const;
    // z-exponents in descending graded-lex order (deterministic reports).
    std::vector<Offset> exponents() const;
};

CoefficientSystem coefficient_system(const PeriodicGraph& g);
std::string coefficient_system_to_json(const CoefficientSystem& cs);
std::string qpoly_to_string(const QPotentialPoly& p, int nu);

// A coefficient p_r that is a nonzero constant certifies that no potential
// can create a flat band.
std::optional<Offset> empty_locus_certificate(const CoefficientSystem& cs);

// Exact description of P_Gamma for nu = 2 (unit weights): a union of lines
// Q_1 = Q_0 - u with the flat value lambda = Q_0 + t pinned along each.
struct Nu2Line {
    RealValue u;  // Q_0 - Q_1
    RealValue t;  // lambda - Q_0, in Q(u)
};

struct Nu2Locus {
    std::optional<Offset> certificate;  // constant nonzero coefficient, if any
    std::vector<Nu2Line> lines;
    bool empty() const { return lines.empty(); }
};

Nu2Locus nu2_locus(const PeriodicGraph& g);
std::string nu2_locus_to_string(const Nu2Locus& locus);
std::string nu2_locus_to_json(const Nu2Locus& locus);

// Exact detection with the potential overridden.
FlatBandReport detect_with_potential(const PeriodicGraph& g, const std::vector<Rational>& q);

}  // namespace flatband

#endif
