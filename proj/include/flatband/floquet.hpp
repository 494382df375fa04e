#ifndef FLATBAND_FLOQUET_HPP
#define FLATBAND_FLOQUET_HPP

#include "flatband/algebraic.hpp"
#include "flatband/graph.hpp"
#include "flatband/unipoly.hpp"

#include <string>
#include <vector>

namespace flatband {

// The Floquet symbol H(z): a nu x nu Hermitian matrix of Laurent polynomials,
// h_ij(z) = Q_i [i=j] + sum_{k in I_ij} w_ij(k) z^k.
struct FloquetSymbol {
    int dim = 1;
    int nu = 1;
    std::vector<std::vector<GLaurent>> h;

    const GLaurent& at(int i, int j) const { return h[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
};

FloquetSymbol build_symbol(const PeriodicGraph& g);

// Exact evaluation at a unit-modulus Gaussian-rational point (z^-1 = conj z).
std::vector<std::vector<GaussianRational>> eval_symbol(const FloquetSymbol& s,
                                                       const std::vector<GaussianRational>& z);
// A unit-modulus Gaussian rational from a Pythagorean pair.
GaussianRational unit_gaussian(long m, long n);

// p(z; lambda) = det(H(z) - lambda I) = sum_k c_k(lambda) z^k.
struct CharPoly {
    int dim = 1;
    int nu = 1;
    LaurentPoly<GPoly> p;

    GPoly coefficient(const Offset& k) const { return p.coeff(k); }
};

CharPoly char_poly(const FloquetSymbol& s);

struct FlatBand {
    RealValue value;
    int multiplicity = 1;
};

struct FlatBandReport {
    std::vector<FlatBand> bands;  // ascending
    ZPoly gcd_poly;               // gcd over all z-coefficients of p(z; lambda)
    bool quotient_level = false;  // analysis of a disconnected quotient was forced
    bool empty() const { return bands.empty(); }
    std::vector<RealValue> values() const {
        std::vector<RealValue> v;
        for (const auto& b : bands) v.push_back(b.value);
        return v;
    }
};

FlatBandReport detect_flat_bands(const PeriodicGraph& g, bool force_disconnected = false);
std::string report_to_json(const FlatBandReport& rep);

// Numeric Brillouin-zone sampler.  Sorted eigenvalues per grid point, plus a
// robust flat-value scan: sorted band indices swap at band crossings, so
// flatness is decided by nearest-eigenvalue coverage over the whole grid.
struct BandSample {
    int dim = 1;
    int nu = 1;
    int grid = 0;
    double tol = 1e-9;
    std::vector<std::vector<double>> thetas;    // grid^dim rows
    std::vector<std::vector<double>> energies;  // sorted, nu columns
    std::vector<double> band_min, band_max;     // per sorted-band summary
    std::vector<double> flat_values;
    std::vector<int> flat_multiplicities;

    bool is_flat_value(double v) const {
        for (double f : flat_values)
            if (std::abs(f - v) <= 2 * tol) return true;
        return false;
    }
    double global_max() const { return band_max.empty() ? 0.0 : band_max.back(); }
};

BandSample sample_bands(const PeriodicGraph& g, int grid, double tol = 1e-9);
std::string band_sample_csv(const BandSample& bs);
std::string band_sample_json(const BandSample& bs);

// Eigenvalues of the N-torus quotient of the lift (nu * side^dim of them,
// ascending); the union of the Bloch spectra at rational quasimomenta.
std::vector<double> torus_spectrum(const PeriodicGraph& g, int side);

// Independent brute-force oracle: eigenvalue count of the N-torus quotient
// within tol of lambda.  A flat band of multiplicity m contributes at least
// m * N^dim eigenvalues.
int torus_oracle(const PeriodicGraph& g, int side, const RealValue& lambda, double tol = 1e-7);

}  // namespace flatband

#endif
