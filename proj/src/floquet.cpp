#include "flatband/floquet.hpp"

#include "flatband/det.hpp"
#include "flatband/jacobi.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace flatband {

using nlohmann::ordered_json;

FloquetSymbol build_symbol(const PeriodicGraph& g) {
    require_valid(g);
    FloquetSymbol s;
    s.dim = g.dimension;
    s.nu = g.nu;
    s.h.assign(static_cast<size_t>(g.nu), std::vector<GLaurent>(static_cast<size_t>(g.nu), GLaurent(g.dimension)));
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nu; ++j) {
            GLaurent e(g.dimension);
            for (const auto& [k, w] : g.index_set(i, j)) e.add_term(k, w);
            if (i == j && g.potential[static_cast<size_t>(i)] != 0)
                e.add_term(zero_offset(g.dimension), GaussianRational(g.potential[static_cast<size_t>(i)]));
            s.h[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    }
    return s;
}

GaussianRational unit_gaussian(long m, long n) {
    Rational d(m * m + n * n);
    if (d == 0) throw error("unit gaussian needs (m, n) != (0, 0)");
    return GaussianRational(Rational(m * m - n * n) / d, Rational(2 * m * n) / d);
}

std::vector<std::vector<GaussianRational>> eval_symbol(const FloquetSymbol& s,
                                                       const std::vector<GaussianRational>& z) {
    if (static_cast<int>(z.size()) != s.dim) throw error("evaluation point arity mismatch");
    auto power = [&](int axis, int e) {
        GaussianRational base = e >= 0 ? z[static_cast<size_t>(axis)] : conj(z[static_cast<size_t>(axis)]);
        GaussianRational acc(1);
        for (int t = 0; t < std::abs(e); ++t) acc *= base;
        return acc;
    };
    std::vector<std::vector<GaussianRational>> out(static_cast<size_t>(s.nu),
                                                   std::vector<GaussianRational>(static_cast<size_t>(s.nu)));
    for (int i = 0; i < s.nu; ++i)
        for (int j = 0; j < s.nu; ++j) {
            GaussianRational acc(0);
            for (const auto& [k, w] : s.at(i, j).terms()) {
                GaussianRational m(1);
                for (int r = 0; r < s.dim; ++r) m *= power(r, k[static_cast<size_t>(r)]);
                acc += w * m;
            }
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
    return out;
}

CharPoly char_poly(const FloquetSymbol& s) {
    using R = LaurentPoly<GPoly>;
    std::vector<std::vector<R>> m(static_cast<size_t>(s.nu), std::vector<R>(static_cast<size_t>(s.nu), R(s.dim)));
    for (int i = 0; i < s.nu; ++i)
        for (int j = 0; j < s.nu; ++j) {
            R e = s.at(i, j).map([](const GaussianRational& c) { return GPoly::constant(c); });
            if (i == j) e.add_term(zero_offset(s.dim), GPoly({GaussianRational(0), GaussianRational(-1)}));
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    CharPoly cp;
    cp.dim = s.dim;
    cp.nu = s.nu;
    cp.p = laurent_matrix_det(m, s.dim, GPoly::constant(GaussianRational(1)));
    return cp;
}

FlatBandReport detect_flat_bands(const PeriodicGraph& g, bool force_disconnected) {
    bool connected = is_connected(g);
    if (!connected && !force_disconnected)
        throw error("graph lift is disconnected; flat bands are defined for connected graphs "
                    "(pass the force flag for quotient-level analysis)");
    CharPoly cp = char_poly(build_symbol(g));

    // g(lambda) = gcd over all z-exponents of the real and imaginary coefficient
    // stacks; flat bands are real, so a common real root must kill both stacks.
    ZPoly acc;
    for (const auto& [k, c] : cp.p.terms()) {
        ZPoly re = primitive_part(c.map([](const GaussianRational& v) { return v.re; }));
        ZPoly im = primitive_part(c.map([](const GaussianRational& v) { return v.im; }));
        for (const ZPoly* part : {&re, &im}) {
            if (part->is_zero()) continue;
            acc = acc.is_zero() ? *part : zpoly_gcd(acc, *part);
        }
    }
    if (acc.is_zero()) throw error("characteristic polynomial vanished identically");

    FlatBandReport rep;
    rep.gcd_poly = acc;
    rep.quotient_level = !connected;
    if (acc.degree() >= 1)
        for (const auto& r : isolate_real_roots(acc)) rep.bands.push_back({r.value, r.multiplicity});
    return rep;
}

std::string report_to_json(const FlatBandReport& rep) {
    ordered_json j;
    j["flat_bands"] = ordered_json::array();
    for (const auto& b : rep.bands) {
        ordered_json jb;
        ordered_json mp = ordered_json::array();
        ZPoly bm = b.value.minpoly();
        for (const auto& c : bm.coeffs()) mp.push_back(c.str());
        jb["minpoly"] = mp;
        if (b.value.is_rational()) {
            jb["value"] = rat_to_string(b.value.rational());
        } else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", b.value.approx());
            jb["value"] = buf;
            jb["interval"] = {rat_to_string(b.value.algebraic().lo()), rat_to_string(b.value.algebraic().hi())};
        }
        jb["multiplicity"] = b.multiplicity;
        j["flat_bands"].push_back(jb);
    }
    j["gcd_poly"] = poly_to_string(rep.gcd_poly, "lambda");
    if (rep.quotient_level) j["quotient_level"] = true;
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::vector<std::complex<double>>> numeric_symbol(const FloquetSymbol& s,
                                                              const std::vector<double>& theta) {
    std::vector<std::vector<std::complex<double>>> a(
        static_cast<size_t>(s.nu), std::vector<std::complex<double>>(static_cast<size_t>(s.nu)));
    for (int i = 0; i < s.nu; ++i)
        for (int j = i; j < s.nu; ++j) {
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = eval_unit(s.at(i, j), theta);
        }
    return a;
}

}  // namespace

BandSample sample_bands(const PeriodicGraph& g, int grid, double tol) {
    if (grid < 2) throw error("band sampling needs a grid of at least 2 points per axis");
    FloquetSymbol s = build_symbol(g);
    BandSample bs;
    bs.dim = g.dimension;
    bs.nu = g.nu;
    bs.grid = grid;
    bs.tol = tol;

    long points = 1;
    for (int r = 0; r < g.dimension; ++r) points *= grid;
    bs.thetas.reserve(static_cast<size_t>(points));
    bs.energies.reserve(static_cast<size_t>(points));
    for (long idx = 0; idx < points; ++idx) {
        std::vector<double> theta(static_cast<size_t>(g.dimension));
        long t = idx;
        for (int r = 0; r < g.dimension; ++r) {
            theta[static_cast<size_t>(r)] = static_cast<double>(t % grid) / grid;
            t /= grid;
        }
        std::vector<double> ev = hermitian_eigenvalues(numeric_symbol(s, theta));
        bs.thetas.push_back(std::move(theta));
        bs.energies.push_back(std::move(ev));
    }

    bs.band_min.assign(static_cast<size_t>(g.nu), 0.0);
    bs.band_max.assign(static_cast<size_t>(g.nu), 0.0);
    for (int b = 0; b < g.nu; ++b) {
        double lo = bs.energies[0][static_cast<size_t>(b)], hi = lo;
        for (const auto& row : bs.energies) {
            lo = std::min(lo, row[static_cast<size_t>(b)]);
            hi = std::max(hi, row[static_cast<size_t>(b)]);
        }
        bs.band_min[static_cast<size_t>(b)] = lo;
        bs.band_max[static_cast<size_t>(b)] = hi;
    }

    // Robust flat scan: a value is flat iff every grid point has an eigenvalue
    // within tol; multiplicity is the minimal count over the grid.
    for (int b = 0; b < g.nu; ++b) {
        double v = bs.energies[0][static_cast<size_t>(b)];
        if (bs.is_flat_value(v)) continue;
        int mult = g.nu;
        bool flat = true;
        for (const auto& row : bs.energies) {
            int cnt = 0;
            for (double e : row)
                if (std::abs(e - v) <= tol) ++cnt;
            if (cnt == 0) {
                flat = false;
                break;
            }
            mult = std::min(mult, cnt);
        }
        if (flat) {
            bs.flat_values.push_back(v);
            bs.flat_multiplicities.push_back(mult);
        }
    }
    return bs;
}

std::string band_sample_csv(const BandSample& bs) {
    std::ostringstream os;
    for (int r = 0; r < bs.dim; ++r) os << "theta_" << (r + 1) << ",";
    for (int b = 0; b < bs.nu; ++b) os << "E_" << (b + 1) << (b + 1 < bs.nu ? "," : "");
    os << "\n";
    char buf[64];
    for (size_t row = 0; row < bs.thetas.size(); ++row) {
        for (double t : bs.thetas[row]) {
            std::snprintf(buf, sizeof(buf), "%.12g", t);
            os << buf << ",";
        }
        for (size_t b = 0; b < bs.energies[row].size(); ++b) {
            std::snprintf(buf, sizeof(buf), "%.12g", bs.energies[row][b]);
            os << buf << (b + 1 < bs.energies[row].size() ? "," : "");
        }
        os << "\n";
    }
    return os.str();
}

std::string band_sample_json(const BandSample& bs) {
    ordered_json j;
    j["dimension"] = bs.dim;
    j["nu"] = bs.nu;
    j["grid"] = bs.grid;
    j["tolerance"] = bs.tol;
    j["bands"] = ordered_json::array();
    for (int b = 0; b < bs.nu; ++b) {
        ordered_json jb;
        jb["min"] = bs.band_min[static_cast<size_t>(b)];
        jb["max"] = bs.band_max[static_cast<size_t>(b)];
        jb["range"] = bs.band_max[static_cast<size_t>(b)] - bs.band_min[static_cast<size_t>(b)];
        j["bands"].push_back(jb);
    }
    j["flat_values"] = bs.flat_values;
    j["flat_multiplicities"] = bs.flat_multiplicities;
    return j.dump(2) + "\n";
}

std::vector<double> torus_spectrum(const PeriodicGraph& g, int side) {
    require_valid(g);
    if (side < 1) throw error("torus side must be positive");
    long cells = 1;
    for (int r = 0; r < g.dimension; ++r) cells *= side;
    long size = cells * g.nu;
    if (size > 4096) throw error("torus quotient exceeds the 4096-vertex limit");

    auto cell_index = [&](const Offset& c) {
        long idx = 0;
        for (int r = g.dimension - 1; r >= 0; --r) {
            int v = ((c[static_cast<size_t>(r)] % side) + side) % side;
            idx = idx * side + v;
        }
        return idx;
    };
    std::vector<std::vector<std::complex<double>>> a(
        static_cast<size_t>(size), std::vector<std::complex<double>>(static_cast<size_t>(size), 0.0));
    std::vector<Offset> all_cells;
    all_cells.reserve(static_cast<size_t>(cells));
    {
        Offset c(static_cast<size_t>(g.dimension), 0);
        for (long i = 0; i < cells; ++i) {
            all_cells.push_back(c);
            for (int r = 0; r < g.dimension; ++r) {
                if (++c[static_cast<size_t>(r)] < side) break;
                c[static_cast<size_t>(r)] = 0;
            }
        }
    }
    for (const auto& cell : all_cells) {
        long ci = cell_index(cell);
        for (const auto& e : g.edges) {
            long cj = cell_index(add(cell, e.offset));
            long u = ci * g.nu + e.from;
            long v = cj * g.nu + e.to;
            std::complex<double> w(to_double(e.weight.re), to_double(e.weight.im));
            a[static_cast<size_t>(u)][static_cast<size_t>(v)] += w;
            a[static_cast<size_t>(v)][static_cast<size_t>(u)] += std::conj(w);
        }
        for (int i = 0; i < g.nu; ++i) {
            long u = ci * g.nu + i;
            a[static_cast<size_t>(u)][static_cast<size_t>(u)] += to_double(g.potential[static_cast<size_t>(i)]);
        }
    }
    // More sweeps than the symbol path: the matrix is bigger.
    return hermitian_eigenvalues(std::move(a), 60);
}

int torus_oracle(const PeriodicGraph& g, int side, const RealValue& lambda, double tol) {
    std::vector<double> ev = torus_spectrum(g, side);
    double x = lambda.approx();
    int count = 0;
    for (double e : ev)
        if (std::abs(e - x) <= tol) ++count;
    return count;
}

}  // namespace flatband
