#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatband/floquet.hpp"
#include "flatband/jacobi.hpp"
#include "flatband/numberfield.hpp"
#include "testgraphs.hpp"

#include <random>

using namespace flatband;
using namespace flatband::testgraphs;

namespace {

GLaurent term1(int k, long re, long im = 0) {
    return GLaurent::monomial(Offset{k}, GaussianRational(Rational(re), Rational(im)));
}

bool has_value(const FlatBandReport& rep, const RealValue& v, int mult = -1) {
    for (const auto& b : rep.bands)
        if (b.value.equals(v)) return mult < 0 || b.multiplicity == mult;
    return false;
}

}  // namespace

TEST_CASE("symbol of the rung chain") {
    FloquetSymbol s = build_symbol(fig1_left());
    GLaurent c = term1(1, 1) + term1(-1, 1);
    GLaurent r = term1(0, 1) + term1(1, 1) + term1(-1, 1);
    CHECK(s.at(0, 0) == c);
    CHECK(s.at(1, 1) == c);
    CHECK(s.at(0, 1) == r);
    CHECK(s.at(1, 0) == r.involute());
}

TEST_CASE("symbol of the honeycomb with potential") {
    PeriodicGraph g = with_potential(honeycomb(), {Rational(2), Rational(-1, 3)});
    FloquetSymbol s = build_symbol(g);
    GLaurent off(2);
    off.add_term({0, 0}, GaussianRational(1));
    off.add_term({-1, 0}, GaussianRational(1));
    off.add_term({0, -1}, GaussianRational(1));
    CHECK(s.at(0, 1) == off);
    CHECK(s.at(1, 0) == off.involute());
    CHECK(s.at(0, 0) == GLaurent::constant(2, GaussianRational(Rational(2))));
    CHECK(s.at(1, 1) == GLaurent::constant(2, GaussianRational(Rational(-1, 3))));
}

TEST_CASE("symbol of a single loop vertex") {
    FloquetSymbol s = build_symbol(z_line());
    CHECK(s.at(0, 0) == term1(1, 1) + term1(-1, 1));
}

TEST_CASE("hermitian at exact unit-modulus points") {
    std::mt19937 rng(31);
    for (const auto& g : {fig1_left(), creutz(), pyrochlore_1d(), honeycomb(), korsa()}) {
        FloquetSymbol s = build_symbol(g);
        for (int it = 0; it < 10; ++it) {
            std::vector<GaussianRational> z;
            for (int r = 0; r < g.dimension; ++r)
                z.push_back(unit_gaussian(1 + static_cast<long>(rng() % 6), static_cast<long>(rng() % 6)));
            auto h = eval_symbol(s, z);
            for (int i = 0; i < g.nu; ++i)
                for (int j = 0; j < g.nu; ++j)
                    CHECK(h[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
                          conj(h[static_cast<size_t>(j)][static_cast<size_t>(i)]));
        }
    }
}

TEST_CASE("characteristic polynomial of the rungless chain") {
    // symbol [[c, c], [c, c]] gives p = lambda^2 - 2 c lambda
    CharPoly cp = char_poly(build_symbol(fig1_right()));
    GPoly c0 = cp.coefficient({0});
    CHECK(c0 == GPoly({GaussianRational(0), GaussianRational(0), GaussianRational(1)}));
    CHECK(cp.coefficient({1}) == GPoly({GaussianRational(0), GaussianRational(-2)}));
    CHECK(cp.coefficient({-1}) == GPoly({GaussianRational(0), GaussianRational(-2)}));
    CHECK(cp.coefficient({2}).is_zero());
}

TEST_CASE("characteristic polynomial of the line") {
    CharPoly cp = char_poly(build_symbol(z_line()));
    CHECK(cp.coefficient({0}) == GPoly({GaussianRational(0), GaussianRational(-1)}));
    CHECK(cp.coefficient({1}) == GPoly({GaussianRational(1)}));
    CHECK(cp.coefficient({-1}) == GPoly({GaussianRational(1)}));
}

TEST_CASE("charpoly invariants: leading term and conjugate symmetry") {
    for (const auto& g : {fig1_left(), creutz(), pyrochlore_1d(), honeycomb(), sawtooth(), korsa()}) {
        CharPoly cp = char_poly(build_symbol(g));
        GPoly c0 = cp.coefficient(zero_offset(g.dimension));
        CHECK(c0.degree() == g.nu);
        GaussianRational lead = c0.coeff(g.nu);
        CHECK(lead == GaussianRational(Rational(g.nu % 2 == 0 ? 1 : -1)));
        for (const auto& [k, c] : cp.p.terms()) CHECK(cp.coefficient(negate(k)) == coeff_conj(c));
    }
}

TEST_CASE("flat band detection on the figure corpus") {
    auto rep = detect_flat_bands(fig1_left());
    REQUIRE(rep.bands.size() == 1);
    CHECK(has_value(rep, RealValue(-1), 1));

    rep = detect_flat_bands(fig1_right());
    REQUIRE(rep.bands.size() == 1);
    CHECK(has_value(rep, RealValue(0), 1));

    rep = detect_flat_bands(creutz());
    REQUIRE(rep.bands.size() == 2);
    CHECK(has_value(rep, RealValue(-2), 1));
    CHECK(has_value(rep, RealValue(2), 1));

    rep = detect_flat_bands(pyrochlore_1d());
    REQUIRE(rep.bands.size() == 2);
    CHECK(has_value(rep, RealValue(-2)));
    CHECK(has_value(rep, RealValue(0)));

    CHECK(detect_flat_bands(z_line()).empty());
    CHECK(detect_flat_bands(ladder()).empty());
    CHECK(detect_flat_bands(honeycomb()).empty());
    CHECK(detect_flat_bands(sawtooth()).empty());

    rep = detect_flat_bands(with_potential(sawtooth(), {Rational(-1), Rational(0)}));
    REQUIRE(rep.bands.size() == 1);
    CHECK(has_value(rep, RealValue(-2), 1));

    rep = detect_flat_bands(fivecell());
    REQUIRE(rep.bands.size() == 1);
    CHECK(has_value(rep, RealValue(-2), 1));

    rep = detect_flat_bands(lieb_like());
    REQUIRE(rep.bands.size() == 1);
    CHECK(has_value(rep, RealValue(0), 1));
}

TEST_CASE("disconnected graphs refuse detection unless forced") {
    PeriodicGraph cover(1, 2,
                        {ed(0, 0, {2}), ed(1, 1, {4}), ed(0, 1, {1}), ed(0, 1, {-1}), ed(0, 1, {3}), ed(0, 1, {-3})});
    CHECK_THROWS_AS(detect_flat_bands(cover), error);
    auto rep = detect_flat_bands(cover, true);
    CHECK(rep.quotient_level);
}

TEST_CASE("detection is invariant under relabel and shift") {
    for (const auto& g : {fig1_left(), pyrochlore_1d(), fivecell(), lieb_like()}) {
        auto base = detect_flat_bands(g).values();
        std::vector<int> perm(static_cast<size_t>(g.nu));
        for (int i = 0; i < g.nu; ++i) perm[static_cast<size_t>(i)] = (i + 1) % g.nu;
        auto pv = detect_flat_bands(relabel(g, perm)).values();
        REQUIRE(pv.size() == base.size());
        for (size_t i = 0; i < pv.size(); ++i) CHECK(pv[i].equals(base[i]));
        auto sv = detect_flat_bands(shift_cell(g, 0, Offset(static_cast<size_t>(g.dimension), 1))).values();
        REQUIRE(sv.size() == base.size());
        for (size_t i = 0; i < sv.size(); ++i) CHECK(sv[i].equals(base[i]));
    }
}

TEST_CASE("every reported flat band kills every coefficient exactly") {
    for (const auto& g : {fig1_left(), creutz(), pyrochlore_1d(), fivecell()}) {
        CharPoly cp = char_poly(build_symbol(g));
        for (const auto& b : detect_flat_bands(g).bands) {
            auto field = NumberField::make(b.value);
            NFElem l = NFElem::generator(field);
            for (const auto& [k, c] : cp.p.terms()) {
                NFElem acc;
                for (int j = c.degree(); j >= 0; --j) acc = acc * l + NFElem(c.coeff(j));
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("band sampler: line closed form") {
    BandSample bs = sample_bands(z_line(), 8);
    REQUIRE(bs.energies.size() == 8);
    for (size_t j = 0; j < 8; ++j) {
        double expect = 2 * std::cos(2 * M_PI * static_cast<double>(j) / 8);
        CHECK(bs.energies[j][0] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(bs.flat_values.empty());
}

TEST_CASE("band sampler: flat flags for the figure graphs") {
    BandSample bs = sample_bands(fig1_right(), 64);
    REQUIRE(bs.flat_values.size() == 1);
    CHECK(std::abs(bs.flat_values[0]) < 1e-9);
    CHECK(bs.band_min.front() == doctest::Approx(-4.0));
    CHECK(bs.band_max.back() == doctest::Approx(4.0));

    bs = sample_bands(creutz(), 32);
    REQUIRE(bs.flat_values.size() == 2);
    CHECK(bs.flat_values[0] == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(bs.flat_values[1] == doctest::Approx(2.0).epsilon(1e-9));
    // no crossings here, so even the sorted bands are flat
    CHECK(bs.band_max[0] - bs.band_min[0] < 1e-9);
    CHECK(bs.band_max[1] - bs.band_min[1] < 1e-9);

    CHECK(sample_bands(ladder(), 32).flat_values.empty());
    CHECK_THROWS_AS(sample_bands(z_line(), 1), error);
}

TEST_CASE("torus oracle on figures") {
    CHECK(torus_oracle(fig1_left(), 6, RealValue(-1)) >= 6);
    CHECK(torus_oracle(z_line(), 5, RealValue(0)) <= 1);
    CHECK(torus_oracle(creutz(), 4, RealValue(2)) == 4);
    CHECK(torus_oracle(creutz(), 4, RealValue(-2)) == 4);
    CHECK_THROWS_AS(torus_oracle(fig1_left(), 3000, RealValue(0)), error);
}

TEST_CASE("agreement: exact detector vs torus oracle vs sampler on random graphs") {
    std::mt19937 rng(20240914);
    int tested = 0;
    while (tested < 60) {
        int d = 1 + static_cast<int>(rng() % 2);
        int nu = 1 + static_cast<int>(rng() % 3);
        std::vector<EdgeSpec> edges;
        int ne = 1 + static_cast<int>(rng() % 5);
        std::set<std::tuple<int, int, Offset>> seen;
        for (int e = 0; e < ne; ++e) {
            int a = static_cast<int>(rng() % static_cast<unsigned>(nu));
            int b = static_cast<int>(rng() % static_cast<unsigned>(nu));
            Offset k(static_cast<size_t>(d));
            for (auto& v : k) v = static_cast<int>(rng() % 5) - 2;
            if (a == b && is_zero_offset(k)) continue;
            auto canon = canonicalize_edges(d, {EdgeSpec{a, b, k, GaussianRational(1)}});
            const auto& ce = canon[0];
            if (!seen.insert({ce.from, ce.to, ce.offset}).second) continue;
            if (seen.count({ce.to, ce.from, negate(ce.offset)}) && ce.from != ce.to) continue;
            edges.push_back(ce);
        }
        if (edges.empty()) continue;
        PeriodicGraph g(d, nu, edges);
        if (!validate(g).ok() || !is_connected(g)) continue;
        ++tested;

        auto rep = detect_flat_bands(g);
        BandSample bs = sample_bands(g, 32);
        // every exact flat band appears in the sampler and the torus oracle
        long cells = d == 1 ? 4 : 16;
        for (const auto& b : rep.bands) {
            double v = b.value.approx();
            CHECK(bs.is_flat_value(v));
            CHECK(torus_oracle(g, 4, b.value) >= b.multiplicity * cells);
        }
        // and the sampler finds nothing beyond the exact set
        CHECK(bs.flat_values.size() == rep.bands.size());
    }
}

TEST_CASE("report json shape") {
    std::string j = report_to_json(detect_flat_bands(fig1_left()));
    CHECK(j.find("\"minpoly\"") != std::string::npos);
    CHECK(j.find("\"-1\"") != std::string::npos);
}

TEST_CASE("jacobi reports non-convergence within the sweep budget") {
    std::vector<std::vector<std::complex<double>>> m{{1.0, {0.0, 2.0}}, {{0.0, -2.0}, -1.0}};
    CHECK_THROWS_AS(hermitian_eigenvalues(m, 0), error);
    auto ev = hermitian_eigenvalues(m);  // default budget converges
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(-std::sqrt(5.0)));
    CHECK(ev[1] == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("torus spectrum equals the union of Bloch spectra") {
    PeriodicGraph g = fig1_left();
    auto ev = torus_spectrum(g, 6);
    REQUIRE(ev.size() == 12);
    std::vector<double> expect;
    FloquetSymbol s = build_symbol(g);
    for (int j = 0; j < 6; ++j) {
        std::vector<std::vector<std::complex<double>>> h(2, std::vector<std::complex<double>>(2));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) h[a][b] = eval_unit(s.at(a, b), {static_cast<double>(j) / 6});
        for (double e : hermitian_eigenvalues(h)) expect.push_back(e);
    }
    std::sort(expect.begin(), expect.end());
    for (size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("three-dimensional graphs behave") {
    // the cubic lattice: one absolutely continuous band, nothing flat
    PeriodicGraph cubic(3, 1, {ed(0, 0, {1, 0, 0}), ed(0, 0, {0, 1, 0}), ed(0, 0, {0, 0, 1})});
    CHECK(is_connected(cubic));
    CHECK(detect_flat_bands(cubic).empty());
    // a rung pair over the cubic lattice has the single-cell flat band -1
    PeriodicGraph pair(3, 2,
                       {ed(0, 0, {1, 0, 0}), ed(0, 0, {0, 1, 0}), ed(0, 0, {0, 0, 1}), ed(1, 1, {1, 0, 0}),
                        ed(1, 1, {0, 1, 0}), ed(1, 1, {0, 0, 1}), ed(0, 1, {0, 0, 0}), ed(0, 1, {1, 0, 0}),
                        ed(0, 1, {-1, 0, 0}), ed(0, 1, {0, 1, 0}), ed(0, 1, {0, -1, 0}), ed(0, 1, {0, 0, 1}),
                        ed(0, 1, {0, 0, -1})});
    auto rep = detect_flat_bands(pair);
    REQUIRE(rep.bands.size() == 1);
    CHECK(rep.bands[0].value.equals(RealValue(-1)));
    CHECK(torus_oracle(pair, 3, RealValue(-1)) >= 27);
}

TEST_CASE("rational weights produce rational flat bands") {
    // halving the rung weight moves the flat band to -1/2
    PeriodicGraph g(1, 2,
                    {ed(0, 0, {1}), ed(1, 1, {1}), ed(0, 1, {0}, GaussianRational(Rational(1, 2))),
                     ed(0, 1, {1}), ed(0, 1, {-1})});
    auto rep = detect_flat_bands(g);
    REQUIRE(rep.bands.size() == 1);
    CHECK(rep.bands[0].value.equals(RealValue(Rational(-1, 2))));
    CHECK(torus_oracle(g, 4, rep.bands[0].value) >= 4);
}
