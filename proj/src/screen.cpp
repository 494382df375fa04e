#include "flatband/screen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flatband {

ScreenResult screen_nu2(const PeriodicGraph& g) {
    require_valid(g);
    if (g.nu != 2) throw error("screen_nu2 needs nu = 2");
    for (const auto& e : g.edges)
        if (e.weight != GaussianRational(1)) throw error("screen_nu2 requires unit weights");
    for (const auto& q : g.potential)
        if (q != 0) throw error("screen_nu2 requires zero potential");

    auto i00 = g.offsets(0, 0);
    auto i11 = g.offsets(1, 1);
    auto i01 = g.offsets(0, 1);
    ScreenResult r;
    auto certify = [&](const std::string& what) {
        r.certified_no_flat_band = true;
        r.certificate = what;
        return r;
    };

    // (ii) a single bridge class can never go flat.
    if (i01.size() == 1) return certify("condition (ii): |I12| = 1");
    // (iii) an empty diagonal index set rules flat bands out.
    if (i00.empty() || i11.empty()) {
        std::string which = i00.empty() && i11.empty() ? "I11 = {} and I22 = {}"
                            : i00.empty()              ? "I11 = {}"
                                                       : "I22 = {}";
        return certify("condition (iii): " + which);
    }
    // (i) degree identity k_max(r) + k'_max(r) = p_max(r) - p_min(r) per axis.
    for (int axis = 0; axis < g.dimension; ++axis) {
        auto proj_max = [&](const std::set<Offset>& s) {
            int m = 0;
            bool first = true;
            for (const auto& k : s) {
                if (first || k[static_cast<size_t>(axis)] > m) m = k[static_cast<size_t>(axis)];
                first = false;
            }
            return m;
        };
        auto proj_min = [&](const std::set<Offset>& s) {
            int m = 0;
            bool first = true;
            for (const auto& k : s) {
                if (first || k[static_cast<size_t>(axis)] < m) m = k[static_cast<size_t>(axis)];
                first = false;
            }
            return m;
        };
        int lhs = proj_max(i00) + proj_max(i11);
        int rhs = proj_max(i01) - proj_min(i01);
        if (lhs != rhs)
            return certify("condition (i): degree identity fails on axis " + std::to_string(axis + 1));
    }

    // Candidate lambda = +-sqrt(|I12| - |I11 cap I22|), an integer.
    std::set<Offset> inter;
    std::set_intersection(i00.begin(), i00.end(), i11.begin(), i11.end(), std::inserter(inter, inter.begin()));
    Int s = Int(i01.size()) - Int(inter.size());
    if (s < 0) return certify("|I12| < |I11 cap I22|: lambda^2 would be negative");
    auto root = perfect_sqrt(s);
    if (!root) return certify("|I12| - |I11 cap I22| is not a perfect square");

    // Second closed form: (|I11| + |I22| - sqrt((|I11|-|I22|)^2 + 4|I12|^2)) / 2.
    Int a(i00.size()), b(i11.size()), c(i01.size());
    Int disc = (a - b) * (a - b) + 4 * c * c;
    auto droot = perfect_sqrt(disc);
    if (!droot) return certify("second closed form is irrational");
    Int twice = a + b - *droot;
    if (twice % 2 != 0) return certify("second closed form is a half-integer");
    Rational lambda2(twice / 2);

    for (const Int& cand : {*root, Int(-*root)}) {
        if (Rational(cand) == lambda2) {
            r.candidates.push_back(RealValue(Rational(cand)));
            break;  // +root == -root only when both are 0
        }
    }
    if (r.candidates.empty()) return certify("closed-form candidate sets do not intersect");
    return r;
}

std::string screen_result_to_string(const ScreenResult& r) {
    std::ostringstream os;
    if (r.certified_no_flat_band) {
        os << "no flat band: " << r.certificate << "\n";
    } else {
        os << "candidates:";
        for (const auto& v : r.candidates) os << " " << v.to_string();
        os << "\n";
    }
    return os.str();
}

}  // namespace flatband
