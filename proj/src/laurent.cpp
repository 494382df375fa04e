#include "flatband/laurent.hpp"

#include <vector>

namespace flatband {

std::string laurent_to_string(const GLaurent& p, const std::string& varbase) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Offset, GaussianRational>> terms(p.terms().begin(), p.terms().end());
    GradedLex less;
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return less(b.first, a.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        std::string mono;
        for (size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += varbase;
            if (k.size() > 1) mono += std::to_string(i + 1);
            if (k[i] != 1) mono += "^" + std::to_string(k[i]);
        }
        bool neg = c.is_real() && c.re < 0;
        GaussianRational a = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string cs = gaussian_to_string(a);
        if (mono.empty()) {
            os << (a.is_real() ? cs : "(" + cs + ")");
        } else if (a == GaussianRational(1)) {
            os << mono;
        } else if (a.is_real()) {
            os << cs << "*" << mono;
        } else {
            os << "(" << cs << ")*" << mono;
        }
        first = false;
    }
    return os.str();
}

}  // namespace flatband
