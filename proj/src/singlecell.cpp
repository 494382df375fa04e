#include "flatband/singlecell.hpp"

#include "flatband/generators.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace flatband {

using nlohmann::ordered_json;

FiniteGraph FiniteGraph::path(int n) {
    FiniteGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}
FiniteGraph FiniteGraph::cycle(int n) {
    FiniteGraph g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}
FiniteGraph FiniteGraph::complete(int n) {
    FiniteGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}
FiniteGraph FiniteGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    FiniteGraph g(n);
    for (auto [i, j] : edges) g.add_edge(i, j);
    return g;
}

void FiniteGraph::add_edge(int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw error("bad finite graph edge");
    adj[static_cast<size_t>(i)] |= static_cast<uint16_t>(1u << j);
    adj[static_cast<size_t>(j)] |= static_cast<uint16_t>(1u << i);
}

int FiniteGraph::degree(int v) const { return __builtin_popcount(adj[static_cast<size_t>(v)]); }

int FiniteGraph::edge_count() const {
    int s = 0;
    for (int v = 0; v < n; ++v) s += degree(v);
    return s / 2;
}

bool FiniteGraph::connected() const {
    if (n == 0) return false;
    uint32_t seen = 1;
    for (;;) {
        uint32_t next = seen;
        for (int v = 0; v < n; ++v)
            if (seen & (1u << v)) next |= adj[static_cast<size_t>(v)];
        if (next == seen) break;
        seen = next;
    }
    return seen == (1u << n) - 1;
}

bool FiniteGraph::bipartite() const {
    std::vector<int> color(static_cast<size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<size_t>(s)] >= 0) continue;
        color[static_cast<size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (!edge(v, w)) continue;
                if (color[static_cast<size_t>(w)] < 0) {
                    color[static_cast<size_t>(w)] = 1 - color[static_cast<size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<size_t>(w)] == color[static_cast<size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

int FiniteGraph::regular_degree() const {
    if (n == 0) return -1;
    int d = degree(0);
    for (int v = 1; v < n; ++v)
        if (degree(v) != d) return -1;
    return d;
}

uint64_t FiniteGraph::canonical_code() const {
    if (n > 12) throw error("canonical form limited to 12 vertices");
    // Min upper-triangle bitstring over relabelings that sort vertices into
    // descending degree classes; the constraint set only depends on the
    // isomorphism class, so the minimum is canonical.
    std::map<int, std::vector<int>, std::greater<int>> by_degree;
    for (int v = 0; v < n; ++v) by_degree[degree(v)].push_back(v);
    std::vector<std::vector<int>> classes;
    for (auto& [d, vs] : by_degree) classes.push_back(vs);

    uint64_t best = ~0ull;
    std::vector<int> perm(static_cast<size_t>(n));
    std::function<void(size_t, int)> rec = [&](size_t ci, int slot) {
        if (ci == classes.size()) {
            uint64_t code = 0;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    if (edge(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)])) code |= (1ull << bit);
                    ++bit;
                }
            best = std::min(best, code);
            return;
        }
        std::vector<int> cls = classes[ci];
        std::sort(cls.begin(), cls.end());
        do {
            for (size_t k = 0; k < cls.size(); ++k) perm[static_cast<size_t>(slot) + k] = cls[k];
            rec(ci + 1, slot + static_cast<int>(cls.size()));
        } while (std::next_permutation(cls.begin(), cls.end()));
    };
    rec(0, 0);
    return best;
}

ZPoly finite_char_poly(const FiniteGraph& g) {
    const int n = g.n;
    if (n > 12) throw error("exact spectrum limited to 12 vertices");
    std::vector<std::vector<Int>> a(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.edge(i, j) ? 1 : 0;
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_{k-1} + c_{k-1} A)/k pattern.
    std::vector<Int> c(static_cast<size_t>(n) + 1, 0);
    c[static_cast<size_t>(n)] = 1;
    std::vector<std::vector<Int>> m = a;
    for (int k = 1; k <= n; ++k) {
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += m[static_cast<size_t>(i)][static_cast<size_t>(i)];
        Int ck = -tr / k;
        if (ck * k != -tr) throw error("faddeev-leverrier division not exact");
        c[static_cast<size_t>(n - k)] = ck;
        if (k == n) break;
        for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] += ck;
        std::vector<std::vector<Int>> next(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (a[static_cast<size_t>(i)][static_cast<size_t>(l)] == 0) continue;
                for (int j = 0; j < n; ++j)
                    next[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        a[static_cast<size_t>(i)][static_cast<size_t>(l)] * m[static_cast<size_t>(l)][static_cast<size_t>(j)];
            }
        m = std::move(next);
    }
    return ZPoly(std::move(c));
}

namespace {

// Kernel basis of (A - lambda I) over Q(lambda).
std::vector<std::vector<NFElem>> kernel_basis(const FiniteGraph& g, const FieldPtr& field) {
    const int n = g.n;
    NFElem lambda = NFElem::generator(field);
    std::vector<std::vector<NFElem>> m(static_cast<size_t>(n), std::vector<NFElem>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.edge(i, j) ? NFElem(1) : NFElem(0);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] -= lambda;
    return nf_kernel_basis(std::move(m));
}

}  // namespace

std::vector<ExactEigenpair> exact_spectrum(const FiniteGraph& g) {
    std::vector<ExactEigenpair> out;
    ZPoly cp = finite_char_poly(g);
    for (const auto& root : isolate_real_roots(cp)) {
        ExactEigenpair pair;
        pair.value = root.value;
        pair.multiplicity = root.multiplicity;
        pair.field = NumberField::make(root.value);
        pair.kernel = kernel_basis(g, pair.field);
        if (static_cast<int>(pair.kernel.size()) != root.multiplicity)
            throw error("geometric and algebraic multiplicities differ on a symmetric matrix");
        out.push_back(std::move(pair));
    }
    int total = 0;
    for (const auto& p : out) total += p.multiplicity;
    if (total != g.n) throw error("finite graph spectrum has non-real eigenvalues");
    return out;
}

bool neighborhood_condition(const PeriodicGraph& g, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= g.nu || j >= g.nu) throw error("vertex index out of range");
    Offset zero = zero_offset(g.dimension);
    auto strip = [&](std::set<Offset> s) {
        s.erase(zero);
        return s;
    };
    auto ii = g.offsets(i, i);
    auto jj = g.offsets(j, j);
    auto ij = strip(g.offsets(i, j));
    auto ji = strip(g.offsets(j, i));
    if (!(ii == jj && ii == ij && ij == ji)) return false;
    for (int r = 0; r < g.nu; ++r) {
        if (r == i || r == j) continue;
        if (g.offsets(i, r) != g.offsets(j, r)) return false;
    }
    return true;
}

SubsetWitness subset_zero_criterion(const ExactEigenpair& pair) {
    SubsetWitness w;
    const int n = pair.kernel.empty() ? 0 : static_cast<int>(pair.kernel[0].size());
    if (pair.kernel.empty()) return w;
    if (pair.multiplicity >= 2) {
        // A one-codimension constraint cannot kill a >= 2 dimensional space:
        // vanish at coordinate 0.
        const auto& b1 = pair.kernel[0];
        const auto& b2 = pair.kernel[1];
        std::vector<NFElem> psi(static_cast<size_t>(n));
        if (b1[0].is_zero() && b2[0].is_zero()) {
            psi = b1;
        } else {
            for (int k = 0; k < n; ++k) psi[static_cast<size_t>(k)] = b1[0] * b2[static_cast<size_t>(k)] - b2[0] * b1[static_cast<size_t>(k)];
        }
        w.holds = true;
        w.delta.assign(static_cast<size_t>(n), 0);
        w.delta[0] = 1;
        w.psi = std::move(psi);
        return w;
    }
    const auto& psi = pair.kernel[0];
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        NFElem acc;
        for (int k = 0; k < n; ++k)
            if (mask & (1u << k)) acc += psi[static_cast<size_t>(k)];
        if (acc.is_zero()) {
            w.holds = true;
            w.delta.assign(static_cast<size_t>(n), 0);
            for (int k = 0; k < n; ++k)
                if (mask & (1u << k)) w.delta[static_cast<size_t>(k)] = 1;
            w.psi = psi;
            return w;
        }
    }
    return w;
}

std::vector<FiniteGraph> enumerate_graphs(int n) {
    if (n < 1 || n > 7) throw error("graph enumeration limited to 1..7 vertices");
    std::vector<FiniteGraph> cur{FiniteGraph(1)};
    for (int size = 2; size <= n; ++size) {
        std::set<uint64_t> seen;
        std::vector<FiniteGraph> next;
        for (const auto& g : cur) {
            for (uint32_t nb = 0; nb < (1u << (size - 1)); ++nb) {
                FiniteGraph h(size);
                for (int i = 0; i < size - 1; ++i) {
                    for (int j = i + 1; j < size - 1; ++j)
                        if (g.edge(i, j)) h.add_edge(i, j);
                    if (nb & (1u << i)) h.add_edge(i, size - 1);
                }
                uint64_t code = h.canonical_code();
                if (seen.insert(code).second) next.push_back(std::move(h));
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const FiniteGraph& a, const FiniteGraph& b) { return a.canonical_code() < b.canonical_code(); });
        cur = std::move(next);
    }
    return cur;
}

std::vector<FiniteGraph> enumerate_connected_graphs(int n) {
    std::vector<FiniteGraph> out;
    for (auto& g : enumerate_graphs(n))
        if (g.connected()) out.push_back(std::move(g));
    return out;
}

PeriodicGraph witness_graph(const FiniteGraph& fg, const RealValue& lambda, const std::vector<NFElem>& psi,
                            const std::vector<int>& delta) {
    if (static_cast<int>(psi.size()) != fg.n || static_cast<int>(delta.size()) != fg.n)
        throw error("witness arity mismatch");
    if (!fg.connected()) throw error("witness periodization needs a connected cell");
    bool any = false;
    for (int d : delta) any = any || d != 0;
    if (!any) throw error("witness needs a nonzero delta");
    // Check A psi = lambda psi exactly, inside psi's own field when it has one.
    FieldPtr field;
    for (const auto& e : psi)
        if (e.field()) {
            field = e.field();
            break;
        }
    if (!field) field = NumberField::make(lambda);
    if (!field->root_value().equals(lambda)) throw error("witness lambda does not match the eigenvector field");
    NFElem l = NFElem::generator(field);
    for (int i = 0; i < fg.n; ++i) {
        NFElem acc;
        for (int j = 0; j < fg.n; ++j)
            if (fg.edge(i, j)) acc += psi[static_cast<size_t>(j)];
        if (!(acc - l * psi[static_cast<size_t>(i)]).is_zero()) throw error("witness psi is not an eigenvector");
    }
    NFElem s;
    for (int i = 0; i < fg.n; ++i)
        if (delta[static_cast<size_t>(i)]) s += psi[static_cast<size_t>(i)];
    if (!s.is_zero()) throw error("witness delta does not annihilate psi");

    std::vector<EdgeSpec> edges;
    for (int i = 0; i < fg.n; ++i)
        for (int j = i + 1; j < fg.n; ++j)
            if (fg.edge(i, j)) edges.push_back({i, j, {0}, GaussianRational(1)});
    for (int i = 0; i < fg.n; ++i)
        for (int j = i; j < fg.n; ++j)
            if (delta[static_cast<size_t>(i)] && delta[static_cast<size_t>(j)]) {
                edges.push_back({i, j, {1}, GaussianRational(1)});
                if (i != j) edges.push_back({i, j, {-1}, GaussianRational(1)});
            }
    return PeriodicGraph(1, fg.n, std::move(edges));
}

namespace {

CompactEigenvector single_cell_vector(const PeriodicGraph& g, const FieldPtr& field, const RealValue& lambda,
                                      const std::vector<NFElem>& psi) {
    CompactEigenvector v;
    v.field = field;
    v.lambda = lambda;
    v.dim = g.dimension;
    v.nu = g.nu;
    for (int i = 0; i < g.nu; ++i)
        if (!psi[static_cast<size_t>(i)].is_zero()) v.values[{i, zero_offset(g.dimension)}] = psi[static_cast<size_t>(i)];
    return v;
}

}  // namespace

SingleCellSet enumerate_single_cell(int nu, bool with_witnesses) {
    if (nu < 1 || nu > 6) throw error("single-cell enumeration limited to nu <= 6");
    SingleCellSet out;
    out.nu = nu;
    if (nu > 1) out.values = enumerate_single_cell(nu - 1, false).values;

    auto add_value = [&](const RealValue& v) {
        if (contains_value(out.values, v)) return false;
        out.values.push_back(v);
        return true;
    };

    // Connected graphs on nu vertices; the (simple) Perron top eigenvalue of a
    // connected cell can never be single-cell flat.
    for (const auto& fg : enumerate_connected_graphs(nu)) {
        auto spectrum = exact_spectrum(fg);
        for (size_t idx = 0; idx + 1 < spectrum.size(); ++idx) {  // the simple Perron top stays out
            const auto& pair = spectrum[idx];
            if (contains_value(out.values, pair.value)) continue;
            SubsetWitness w = subset_zero_criterion(pair);
            if (!w.holds) continue;
            add_value(pair.value);
            if (with_witnesses) {
                PeriodicGraph pg = witness_graph(fg, pair.value, w.psi, w.delta);
                CompactEigenvector vec = single_cell_vector(pg, pair.field, pair.value, w.psi);
                out.new_witnesses.push_back({pair.value, std::move(pg), std::move(vec)});
            }
        }
    }

    // Even nu: every eigenvalue of a connected graph on nu/2 vertices appears,
    // via the Cartesian product with the zero-flat-band two-chain.
    if (nu % 2 == 0) {
        for (const auto& fg : enumerate_connected_graphs(nu / 2)) {
            for (const auto& pair : exact_spectrum(fg)) {
                if (contains_value(out.values, pair.value)) continue;
                add_value(pair.value);
                if (with_witnesses) {
                    auto [pg, vecs] = cartesian_flatband_base_zero(fg);
                    for (const auto& vec : vecs)
                        if (vec.lambda.equals(pair.value)) {
                            out.new_witnesses.push_back({pair.value, pg, vec});
                            break;
                        }
                }
            }
        }
    }

    sort_values(out.values);
    return out;
}

std::string single_cell_to_json(const SingleCellSet& s) {
    ordered_json j;
    j["nu"] = s.nu;
    j["values"] = ordered_json::array();
    for (const auto& v : s.values) {
        ordered_json jv;
        jv["value"] = v.to_string();
        ordered_json mp = ordered_json::array();
        ZPoly vm = v.minpoly();
        for (const auto& c : vm.coeffs()) mp.push_back(c.str());
        jv["minpoly"] = mp;
        j["values"].push_back(jv);
    }
    j["new_witnesses"] = ordered_json::array();
    for (const auto& w : s.new_witnesses) {
        ordered_json jw;
        jw["value"] = w.value.to_string();
        jw["graph"] = ordered_json::parse(to_json(w.graph));
        j["new_witnesses"].push_back(jw);
    }
    return j.dump(2) + "\n";
}

std::string single_cell_table(const SingleCellSet& s) {
    std::ostringstream os;
    os << "F_" << s.nu << "^s (" << s.values.size() << " values)\n";
    size_t width = 8;
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& v : s.values) {
        rows.push_back({v.to_string(), poly_to_string(v.minpoly(), "x")});
        width = std::max(width, rows.back().first.size());
    }
    os << "  value";
    for (size_t k = 5; k < width + 2; ++k) os << ' ';
    os << "minpoly\n";
    for (const auto& [val, mp] : rows) {
        os << "  " << val;
        for (size_t k = val.size(); k < width + 2; ++k) os << ' ';
        os << mp << "\n";
    }
    return os.str();
}

std::string eigen_table(int n) {
    std::ostringstream os;
    auto graphs = enumerate_connected_graphs(n);
    os << "connected graphs on " << n << " vertices: " << graphs.size() << "\n";
    int idx = 0;
    for (const auto& fg : graphs) {
        ++idx;
        os << "G" << idx << "  edges:";
        for (int i = 0; i < fg.n; ++i)
            for (int j = i + 1; j < fg.n; ++j)
                if (fg.edge(i, j)) os << " " << i << "-" << j;
        os << "\n";
        for (const auto& pair : exact_spectrum(fg)) {
            os << "    " << pair.value.to_string();
            if (pair.multiplicity > 1) os << " (x" << pair.multiplicity << ")";
            os << "  eigenvectors:";
            for (const auto& vec : pair.kernel) {
                os << " (";
                for (size_t k = 0; k < vec.size(); ++k) os << (k ? ", " : "") << vec[k].to_string();
                os << ")";
            }
            os << "\n";
        }
    }
    return os.str();
}
}  // namespace flatband
