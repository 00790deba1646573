#include "drs/groupoid_algebra.hpp"

#include <algorithm>

namespace drs {

std::optional<GroupoidElem> make_elem(const ProductSystem& s, const Point& x, const Vec& p, const Point& y) {
    std::size_t k = s.rank();
    if (x.size() != k || y.size() != k || p.size() != k) throw Error("groupoid element: rank mismatch");
    GroupoidElem g{x, p, y, Vec(k), Vec(k)};
    for (std::size_t i = 0; i < k; ++i) {
        long long lo = std::max(0LL, -p[i]);
        long long hi = lo + static_cast<long long>(x[i].prefix().size() + y[i].prefix().size() + x[i].period()) + 1;
        bool found = false;
        for (long long n = lo; n <= hi && !found; ++n) {
            long long m = n + p[i];
            if (x[i].shifted(static_cast<std::size_t>(m)) == y[i].shifted(static_cast<std::size_t>(n))) {
                g.m[i] = m;
                g.n[i] = n;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return g;
}

GroupoidElem unit(const ProductSystem& s, const Point& x) {
    return GroupoidElem{x, Vec(s.rank(), 0), x, Vec(s.rank(), 0), Vec(s.rank(), 0)};
}

std::optional<GroupoidElem> find_arrow(const ProductSystem& s, const Point& x, const Point& y) {
    if (x.size() != s.rank() || y.size() != s.rank()) throw Error("find_arrow: rank mismatch");
    Vec p(s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i) {
        const auto& cx = x[i].cycle();
        auto cy = y[i].cycle();
        if (cx.size() != cy.size()) return std::nullopt;
        bool found = false;
        for (std::size_t r = 0; r < cy.size() && !found; ++r) {
            if (cy == cx) {
                p[i] = static_cast<long long>(x[i].prefix().size()) - static_cast<long long>(y[i].prefix().size()) -
                       static_cast<long long>(r);
                found = true;
            } else {
                std::rotate(cy.begin(), cy.begin() + 1, cy.end());
            }
        }
        if (!found) return std::nullopt;
    }
    return make_elem(s, x, p, y);
}

GroupoidElem compose(const ProductSystem& s, const GroupoidElem& a, const GroupoidElem& b) {
    if (a.y != b.x) throw NotComposable("source of the first element differs from range of the second");
    auto r = make_elem(s, a.x, add(a.p, b.p), b.y);
    if (!r) throw Error("composition produced an invalid element");
    return *r;
}

GroupoidElem inverse(const GroupoidElem& a) { return GroupoidElem{a.y, neg(a.p), a.x, a.n, a.m}; }

bool in_isotropy_interior(const Sublattice& pt, const GroupoidElem& a) {
    return a.x == a.y && pt.contains(to_intvec(a.p));
}

bool in_isotropy_interior(const ProductSystem& s, const GroupoidElem& a) {
    return in_isotropy_interior(compute_P_T(s), a);
}

bool CocycleSpec::is_trivial() const {
    if (auto d = std::get_if<DegreeCocycle>(&v_))
        return d->rho.base().is_zero() && (!d->rho.cochain() || d->rho.cochain()->values().empty());
    return false;
}

ExactAngle h_tilde_elem(const Graph& g, const EdgeLabeling& l, const GroupoidElem& a) {
    if (static_cast<int>(l.size()) != g.edge_count()) throw Error("labeling does not cover every edge");
    return label_sum(l, a.x[0].first_edges(static_cast<std::size_t>(a.m[0]))) -
           label_sum(l, a.y[0].first_edges(static_cast<std::size_t>(a.n[0])));
}

namespace {

bool is_loop_graph(const Graph& g) { return g.vertex_count() == 1 && g.edge_count() == 1; }

ExactAngle cochain_on_interior(const CorrectedCocycle& c, const GroupoidElem& a) {
    if (a.x != a.y) return {};
    auto coords = c.pt.coordinates(to_intvec(a.p));
    if (!coords) return {};
    return c.b.value(to_ll(*coords));
}

} // namespace

ExactAngle eval_sigma(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& a, const GroupoidElem& b) {
    if (a.y != b.x) throw NotComposable("cocycle evaluated on a non-composable pair");
    const auto& v = sigma.variant();
    if (auto d = std::get_if<DegreeCocycle>(&v)) return d->rho.eval(a.p, b.p);
    if (auto c = std::get_if<CHCocycle>(&v)) {
        if (s.rank() != 2 || !is_loop_graph(s.components[1].graph))
            throw Error("the c_h cocycle needs a (graph) x (single loop) system");
        return h_tilde_elem(s.components[0].graph, c->labels, b).scaled(a.p[1]);
    }
    const auto& cc = std::get<CorrectedCocycle>(v);
    GroupoidElem ab = compose(s, a, b);
    return eval_sigma(s, *cc.base, a, b) - cochain_on_interior(cc, a) - cochain_on_interior(cc, b) +
           cochain_on_interior(cc, ab);
}

ExactAngle tau(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& g, const Vec& p, const Sublattice& pt) {
    if (!pt.contains(to_intvec(p))) throw Error("tau: displacement not in P_T");
    GroupoidElem u = *make_elem(s, g.y, p, g.y);
    GroupoidElem gu = compose(s, g, u);
    GroupoidElem gi = inverse(g);
    return eval_sigma(s, sigma, g, u) + eval_sigma(s, sigma, gu, gi) - eval_sigma(s, sigma, g, gi);
}

std::pair<Point, AngleVector> theta_apply(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& g,
                                          const Point& basepoint, const AngleVector& chi, const std::vector<Vec>& zbasis,
                                          const Sublattice& pt) {
    if (g.y != basepoint) throw Error("theta_apply: element does not start at the base point");
    if (chi.size() != zbasis.size()) throw Error("theta_apply: character dimension differs from centre rank");
    AngleVector out = chi;
    for (std::size_t j = 0; j < zbasis.size(); ++j) out[j] += tau(s, sigma, g, zbasis[j], pt);
    return {g.x, out};
}

Graph loop_graph() { return Graph({"*"}, {Edge{"z", 0, 0}}); }

ProductSystem crossed_product_system(const Graph& g, const EdgeLabeling& l) {
    ProductSystem s;
    s.components.push_back({g, l});
    s.components.push_back({loop_graph(), std::nullopt});
    return s;
}

GroupoidElem product_with_Z(const ProductSystem& rank2, const GroupoidElem& a, long long n) {
    if (rank2.rank() != 2 || !is_loop_graph(rank2.components[1].graph)) throw Error("product_with_Z needs a (graph) x (single loop) system");
    if (a.x.size() != 1) throw Error("product_with_Z needs a rank-1 element");
    EPPoint pt(rank2.components[1].graph, {}, {0});
    auto r = make_elem(rank2, {a.x[0], pt}, {a.p[0], n}, {a.y[0], pt});
    if (!r) throw Error("product_with_Z: element not in the rank-2 groupoid");
    return *r;
}

TwistedFn convolve(const ProductSystem& s, const TwistedFn& f, const TwistedFn& g, const CocycleSpec& sigma) {
    TwistedFn h;
    for (const auto& [a, fa] : f)
        for (const auto& [b, gb] : g) {
            if (a.y != b.x) continue;
            h[compose(s, a, b)] += phase(eval_sigma(s, sigma, a, b)) * fa * gb;
        }
    std::erase_if(h, [](const auto& kv) { return kv.second == std::complex<double>(0.0, 0.0); });
    return h;
}

TwistedFn involution(const ProductSystem& s, const TwistedFn& f, const CocycleSpec& sigma) {
    TwistedFn h;
    for (const auto& [a, fa] : f) {
        GroupoidElem g = inverse(a);
        h[g] = phase(-eval_sigma(s, sigma, g, a)) * std::conj(fa);
    }
    return h;
}

TwistedFn conditional_expectation(const TwistedFn& f, const Sublattice& pt) {
    TwistedFn h;
    for (const auto& [a, fa] : f)
        if (in_isotropy_interior(pt, a)) h[a] = fa;
    return h;
}

TwistedFn conditional_expectation(const TwistedFn& f, const ProductSystem& s) {
    return conditional_expectation(f, compute_P_T(s));
}

std::vector<Point> enumerate_product_points(const ProductSystem& s, std::size_t max_prefix, std::size_t max_cycle) {
    std::vector<Point> out{Point{}};
    for (const auto& c : s.components) {
        auto pts = enumerate_points(c.graph, max_prefix, max_cycle);
        std::vector<Point> next;
        for (const auto& base : out)
            for (const auto& q : pts) {
                Point x = base;
                x.push_back(q);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<GroupoidElem> enumerate_elements(const ProductSystem& s, const std::vector<Point>& points, long long max_degree) {
    std::vector<GroupoidElem> out;
    auto degs = box_points(s.rank(), max_degree);
    for (const auto& x : points)
        for (const auto& y : points)
            for (const auto& p : degs)
                if (auto g = make_elem(s, x, p, y)) out.push_back(std::move(*g));
    return out;
}

} // namespace drs
