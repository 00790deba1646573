#include "drs/spectral_minimality.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace drs {

std::string status_name(Status s) {
    switch (s) {
    case Status::Simple: return "Simple";
    case Status::NotSimple: return "NotSimple";
    default: return "Unknown";
    }
}

Json Verdict::to_json() const {
    Json j;
    j["status"] = status_name(status);
    j["reasons"] = Json::array();
    for (const auto& r : reasons) j["reasons"].push_back(Json{{"kind", r.kind}, {"data", r.data}});
    j["derivation"] = derivation;
    return j;
}

Json angle_json(const ExactAngle& a) { return a.str(); }

Json word_json(const Graph& g, const std::vector<int>& w) {
    Json j = Json::array();
    for (int e : w) j.push_back(g.edge(e).name);
    return j;
}

Json point_json(const Graph& g, const EPPoint& x) {
    return Json{{"prefix", word_json(g, x.prefix())}, {"cycle", word_json(g, x.cycle())}};
}

Json vec_json(const Vec& v) {
    Json j = Json::array();
    for (long long x : v) j.push_back(x);
    return j;
}

Json intvec_json(const IntVec& v) {
    Json j = Json::array();
    for (const auto& x : v) {
        if (x > Int(9007199254740991LL) || x < Int(-9007199254740991LL))
            j.push_back(x.str());
        else
            j.push_back(static_cast<long long>(x));
    }
    return j;
}

Json lattice_json(const Sublattice& l) {
    Json j = Json::array();
    for (const auto& b : l.basis()) j.push_back(intvec_json(b));
    return j;
}

Json pairing_json(const Bicharacter& b) {
    Json j = Json::array();
    for (const auto& r : b.pairing()) {
        Json row = Json::array();
        for (const auto& a : r) row.push_back(a.str());
        j.push_back(row);
    }
    return j;
}

Json angles_json(const std::vector<ExactAngle>& v) {
    Json j = Json::array();
    for (const auto& a : v) j.push_back(a.str());
    return j;
}

Json product_point_json(const ProductSystem& s, const Point& x) {
    Json j = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) j.push_back(point_json(s.components[i].graph, x[i]));
    return j;
}

namespace {

Vec smallest_l1(const Sublattice& l) {
    Vec best;
    Int best_norm = -1;
    for (const auto& b : l.basis()) {
        Int n = 0;
        for (const auto& x : b) n += x < 0 ? Int(-x) : x;
        if (best_norm < 0 || n < best_norm) {
            best_norm = n;
            best = to_ll(b);
        }
    }
    return best;
}

Int rational_order(const ExactAngle& a) { return boost::multiprecision::denominator(a.rational_part()); }

// first cycle point inside the given strongly connected component
std::optional<EPPoint> cycle_point_in_scc(const Graph& g, int scc) {
    for (const auto& c : enumerate_cycles(g, static_cast<std::size_t>(g.vertex_count()))) {
        bool inside = std::all_of(c.begin(), c.end(), [&](int e) {
            return g.scc_of()[g.edge(e).o] == scc && g.scc_of()[g.edge(e).t] == scc;
        });
        if (inside) return EPPoint(g, {}, c);
    }
    return std::nullopt;
}

std::vector<int> nontrivial_sccs(const Graph& g) {
    std::set<int> s;
    for (const auto& e : g.edges())
        if (g.scc_of()[e.o] == g.scc_of()[e.t]) s.insert(g.scc_of()[e.o]);
    return {s.begin(), s.end()};
}

Reason non_minimal_reason(const ProductSystem& s, std::size_t comp, const MinimalityWitness& w) {
    const Graph& g = s.components[comp].graph;
    return {"NonMinimalSystem",
            Json{{"component", comp},
                 {"cycle_vertex", g.vertices()[w.cycle_vertex]},
                 {"unreachable_vertex", g.vertices()[w.unreachable]}}};
}

Json density_witness_json(const Graph& g, const EPPoint& x, const OrbitWitness& w) {
    return Json{{"point", point_json(g, x)},
                {"vertex", g.vertices()[w.vertex]},
                {"unreachable", w.unreachable},
                {"cosets", angles_json(w.cosets)}};
}

} // namespace

CircleResult circle_dense(const std::vector<ExactAngle>& gens) {
    CircleResult r;
    for (const auto& g : gens)
        if (g.has_irrational_part()) {
            r.dense = true;
            r.generator = g;
            return r;
        }
    Int n = 1;
    for (const auto& g : gens) {
        Int d = rational_order(g);
        n = n / boost::multiprecision::gcd(n, d) * d;
    }
    for (Int k = 0; k < n; ++k) r.subgroup.push_back(ExactAngle::from_rational(Rational(k, n)));
    return r;
}

TorusResult torus_dense(const TorusSubgroupPresentation& p) {
    for (const auto& g : p.generators)
        if (g.size() != p.dim) throw Error("torus generator has the wrong dimension");
    TorusResult r;
    if (p.dim == 0) {
        r.dense = true;
        r.annihilators = Sublattice::zero(0);
        return r;
    }
    r.annihilators = rational_kernel_mod1(p.generators, p.dim);
    r.dense = r.annihilators.is_zero();
    if (!r.dense) r.annihilator = smallest_l1(r.annihilators);
    return r;
}

DensityResult rho_orbit_dense(const Graph& g, const EdgeLabeling& l, const EPPoint& x) {
    if (static_cast<int>(l.size()) != g.edge_count()) throw Error("labeling does not cover every edge");
    DensityResult res;
    if (auto w = minimality_witness(g)) {
        res.witness = OrbitWitness{w->unreachable, true, {}};
        return res;
    }
    std::size_t pre = x.prefix().size(), len = x.period();
    std::set<int> tails;
    for (std::size_t n = 0; n <= pre + len; ++n) tails.insert(point_vertex(g, x.shifted(n)));
    std::map<int, std::optional<std::vector<int>>> cache;
    for (int w = 0; w < g.vertex_count(); ++w) {
        bool reach = false;
        std::optional<std::vector<int>> cert;
        for (int u : tails) {
            if (!g.reaches(u, w)) continue;
            reach = true;
            for (int z = 0; z < g.vertex_count() && !cert; ++z) {
                if (!g.on_cycle(z) || !g.reaches(u, z) || !g.reaches(z, w)) continue;
                int c = g.scc_of()[z];
                if (!cache.count(c)) cache[c] = irrational_cycle_in_scc(g, l, c);
                cert = cache[c];
            }
            if (cert) break;
        }
        if (!reach) {
            res.witness = OrbitWitness{w, true, {}};
            return res;
        }
        if (!cert) {
            ExactAngle lc = label_sum(l, x.cycle());
            std::size_t ord = static_cast<std::size_t>(rational_order(lc));
            std::vector<std::pair<int, ExactAngle>> starts;
            for (std::size_t n = 0; n <= pre + len * ord; ++n)
                starts.emplace_back(point_vertex(g, x.shifted(n)), -label_sum(l, x.first_edges(n)));
            res.witness = OrbitWitness{w, false, reachable_labels(g, l, starts, w)};
            return res;
        }
        if (!res.certificate_cycle) res.certificate_cycle = cert;
    }
    res.dense = true;
    return res;
}

Verdict crossed_product_simple(const Graph& g, const EdgeLabeling& l) {
    if (static_cast<int>(l.size()) != g.edge_count()) throw Error("labeling does not cover every edge");
    Verdict v;
    ProductSystem single;
    single.components.push_back({g, l});
    if (auto w = minimality_witness(g)) {
        v.status = Status::NotSimple;
        v.reasons.push_back(non_minimal_reason(single, 0, *w));
        return v;
    }
    bool uncountable = is_path_space_uncountable(g);
    v.derivation["minimal"] = true;
    v.derivation["uncountable_path_space"] = uncountable;
    if (uncountable) {
        std::optional<std::vector<int>> cert;
        bool all = true;
        for (int u = 0; u < g.vertex_count() && all; ++u) {
            DensityResult d = forward_orbit_dense(g, l, u);
            all = d.dense;
            if (d.dense && !cert) cert = d.certificate_cycle;
        }
        if (all) {
            v.status = Status::Simple;
            v.derivation["decided_by"] = "forward-orbit";
            v.reasons.push_back({"DenseCertificate",
                                 Json{{"route", "forward-orbit"}, {"cycle", word_json(g, *cert)},
                                      {"label", label_sum(l, *cert).str()}}});
            return v;
        }
        v.derivation["decided_by"] = "rho-orbit";
        for (int c : nontrivial_sccs(g)) {
            EPPoint x = *cycle_point_in_scc(g, c);
            DensityResult d = rho_orbit_dense(g, l, x);
            if (!d.dense) {
                v.status = Status::NotSimple;
                v.reasons.push_back({"NonDenseOrbit", density_witness_json(g, x, *d.witness)});
                return v;
            }
            v.reasons.push_back({"DenseCertificate",
                                 Json{{"route", "rho-orbit"}, {"point", point_json(g, x)},
                                      {"cycle", word_json(g, *d.certificate_cycle)},
                                      {"label", label_sum(l, *d.certificate_cycle).str()}}});
        }
        v.status = Status::Simple;
        return v;
    }

    // countable path space: the uncountability hypothesis fails; decide on the finite system
    v.derivation["decided_by"] = "finite-system";
    v.derivation["hypothesis_failure"] = "path space is countable";
    v.status = Status::Simple;
    for (const EPPoint& x : all_points_countable(g)) {
        DensityResult d = rho_orbit_dense(g, l, x);
        if (!d.dense) {
            v.status = Status::NotSimple;
            v.reasons.push_back({"NonDenseOrbit", density_witness_json(g, x, *d.witness)});
            break;
        }
        if (v.reasons.empty())
            v.reasons.push_back({"DenseCertificate",
                                 Json{{"route", "rho-orbit"}, {"point", point_json(g, x)},
                                      {"cycle", word_json(g, *d.certificate_cycle)},
                                      {"label", label_sum(l, *d.certificate_cycle).str()}}});
    }
    Verdict cross = simplicity_pipeline(crossed_product_system(g, l), CocycleSpec::ch(l));
    if (cross.status != v.status) throw Error("internal: finite-system route disagrees with the spectral pipeline");
    v.derivation["spectral_cross_check"] = cross.derivation;
    return v;
}

namespace {

Point first_point(const ProductSystem& s) {
    Point x;
    for (const auto& c : s.components) {
        auto cyc = enumerate_cycles(c.graph, static_cast<std::size_t>(c.graph.vertex_count()));
        x.push_back(EPPoint(c.graph, {}, cyc.front()));
    }
    return x;
}

std::vector<Point> all_points_finite(const ProductSystem& s) {
    std::vector<Point> out{Point{}};
    for (const auto& c : s.components) {
        auto pts = all_points_countable(c.graph);
        std::vector<Point> next;
        for (const auto& b : out)
            for (const auto& q : pts) {
                Point x = b;
                x.push_back(q);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

long long max_abs(const std::vector<Vec>& vs) {
    long long m = 0;
    for (const auto& v : vs)
        for (long long x : v) m = std::max(m, x < 0 ? -x : x);
    return m;
}

Json tau_json(const std::vector<AngleVector>& gens) {
    Json j = Json::array();
    for (const auto& g : gens) j.push_back(angles_json(g));
    return j;
}

} // namespace

Verdict simplicity_pipeline(const ProductSystem& s, const CocycleSpec& sigma, const Bounds& bounds) {
    Verdict v;
    std::size_t k = s.rank();
    if (k == 0) throw Error("product system needs at least one component");
    CocycleSpec sig;
    if (auto d = std::get_if<DegreeCocycle>(&sigma.variant())) {
        if (d->rho.rank() != k) throw Error("degree cocycle rank differs from the system rank");
        sig = CocycleSpec::degree(Cocycle2(d->rho.base()));
        if (d->rho.cochain() && !d->rho.cochain()->values().empty())
            v.derivation["coboundary_part"] = "dropped (cohomologous cocycles give isomorphic algebras)";
    } else if (sigma.is_ch()) {
        if (k != 2 || s.components[1].graph.vertex_count() != 1 || s.components[1].graph.edge_count() != 1)
            throw Error("the c_h cocycle needs a (graph) x (single loop) system");
        sig = sigma;
    } else {
        throw Error("unsupported cocycle presentation for the pipeline");
    }
    bool trivial = sigma.is_trivial();

    // (1) minimality
    for (std::size_t i = 0; i < k; ++i)
        if (auto w = minimality_witness(s.components[i].graph)) {
            v.status = Status::NotSimple;
            v.reasons.push_back(non_minimal_reason(s, i, *w));
            return v;
        }
    v.derivation["minimal"] = true;

    // (2) periodicity lattice
    Sublattice pt = compute_P_T(s);
    v.derivation["P_T"] = lattice_json(pt);
    std::size_t r = pt.rank();
    std::vector<Vec> gens;
    for (const auto& b : pt.basis()) gens.push_back(to_ll(b));

    // (3) restriction to the isotropy interior and normalization
    Point x0 = first_point(s);
    Bicharacter wp(r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            GroupoidElem ga = *make_elem(s, x0, gens[a], x0);
            GroupoidElem gb = *make_elem(s, x0, gens[b], x0);
            wp.at(a, b) = eval_sigma(s, sig, ga, gb);
        }
    Cocycle2 rho_p(wp);
    Bicharacter omega = bicharacter_from_cocycle(rho_p);
    Normalized nz = vanish_on_centre_normalize(omega);
    std::vector<Vec> zb; // ambient coordinates
    std::vector<Vec> zb_p; // P_T coordinates
    for (const auto& z : nz.centre.basis()) {
        Vec zp = to_ll(z);
        zb_p.push_back(zp);
        Vec amb(k, 0);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t i = 0; i < k; ++i) amb[i] += zp[a] * gens[a][i];
        zb.push_back(amb);
    }
    std::size_t d = zb.size();
    v.derivation["sigma_on_P_T"] = pairing_json(wp);
    v.derivation["omega"] = pairing_json(omega);
    v.derivation["omega_prime"] = pairing_json(nz.omega_prime);
    Json zj = Json::array();
    for (const auto& z : zb) zj.push_back(vec_json(z));
    v.derivation["Z_omega"] = zj;
    Json orders = Json::array();
    for (const auto& o : nz.omega_tilde.orders) orders.push_back(static_cast<long long>(o));
    v.derivation["omega_tilde"] = Json{{"orders", orders}, {"pairing", pairing_json(nz.omega_tilde.pairing)}};
    v.derivation["certificates"] = Json::array();

    auto finish = [&](Verdict& out) -> Verdict& {
        if (trivial) {
            bool expected = pt.is_zero();
            if ((out.status == Status::Simple) != expected || out.status == Status::Unknown)
                throw Error("internal: untwisted consistency check failed");
            out.derivation["untwisted_check"] = "minimal and effective criterion agrees";
        }
        return out;
    };

    // (4) minimality of the spectral action
    if (d == 0) {
        v.status = Status::Simple;
        v.reasons.push_back({"DenseCertificate", Json{{"route", "trivial-centre"}, {"centre_rank", 0}}});
        return finish(v);
    }

    bool finite = true;
    for (const auto& c : s.components) finite = finite && !is_path_space_uncountable(c.graph);

    if (finite) {
        long long radius = std::max(1LL, max_abs(zb_p) + 2);
        OneCochain b = flatten_to_constant(rho_p, nz.omega_prime, radius);
        CocycleSpec corrected(CorrectedCocycle{std::make_shared<CocycleSpec>(sig), pt, b});
        std::vector<Point> pts = all_points_finite(s);
        v.derivation["points"] = pts.size();
        for (const Point& x : pts)
            if (!find_arrow(s, x0, x)) throw Error("internal: orbit transitivity check failed");
        v.derivation["orbit_transitive"] = true;
        for (const Point& x : pts) {
            TorusSubgroupPresentation tp{d, {}, AngleVector(d)};
            for (std::size_t a = 0; a < r; ++a) {
                GroupoidElem loop = *make_elem(s, x, gens[a], x);
                AngleVector t(d);
                for (std::size_t j = 0; j < d; ++j) t[j] = tau(s, corrected, loop, zb[j], pt);
                tp.generators.push_back(t);
            }
            TorusResult tr = torus_dense(tp);
            if (!tr.dense) {
                v.status = Status::NotSimple;
                v.reasons.push_back({"AnnihilatorFunctional", Json{{"m", vec_json(*tr.annihilator)},
                                                                   {"tau_generators", tau_json(tp.generators)}}});
                v.reasons.push_back({"NonDenseOrbit", Json{{"point", product_point_json(s, x)},
                                                           {"loop_tau", tau_json(tp.generators)}}});
                return finish(v);
            }
            v.derivation["certificates"].push_back(Json{{"point", product_point_json(s, x)}, {"loop_tau", tau_json(tp.generators)}});
        }
        v.status = Status::Simple;
        v.reasons.push_back({"DenseCertificate", Json{{"route", "finite-system"}}});
        return finish(v);
    }

    if (auto c = std::get_if<CHCocycle>(&sig.variant())) {
        const Graph& g = s.components[0].graph;
        EPPoint x = x0[0];
        DensityResult dr = rho_orbit_dense(g, c->labels, x);
        if (dr.dense) {
            v.status = Status::Simple;
            v.reasons.push_back({"DenseCertificate", Json{{"route", "rho-orbit"}, {"point", point_json(g, x)},
                                                          {"cycle", word_json(g, *dr.certificate_cycle)},
                                                          {"label", label_sum(c->labels, *dr.certificate_cycle).str()}}});
        } else {
            v.status = Status::NotSimple;
            v.reasons.push_back({"NonDenseOrbit", density_witness_json(g, x, *dr.witness)});
        }
        return finish(v);
    }

    // degree cocycle on an infinite space: tau only depends on the degree
    const auto& deg = std::get<DegreeCocycle>(sig.variant());
    Bicharacter skew = antisymmetrize(deg.rho);
    TorusSubgroupPresentation tp{d, {}, AngleVector(d)};
    for (std::size_t i = 0; i < k; ++i) {
        Vec e(k, 0);
        e[i] = 1;
        AngleVector t(d);
        for (std::size_t j = 0; j < d; ++j) t[j] = skew.eval(e, zb[j]);
        tp.generators.push_back(t);
    }
    TorusResult tr = torus_dense(tp);
    if (!tr.dense) {
        v.status = Status::NotSimple;
        v.reasons.push_back({"AnnihilatorFunctional", Json{{"m", vec_json(*tr.annihilator)},
                                                           {"tau_by_degree", tau_json(tp.generators)}}});
        return finish(v);
    }
    // bounded search only: no exact procedure here
    std::vector<Point> pts = enumerate_product_points(s, bounds.prefix, bounds.cycle);
    std::size_t elems = 0;
    std::set<AngleVector> taus;
    for (const auto& y : pts)
        for (const auto& p : box_points(k, bounds.degree)) {
            auto g = make_elem(s, y, p, x0);
            if (!g) continue;
            ++elems;
            AngleVector t(d);
            for (std::size_t j = 0; j < d; ++j) t[j] = skew.eval(p, zb[j]);
            taus.insert(t);
        }
    v.status = Status::Unknown;
    v.reasons.push_back({"SearchExhausted", Json{{"bounds", Json{{"prefix", bounds.prefix}, {"cycle", bounds.cycle}, {"degree", bounds.degree}}},
                                                 {"elements_from_base_point", elems},
                                                 {"distinct_tau_values", taus.size()},
                                                 {"tau_by_degree", tau_json(tp.generators)}}});
    return finish(v);
}

} // namespace drs
