#include "drs/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "drs/oracles.hpp"

namespace drs {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return std::round(ms * 1000.0) / 1000.0;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

int exit_for(Status s) {
    switch (s) {
    case Status::Simple: return 0;
    case Status::NotSimple: return 1;
    default: return 2;
    }
}

bool has_labels(const JobConfig& c, std::size_t i) {
    return i < c.components.size() && !c.components[i].edges.empty() && c.components[i].edges[0].label.has_value();
}

bool uses_ch(const JobConfig& c) {
    if (c.mode == Mode::Oracle && !c.cocycle) return c.components.size() == 1 && has_labels(c, 0);
    return c.mode == Mode::CrossedProduct || (c.cocycle && c.cocycle->kind == "ch");
}

// the system the verdict is computed on, with its cocycle
std::pair<ProductSystem, CocycleSpec> materialize(const JobConfig& c, const BasisPtr& basis) {
    ProductSystem base = make_system(c, basis);
    if (uses_ch(c)) {
        const auto& comp = base.components.front();
        return {crossed_product_system(comp.graph, *comp.labels), CocycleSpec::ch(*comp.labels)};
    }
    if (!c.cocycle) return {base, CocycleSpec::trivial(base.rank())};
    return {base, CocycleSpec::degree(make_cocycle2(*c.cocycle, basis))};
}

Json replay_config(const JobConfig& c, const std::string& name) {
    JobConfig r = c;
    r.mode = Mode::Oracle;
    r.checks = {name};
    return config_to_json(r);
}

struct CheckContext {
    const JobConfig& config;
    BasisPtr basis;
    ProductSystem base;
    oracle::Rng rng;
    OracleResult& out;

    void fail(Json detail) {
        out.passed = false;
        detail["replay"] = replay_config(config, out.check);
        out.counterexamples.push_back(std::move(detail));
    }
};

void check_minimality(CheckContext& cx) {
    for (std::size_t i = 0; i < cx.base.rank(); ++i) {
        const Graph& g = cx.base.components[i].graph;
        bool lib = is_minimal(g), orc = oracle::minimal(g, cx.config.bounds.depth);
        ++cx.out.cases;
        if (lib != orc) cx.fail(Json{{"component", i}, {"library", lib}, {"oracle", orc}});
    }
}

void check_periodicity(CheckContext& cx) {
    const long long window = 12;
    for (std::size_t i = 0; i < cx.base.rank(); ++i) {
        const Graph& g = cx.base.components[i].graph;
        if (!is_minimal(g)) continue;
        Sublattice pt = compute_P_T(g);
        std::set<long long> lib;
        for (long long p = -window; p <= window; ++p)
            if (pt.contains(IntVec{Int(p)})) lib.insert(p);
        std::set<long long> orc = oracle::periodicity_window(g, window);
        ++cx.out.cases;
        if (lib != orc)
            cx.fail(Json{{"component", i},
                         {"library", std::vector<long long>(lib.begin(), lib.end())},
                         {"oracle", std::vector<long long>(orc.begin(), orc.end())}});
    }
}

std::set<std::string> angle_strings(const std::vector<ExactAngle>& v) {
    std::set<std::string> s;
    for (const auto& a : v) s.insert(a.str());
    return s;
}

void check_forward_orbit(CheckContext& cx) {
    const auto& b = cx.config.bounds;
    for (std::size_t i = 0; i < cx.base.rank(); ++i) {
        const auto& comp = cx.base.components[i];
        if (!comp.labels) continue;
        const Graph& g = comp.graph;
        const EdgeLabeling& l = *comp.labels;
        int len = 2 * g.vertex_count() + b.depth;
        for (int v = 0; v < g.vertex_count(); ++v) {
            ++cx.out.cases;
            DensityResult d = forward_orbit_dense(g, l, v);
            Json where{{"component", i}, {"vertex", g.vertices()[v]}};
            if (d.dense) {
                if (!d.certificate_cycle || !label_sum(l, *d.certificate_cycle).has_irrational_part()) {
                    where["problem"] = "dense verdict without an irrational certificate cycle";
                    cx.fail(where);
                    continue;
                }
                auto samples = oracle::walk_labels(g, l, {{v, 0.0}}, b.samples, 200, cx.rng);
                for (int w = 0; w < g.vertex_count(); ++w) {
                    if (!oracle::covers_circle(samples[w], b.epsilon)) {
                        where["problem"] = "sampled labels do not cover the circle";
                        where["target"] = g.vertices()[w];
                        cx.fail(where);
                        break;
                    }
                }
                continue;
            }
            const OrbitWitness& wit = *d.witness;
            auto exact = oracle::exact_path_labels(g, l, {{v, ExactAngle()}}, len);
            if (wit.unreachable) {
                if (exact.count(wit.vertex)) {
                    where["problem"] = "witness vertex is reachable";
                    where["target"] = g.vertices()[wit.vertex];
                    cx.fail(where);
                }
                continue;
            }
            auto cosets = angle_strings(wit.cosets);
            for (const auto& a : exact[wit.vertex]) {
                if (!cosets.count(a.str())) {
                    where["problem"] = "path label outside the witness cosets";
                    where["target"] = g.vertices()[wit.vertex];
                    where["label"] = a.str();
                    cx.fail(where);
                    break;
                }
            }
        }
    }
}

void check_crossed_product(CheckContext& cx) {
    if (cx.base.rank() != 1 || !cx.base.components[0].labels) return;
    const auto& b = cx.config.bounds;
    const Graph& g = cx.base.components[0].graph;
    const EdgeLabeling& l = *cx.base.components[0].labels;
    ++cx.out.cases;
    Verdict v = crossed_product_simple(g, l);
    auto walks = oracle::closed_walks(g, static_cast<std::size_t>(g.vertex_count()));
    bool irr = false;
    for (const auto& w : walks) irr = irr || label_sum(l, w).has_irrational_part();
    Status orc = oracle::minimal(g, b.depth) && irr ? Status::Simple : Status::NotSimple;
    if (v.status != orc) {
        cx.fail(Json{{"library", status_name(v.status)}, {"oracle", status_name(orc)}});
        return;
    }
    if (v.status == Status::Simple) {
        int at = g.edge(walks.front().front()).t;
        auto samples = oracle::walk_labels(g, l, {{at, 0.0}}, b.samples, 200, cx.rng);
        if (!oracle::covers_circle(samples[at], b.epsilon))
            cx.fail(Json{{"problem", "sampled loop labels do not cover the circle"}, {"vertex", g.vertices()[at]}});
        return;
    }
    for (const auto& r : v.reasons) {
        if (r.kind != "NonDenseOrbit" || r.data.at("unreachable").get<bool>()) continue;
        std::vector<int> pre, cyc;
        for (const auto& n : r.data.at("point").at("prefix")) pre.push_back(g.edge_index(n.get<std::string>()));
        for (const auto& n : r.data.at("point").at("cycle")) cyc.push_back(g.edge_index(n.get<std::string>()));
        EPPoint x(g, pre, cyc);
        int w = g.vertex_index(r.data.at("vertex").get<std::string>());
        std::set<std::string> cosets;
        for (const auto& a : r.data.at("cosets")) cosets.insert(a.get<std::string>());
        std::vector<std::pair<int, ExactAngle>> starts;
        for (std::size_t n = 0; n <= pre.size() + 4 * cyc.size(); ++n)
            starts.emplace_back(point_vertex(g, x.shifted(n)), -label_sum(l, x.first_edges(n)));
        auto exact = oracle::exact_path_labels(g, l, starts, g.vertex_count() + b.depth);
        for (const auto& a : exact[w])
            if (!cosets.count(a.str())) {
                cx.fail(Json{{"problem", "orbit label outside the witness cosets"}, {"label", a.str()}});
                return;
            }
    }
}

std::vector<GroupoidElem> sample_elements(const ProductSystem& s, oracle::Rng& rng) {
    std::size_t cyc = 2;
    for (const auto& c : s.components) cyc = std::max(cyc, static_cast<std::size_t>(c.graph.vertex_count()));
    auto pts = enumerate_product_points(s, 1, cyc);
    std::shuffle(pts.begin(), pts.end(), rng);
    if (pts.size() > 6) pts.resize(6);
    std::sort(pts.begin(), pts.end());
    auto elems = enumerate_elements(s, pts, 1);
    std::shuffle(elems.begin(), elems.end(), rng);
    if (elems.size() > 60) elems.resize(60);
    return elems;
}

// composable triples (a, b, c) with s(a) = r(b), s(b) = r(c)
void for_triples(const std::vector<GroupoidElem>& es, std::size_t cap,
                 const std::function<void(const GroupoidElem&, const GroupoidElem&, const GroupoidElem&)>& f) {
    std::size_t n = 0;
    for (const auto& a : es)
        for (const auto& b : es) {
            if (source(a) != range(b)) continue;
            for (const auto& c : es) {
                if (source(b) != range(c)) continue;
                if (n++ >= cap) return;
                f(a, b, c);
            }
        }
}

void check_cocycle_identity(CheckContext& cx) {
    auto [s, sigma] = materialize(cx.config, cx.basis);
    auto es = sample_elements(s, cx.rng);
    for_triples(es, 2000, [&](const GroupoidElem& a, const GroupoidElem& b, const GroupoidElem& c) {
        if (!cx.out.passed) return;
        try {
            GroupoidElem ab = compose(s, a, b), bc = compose(s, b, c);
            ExactAngle lhs = eval_sigma(s, sigma, a, b) + eval_sigma(s, sigma, ab, c);
            ExactAngle rhs = eval_sigma(s, sigma, b, c) + eval_sigma(s, sigma, a, bc);
            ++cx.out.cases;
            if (!is_zero(lhs - rhs))
                cx.fail(Json{{"problem", "cocycle identity fails"},
                             {"degrees", Json{vec_json(a.p), vec_json(b.p), vec_json(c.p)}},
                             {"defect", (lhs - rhs).str()}});
        } catch (const OutOfBox&) {
        }
    });
    if (!cx.config.cocycle || cx.config.cocycle->kind == "ch") return;
    Cocycle2 rho = make_cocycle2(*cx.config.cocycle, cx.basis);
    Bicharacter w = bicharacter_from_cocycle(rho);
    for (const auto& p : box_points(rho.rank(), 2))
        for (const auto& q : box_points(rho.rank(), 2)) {
            if (!cx.out.passed) return;
            try {
                ExactAngle skew = eval_cocycle(rho, p, q) - eval_cocycle(rho, q, p);
                ++cx.out.cases;
                if (!is_zero(skew - (w.eval(p, q) - w.eval(q, p))))
                    cx.fail(Json{{"problem", "bicharacter skew differs from the cocycle skew"}, {"p", vec_json(p)}, {"q", vec_json(q)}});
            } catch (const OutOfBox&) {
            }
        }
}

void check_groupoid_axioms(CheckContext& cx) {
    auto [s, sigma] = materialize(cx.config, cx.basis);
    auto es = sample_elements(s, cx.rng);
    for (const auto& a : es) {
        ++cx.out.cases;
        GroupoidElem ia = inverse(a);
        bool ok = compose(s, a, ia) == unit(s, range(a)) && compose(s, ia, a) == unit(s, source(a)) &&
                  compose(s, unit(s, range(a)), a) == a;
        if (!ok) {
            cx.fail(Json{{"problem", "unit or inverse law fails"}, {"degree", vec_json(a.p)}});
            return;
        }
    }
    for_triples(es, 2000, [&](const GroupoidElem& a, const GroupoidElem& b, const GroupoidElem& c) {
        if (!cx.out.passed) return;
        ++cx.out.cases;
        GroupoidElem ab = compose(s, a, b);
        if (ab.p != add(a.p, b.p) || compose(s, ab, c) != compose(s, a, compose(s, b, c)))
            cx.fail(Json{{"problem", "associativity or degree additivity fails"},
                         {"degrees", Json{vec_json(a.p), vec_json(b.p), vec_json(c.p)}}});
    });
}

} // namespace

Json OracleResult::to_json() const {
    return Json{{"check", check}, {"passed", passed}, {"cases", cases}, {"counterexamples", counterexamples}};
}

Json Report::to_json(bool with_timings) const {
    Json j;
    j["verdict"] = verdict ? verdict->to_json() : Json(nullptr);
    if (cohomology) j["cohomology"] = *cohomology;
    if (with_timings) j["timings"] = timings;
    j["oracle_results"] = Json::array();
    for (const auto& r : oracle_results) j["oracle_results"].push_back(r.to_json());
    j["input_echo"] = input_echo;
    return j;
}

std::vector<std::string> default_checks(const JobConfig& c) {
    std::vector<std::string> out{"minimality", "periodicity"};
    bool labeled = false;
    for (std::size_t i = 0; i < c.components.size(); ++i) labeled = labeled || has_labels(c, i);
    if (labeled) out.push_back("forward_orbit");
    if (c.components.size() == 1 && labeled) out.push_back("crossed_product");
    if (c.cocycle || uses_ch(c)) out.push_back("cocycle_identity");
    out.push_back("groupoid_axioms");
    return out;
}

OracleResult run_check(const JobConfig& c, const std::string& name) {
    OracleResult r;
    r.check = name;
    BasisPtr basis = make_basis(c);
    CheckContext cx{c, basis, make_system(c, basis), oracle::Rng(c.seed ^ fnv1a(name)), r};
    if (name == "minimality")
        check_minimality(cx);
    else if (name == "periodicity")
        check_periodicity(cx);
    else if (name == "forward_orbit")
        check_forward_orbit(cx);
    else if (name == "crossed_product")
        check_crossed_product(cx);
    else if (name == "cocycle_identity")
        check_cocycle_identity(cx);
    else if (name == "groupoid_axioms")
        check_groupoid_axioms(cx);
    else
        throw ConfigError("checks", "unknown check '" + name + "'");
    return r;
}

Json cohomology_dump(const Bicharacter& w) {
    Normalized nz = vanish_on_centre_normalize(w);
    Json orders = Json::array();
    for (const auto& o : nz.omega_tilde.orders) orders.push_back(o.str());
    Json proj = Json::array();
    for (std::size_t i = 0; i < nz.omega_tilde.projection.rows(); ++i) proj.push_back(intvec_json(nz.omega_tilde.projection.row(i)));
    return Json{{"omega", pairing_json(w)},
                {"skew", pairing_json(w - w.transpose())},
                {"omega_prime", pairing_json(nz.omega_prime)},
                {"centre", lattice_json(nz.centre)},
                {"omega_tilde", Json{{"orders", orders}, {"pairing", pairing_json(nz.omega_tilde.pairing)}, {"projection", proj}}},
                {"quotient_algebra_simple", twisted_group_algebra_simple(nz.omega_tilde)}};
}

Report run(const JobConfig& c) {
    Report rep;
    auto t0 = Clock::now();
    rep.input_echo = config_to_json(c);
    BasisPtr basis = make_basis(c);

    auto stage = Clock::now();
    if (c.mode == Mode::Simplicity || c.mode == Mode::CrossedProduct) {
        if (c.mode == Mode::CrossedProduct) {
            ProductSystem s = make_system(c, basis);
            rep.verdict = crossed_product_simple(s.components[0].graph, *s.components[0].labels);
        } else {
            auto [s, sigma] = materialize(c, basis);
            rep.verdict = simplicity_pipeline(s, sigma, c.bounds);
        }
        rep.timings["verdict"] = ms_since(stage);
        rep.exit_code = exit_for(rep.verdict->status);
    } else if (c.mode == Mode::Cohomology) {
        Cocycle2 rho = make_cocycle2(*c.cocycle, basis);
        Bicharacter w = bicharacter_from_cocycle(rho);
        rep.cohomology = cohomology_dump(w);
        Verdict v;
        Normalized nz = vanish_on_centre_normalize(w);
        if (nz.centre.is_zero()) {
            v.status = Status::Simple;
            v.reasons.push_back({"DenseCertificate", Json{{"route", "trivial-centre"}}});
        } else {
            v.status = Status::NotSimple;
            v.reasons.push_back({"NontrivialCentre", Json{{"centre", lattice_json(nz.centre)}}});
        }
        v.derivation["omega"] = pairing_json(w);
        rep.verdict = v;
        rep.timings["cohomology"] = ms_since(stage);
        rep.exit_code = exit_for(v.status);
    }

    std::vector<std::string> checks = c.checks;
    if (checks.empty() && c.mode == Mode::Oracle) checks = default_checks(c);
    bool all_pass = true;
    for (const auto& name : checks) {
        stage = Clock::now();
        rep.oracle_results.push_back(run_check(c, name));
        rep.timings["oracle:" + name] = ms_since(stage);
        all_pass = all_pass && rep.oracle_results.back().passed;
    }
    if (c.mode == Mode::Oracle)
        rep.exit_code = all_pass ? 0 : 1;
    else if (!all_pass)
        rep.exit_code = 1;
    rep.timings["total"] = ms_since(t0);
    return rep;
}

} // namespace drs
