#include "drs/graph_dynamics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace drs {

Graph::Graph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_)
        if (!seen.insert(v).second) throw GraphError("duplicate vertex '" + v + "'");
    seen.clear();
    int n = vertex_count();
    out_.assign(n, {});
    in_.assign(n, {});
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        if (!seen.insert(ed.name).second) throw GraphError("duplicate edge '" + ed.name + "'");
        if (ed.o < 0 || ed.o >= n || ed.t < 0 || ed.t >= n) throw GraphError("edge '" + ed.name + "' has an unknown endpoint");
        out_[ed.o].push_back(e);
        in_[ed.t].push_back(e);
    }
    std::string bad;
    for (int v = 0; v < n; ++v)
        if (in_[v].empty()) bad += (bad.empty() ? "" : ", ") + vertices_[v];
    if (!bad.empty()) throw GraphError("terminus map not surjective; no edge ends at: " + bad);
    if (n == 0) throw GraphError("graph has no vertices");

    reach_.assign(n, std::vector<char>(n, 0));
    for (int u = 0; u < n; ++u) {
        std::deque<int> q{u};
        reach_[u][u] = 1;
        while (!q.empty()) {
            int z = q.front();
            q.pop_front();
            for (int e : out_[z]) {
                int w = edges_[e].t;
                if (!reach_[u][w]) {
                    reach_[u][w] = 1;
                    q.push_back(w);
                }
            }
        }
    }
    scc_.assign(n, -1);
    for (int u = 0; u < n; ++u) {
        if (scc_[u] >= 0) continue;
        for (int w = u; w < n; ++w)
            if (reach_[u][w] && reach_[w][u]) scc_[w] = scc_count_;
        ++scc_count_;
    }
}

Graph Graph::from_names(std::vector<std::string> vertices,
                        const std::vector<std::tuple<std::string, std::string, std::string>>& edges) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i) idx[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (const auto& [name, o, t] : edges) {
        auto io = idx.find(o), it = idx.find(t);
        if (io == idx.end()) throw GraphError("edge '" + name + "': unknown origin '" + o + "'");
        if (it == idx.end()) throw GraphError("edge '" + name + "': unknown terminus '" + t + "'");
        es.push_back({name, io->second, it->second});
    }
    return Graph(std::move(vertices), std::move(es));
}

int Graph::vertex_index(const std::string& name) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices_[i] == name) return i;
    throw GraphError("unknown vertex '" + name + "'");
}

int Graph::edge_index(const std::string& name) const {
    for (int i = 0; i < edge_count(); ++i)
        if (edges_[i].name == name) return i;
    throw GraphError("unknown edge '" + name + "'");
}

bool Graph::on_cycle(int v) const {
    for (int e : out_[v])
        if (reach_[edges_[e].t][v]) return true;
    return false;
}

bool composable(const Graph& g, const std::vector<int>& word) {
    for (int e : word)
        if (e < 0 || e >= g.edge_count()) return false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (g.edge(word[i]).o != g.edge(word[i + 1]).t) return false;
    return true;
}

int word_terminus(const Graph& g, const PathWord& w) { return w.empty() ? w.vertex : g.edge(w.edges.front()).t; }
int word_origin(const Graph& g, const PathWord& w) { return w.empty() ? w.vertex : g.edge(w.edges.back()).o; }

std::vector<int> primitive_root(const std::vector<int>& c) {
    std::size_t n = c.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = c[i] == c[i - d];
        if (ok) return std::vector<int>(c.begin(), c.begin() + d);
    }
    return c;
}

EPPoint::EPPoint(const Graph& g, std::vector<int> prefix, std::vector<int> cycle) {
    if (cycle.empty()) throw GraphError("eventually periodic point needs a nonempty cycle");
    std::vector<int> w = prefix;
    w.insert(w.end(), cycle.begin(), cycle.end());
    w.insert(w.end(), cycle.begin(), cycle.end());
    if (!composable(g, w)) throw GraphError("prefix/cycle words are not composable");
    cycle = primitive_root(cycle);
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
    prefix_ = std::move(prefix);
    cycle_ = std::move(cycle);
}

int EPPoint::edge_at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return cycle_[(i - prefix_.size()) % cycle_.size()];
}

std::vector<int> EPPoint::first_edges(std::size_t n) const {
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = edge_at(i);
    return r;
}

EPPoint EPPoint::shifted(std::size_t n) const {
    EPPoint r;
    if (n <= prefix_.size()) {
        r.prefix_.assign(prefix_.begin() + n, prefix_.end());
        r.cycle_ = cycle_;
    } else {
        std::size_t k = (n - prefix_.size()) % cycle_.size();
        r.cycle_ = cycle_;
        std::rotate(r.cycle_.begin(), r.cycle_.begin() + k, r.cycle_.end());
    }
    return r;
}

std::string EPPoint::str(const Graph& g) const {
    std::string s;
    for (int e : prefix_) s += (s.empty() ? "" : " ") + g.edge(e).name;
    s += s.empty() ? "(" : " (";
    for (std::size_t i = 0; i < cycle_.size(); ++i) s += (i ? " " : "") + g.edge(cycle_[i]).name;
    return s + ")^inf";
}

EPPoint shift(const EPPoint& x, std::size_t n) { return x.shifted(n); }

int point_vertex(const Graph& g, const EPPoint& x) { return g.edge(x.edge_at(0)).t; }

ExactAngle label_sum(const EdgeLabeling& l, const std::vector<int>& edges) {
    ExactAngle s;
    for (int e : edges) s += l.at(e);
    return s;
}

ExactAngle label_sum(const EdgeLabeling& l, const PathWord& w) { return label_sum(l, w.edges); }

ExactAngle h_tilde(const Graph& g, const EdgeLabeling& l, const PathWord& mu, const PathWord& nu) {
    if (!composable(g, mu.edges) || !composable(g, nu.edges)) throw GraphError("h_tilde: words not composable");
    if (word_origin(g, mu) != word_origin(g, nu)) throw GraphError("h_tilde: words have different origins");
    return label_sum(l, mu) - label_sum(l, nu);
}

std::optional<MinimalityWitness> minimality_witness(const Graph& g) {
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (!g.on_cycle(u)) continue;
        for (int w = 0; w < g.vertex_count(); ++w)
            if (!g.reaches(u, w)) return MinimalityWitness{u, w};
    }
    return std::nullopt;
}

bool is_minimal(const Graph& g) { return !minimality_witness(g).has_value(); }

bool is_path_space_uncountable(const Graph& g) {
    std::vector<int> verts(g.scc_count(), 0), internal(g.scc_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++verts[g.scc_of()[v]];
    for (const auto& e : g.edges())
        if (g.scc_of()[e.o] == g.scc_of()[e.t]) ++internal[g.scc_of()[e.o]];
    for (int s = 0; s < g.scc_count(); ++s)
        if (internal[s] > verts[s]) return true;
    return false;
}

Sublattice compute_P_T(const Graph& g) {
    if (!is_minimal(g)) throw NotMinimal("P_T defined here only for minimal systems");
    if (is_path_space_uncountable(g)) return Sublattice::zero(1);
    long long len = 0;
    for (const auto& e : g.edges())
        if (g.scc_of()[e.o] == g.scc_of()[e.t]) ++len;
    return Sublattice(1, {IntVec{Int(len)}});
}

Sublattice compute_P_T(const ProductSystem& s) {
    std::size_t k = s.rank();
    if (k == 0) throw Error("product system needs at least one component");
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < k; ++i) {
        Sublattice p = compute_P_T(s.components[i].graph);
        if (p.rank() == 0) continue;
        IntVec v(k);
        v[i] = p.basis()[0][0];
        gens.push_back(v);
    }
    return Sublattice(k, gens);
}

std::vector<std::vector<int>> enumerate_cycles(const Graph& g, std::size_t max_len) {
    std::vector<std::vector<int>> out;
    std::vector<int> w;
    std::function<void()> rec = [&]() {
        int first_t = g.edge(w.front()).t;
        int last_o = g.edge(w.back()).o;
        if (last_o == first_t && primitive_root(w).size() == w.size()) out.push_back(w);
        if (w.size() == max_len) return;
        for (int e : g.edges_into(last_o)) {
            w.push_back(e);
            rec();
            w.pop_back();
        }
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        w = {e};
        rec();
    }
    return out;
}

std::vector<EPPoint> enumerate_points(const Graph& g, std::size_t max_prefix, std::size_t max_cycle) {
    std::set<EPPoint> pts;
    for (const auto& c : enumerate_cycles(g, max_cycle)) {
        pts.insert(EPPoint(g, {}, c));
        if (max_prefix == 0) continue;
        // prefixes grow from the tail end outward
        std::vector<int> rev;
        std::function<void(int)> rec = [&](int at) {
            for (int e : g.edges_from(at)) {
                if (rev.empty() && e == c.back()) continue;
                rev.push_back(e);
                std::vector<int> p(rev.rbegin(), rev.rend());
                pts.insert(EPPoint(g, p, c));
                if (rev.size() < max_prefix) rec(g.edge(e).t);
                rev.pop_back();
            }
        };
        rec(g.edge(c.front()).t);
    }
    return {pts.begin(), pts.end()};
}

std::vector<EPPoint> all_points_countable(const Graph& g) {
    if (!is_minimal(g) || is_path_space_uncountable(g))
        throw Error("point enumeration needs a minimal graph with countable path space");
    std::size_t len = static_cast<std::size_t>(static_cast<long long>(compute_P_T(g).basis()[0][0]));
    return enumerate_points(g, static_cast<std::size_t>(g.vertex_count()), len);
}

std::optional<std::vector<int>> irrational_cycle_in_scc(const Graph& g, const EdgeLabeling& l, int scc) {
    const auto& comp = g.scc_of();
    int root = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (comp[v] == scc) {
            root = v;
            break;
        }
    if (root < 0) return std::nullopt;
    auto internal = [&](int e) { return comp[g.edge(e).o] == scc && comp[g.edge(e).t] == scc; };
    int n = g.vertex_count();
    // A[v]: root -> v, B[v]: v -> root, both in travel order
    std::vector<std::optional<std::vector<int>>> A(n), B(n);
    A[root] = std::vector<int>{};
    B[root] = std::vector<int>{};
    std::deque<int> q{root};
    while (!q.empty()) {
        int z = q.front();
        q.pop_front();
        for (int e : g.edges_from(z)) {
            int w = g.edge(e).t;
            if (!internal(e) || A[w]) continue;
            A[w] = *A[z];
            A[w]->push_back(e);
            q.push_back(w);
        }
    }
    q = {root};
    while (!q.empty()) {
        int z = q.front();
        q.pop_front();
        for (int e : g.edges_into(z)) {
            int w = g.edge(e).o;
            if (!internal(e) || B[w]) continue;
            B[w] = std::vector<int>{e};
            B[w]->insert(B[w]->end(), B[z]->begin(), B[z]->end());
            q.push_back(w);
        }
    }
    auto as_word = [](std::vector<int> travel) {
        std::reverse(travel.begin(), travel.end());
        return travel;
    };
    std::vector<std::vector<int>> walks;
    for (int v = 0; v < n; ++v) {
        if (comp[v] != scc) continue;
        std::vector<int> w = *A[v];
        w.insert(w.end(), B[v]->begin(), B[v]->end());
        if (!w.empty()) walks.push_back(w);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!internal(e)) continue;
        std::vector<int> w = *A[g.edge(e).o];
        w.push_back(e);
        w.insert(w.end(), B[g.edge(e).t]->begin(), B[g.edge(e).t]->end());
        walks.push_back(w);
    }
    for (auto& w : walks)
        if (label_sum(l, w).has_irrational_part()) return primitive_root(as_word(w));
    return std::nullopt;
}

std::vector<ExactAngle> reachable_labels(const Graph& g, const EdgeLabeling& l,
                                         const std::vector<std::pair<int, ExactAngle>>& starts, int w,
                                         std::size_t cap) {
    std::set<std::pair<int, ExactAngle>> seen;
    std::deque<std::pair<int, ExactAngle>> q;
    for (const auto& s : starts)
        if (g.reaches(s.first, w) && seen.insert(s).second) q.push_back(s);
    std::set<ExactAngle> at_w;
    while (!q.empty()) {
        auto [z, a] = q.front();
        q.pop_front();
        if (z == w) at_w.insert(a);
        for (int e : g.edges_from(z)) {
            int t = g.edge(e).t;
            if (!g.reaches(t, w)) continue;
            std::pair<int, ExactAngle> nxt{t, a + l.at(e)};
            if (seen.insert(nxt).second) {
                if (seen.size() > cap) throw Error("reachable label set exceeds the enumeration cap");
                q.push_back(nxt);
            }
        }
    }
    return {at_w.begin(), at_w.end()};
}

DensityResult forward_orbit_dense(const Graph& g, const EdgeLabeling& l, int v) {
    if (static_cast<int>(l.size()) != g.edge_count()) throw Error("labeling does not cover every edge");
    DensityResult res;
    std::map<int, std::optional<std::vector<int>>> cache;
    auto irr = [&](int scc) -> const std::optional<std::vector<int>>& {
        auto it = cache.find(scc);
        if (it == cache.end()) it = cache.emplace(scc, irrational_cycle_in_scc(g, l, scc)).first;
        return it->second;
    };
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (!g.reaches(v, w)) {
            res.witness = OrbitWitness{w, true, {}};
            return res;
        }
        std::optional<std::vector<int>> cert;
        for (int z = 0; z < g.vertex_count() && !cert; ++z) {
            if (!g.on_cycle(z) || !g.reaches(v, z) || !g.reaches(z, w)) continue;
            cert = irr(g.scc_of()[z]);
        }
        if (!cert) {
            res.witness = OrbitWitness{w, false, reachable_labels(g, l, {{v, ExactAngle()}}, w)};
            return res;
        }
        if (!res.certificate_cycle) res.certificate_cycle = cert;
    }
    res.dense = true;
    return res;
}

} // namespace drs
