#include "drs/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace drs::oracle {

namespace {

bool primitive(const std::vector<int>& w) {
    std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool per = true;
        for (std::size_t i = 0; i < n && per; ++i) per = w[i] == w[(i + d) % n];
        if (per) return false;
    }
    return true;
}

// o -> t reachability by plain BFS over the edge list
bool path_exists(const Graph& g, int from, int to) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> q{from};
    seen[from] = 1;
    while (!q.empty()) {
        int z = q.front();
        q.pop_front();
        if (z == to) return true;
        for (const auto& e : g.edges())
            if (e.o == z && !seen[e.t]) {
                seen[e.t] = 1;
                q.push_back(e.t);
            }
    }
    return false;
}

void for_each_raw_point(const Graph& g, std::size_t max_prefix, std::size_t max_cycle,
                        const std::function<bool(const RawPoint&)>& visit) {
    for (const auto& c : closed_walks(g, max_cycle)) {
        RawPoint x{{}, c};
        if (!visit(x)) return;
        std::vector<int> rev;
        bool stop = false;
        std::function<void(int)> rec = [&](int at) {
            for (int e = 0; e < g.edge_count() && !stop; ++e) {
                if (g.edge(e).o != at) continue;
                rev.push_back(e);
                RawPoint y{std::vector<int>(rev.rbegin(), rev.rend()), c};
                if (!visit(y)) stop = true;
                if (!stop && rev.size() < max_prefix) rec(g.edge(e).t);
                rev.pop_back();
            }
        };
        if (max_prefix > 0) rec(g.edge(c.front()).t);
        if (stop) return;
    }
}

bool is_arrow(const RawPoint& x, long long p) {
    long long pre = static_cast<long long>(x.prefix.size()), len = static_cast<long long>(x.cycle.size());
    long long window = pre + len + 1;
    long long lo = std::max(0LL, -p);
    for (long long n = lo; n <= lo + pre + 2 * len + std::llabs(p); ++n) {
        long long m = n + p;
        bool eq = true;
        for (long long i = 0; i < window && eq; ++i)
            eq = x.at(static_cast<std::size_t>(m + i)) == x.at(static_cast<std::size_t>(n + i));
        if (eq) return true;
    }
    return false;
}

double wrap(double v) {
    v -= std::floor(v);
    return v >= 1.0 ? 0.0 : v;
}

} // namespace

std::vector<std::vector<int>> closed_walks(const Graph& g, std::size_t max_len) {
    std::vector<std::vector<int>> out;
    std::vector<int> w;
    std::function<void()> rec = [&]() {
        int first_t = g.edge(w.front()).t;
        int last_o = g.edge(w.back()).o;
        if (last_o == first_t && primitive(w)) out.push_back(w);
        if (w.size() >= max_len) return;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).t != last_o) continue;
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

std::vector<RawPoint> raw_points(const Graph& g, std::size_t max_prefix, std::size_t max_cycle) {
    std::vector<RawPoint> out;
    for_each_raw_point(g, max_prefix, max_cycle, [&](const RawPoint& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

bool minimal(const Graph& g, int depth) {
    // cylinder words of length 1..depth
    std::vector<std::vector<int>> words;
    std::vector<std::vector<int>> layer;
    for (int e = 0; e < g.edge_count(); ++e) layer.push_back({e});
    for (int len = 1; len <= depth && !layer.empty(); ++len) {
        words.insert(words.end(), layer.begin(), layer.end());
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int e = 0; e < g.edge_count(); ++e)
                if (g.edge(e).t == g.edge(w.back()).o) {
                    auto v = w;
                    v.push_back(e);
                    next.push_back(std::move(v));
                }
        layer = std::move(next);
    }
    auto reps = closed_walks(g, static_cast<std::size_t>(g.vertex_count()));
    for (const auto& c : reps) {
        RawPoint x{{}, c};
        for (const auto& mu : words) {
            bool meets = false;
            for (std::size_t n = 0; n < c.size() && !meets; ++n) {
                for (std::size_t k = 0; k <= mu.size() && !meets; ++k) {
                    if (k == mu.size()) {
                        meets = path_exists(g, g.edge(x.at(n)).t, g.edge(mu.back()).o);
                    } else {
                        bool eq = true;
                        for (std::size_t i = k; i < mu.size() && eq; ++i) eq = mu[i] == x.at(n + i - k);
                        meets = eq;
                    }
                }
            }
            if (!meets) return false;
        }
    }
    return true;
}

std::set<long long> periodicity_window(const Graph& g, long long window) {
    std::set<long long> cand;
    for (long long p = -window; p <= window; ++p) cand.insert(p);
    auto visit = [&](const RawPoint& x) {
        for (auto it = cand.begin(); it != cand.end();) {
            if (!is_arrow(x, *it))
                it = cand.erase(it);
            else
                ++it;
        }
        return cand.size() > 1;
    };
    for_each_raw_point(g, 0, 12, visit);
    if (cand.size() > 1) for_each_raw_point(g, 6, 6, visit);
    return cand;
}

double circle_distance(double a, double b) {
    double d = std::fabs(wrap(a) - wrap(b));
    return std::min(d, 1.0 - d);
}

std::vector<double> sample_circle_subgroup(const std::vector<ExactAngle>& gens, long long samples, Rng& rng) {
    std::uniform_int_distribution<long long> coef(-1000, 1000);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (long long s = 0; s < samples; ++s) {
        long double v = 0;
        for (const auto& g : gens) v += static_cast<long double>(coef(rng)) * g.approx();
        out.push_back(wrap(static_cast<double>(v - std::floor(v))));
    }
    return out;
}

std::vector<std::vector<double>> sample_torus_subgroup(const std::vector<AngleVector>& gens, std::size_t dim,
                                                       long long samples, Rng& rng) {
    std::uniform_int_distribution<long long> coef(-1000, 1000);
    std::vector<std::vector<double>> out;
    for (long long s = 0; s < samples; ++s) {
        std::vector<long double> v(dim, 0);
        for (const auto& g : gens) {
            long long k = coef(rng);
            for (std::size_t j = 0; j < dim; ++j) v[j] += static_cast<long double>(k) * g[j].approx();
        }
        std::vector<double> w(dim);
        for (std::size_t j = 0; j < dim; ++j) w[j] = wrap(static_cast<double>(v[j] - std::floor(v[j])));
        out.push_back(std::move(w));
    }
    return out;
}

bool covers_circle(const std::vector<double>& samples, double eps) {
    if (samples.empty()) return false;
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end());
    int targets = static_cast<int>(std::ceil(1.0 / eps));
    for (int j = 0; j < targets; ++j) {
        double t = j * eps;
        auto it = std::lower_bound(s.begin(), s.end(), t);
        double best = 1.0;
        if (it != s.end()) best = std::min(best, circle_distance(*it, t));
        if (it != s.begin()) best = std::min(best, circle_distance(*(it - 1), t));
        best = std::min({best, circle_distance(s.front(), t), circle_distance(s.back(), t)});
        if (best > eps) return false;
    }
    return true;
}

bool covers_torus(const std::vector<std::vector<double>>& samples, std::size_t dim, double eps) {
    if (dim == 0) return true;
    if (samples.empty()) return false;
    int per = static_cast<int>(std::ceil(1.0 / eps));
    std::size_t total = 1;
    for (std::size_t j = 0; j < dim; ++j) total *= static_cast<std::size_t>(per);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> t(dim);
        std::size_t r = idx;
        for (std::size_t j = 0; j < dim; ++j) {
            t[j] = static_cast<double>(r % per) * eps;
            r /= per;
        }
        bool hit = false;
        for (const auto& s : samples) {
            bool close = true;
            for (std::size_t j = 0; j < dim && close; ++j) close = circle_distance(s[j], t[j]) <= eps;
            if (close) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

std::map<int, std::vector<double>> walk_labels(const Graph& g, const EdgeLabeling& l,
                                               const std::vector<std::pair<int, double>>& starts, long long samples,
                                               int max_len, Rng& rng) {
    std::map<int, std::vector<double>> out;
    if (starts.empty()) return out;
    std::vector<double> lab(l.size());
    for (std::size_t e = 0; e < l.size(); ++e) lab[e] = l[e].approx();
    // live vertices admit infinite walks; peel off vertices with no edge into the remaining set
    std::vector<char> live(g.vertex_count(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (int z = 0; z < g.vertex_count(); ++z) {
            if (!live[z]) continue;
            bool has = false;
            for (int e = 0; e < g.edge_count(); ++e)
                if (g.edge(e).o == z && live[g.edge(e).t]) has = true;
            if (!has) live[z] = 0, changed = true;
        }
    }
    std::vector<std::vector<int>> onward(g.vertex_count()), dead(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) (live[g.edge(e).t] ? onward : dead)[g.edge(e).o].push_back(e);
    // dead tails are finite and acyclic, record them exhaustively
    std::function<void(int, double)> tail = [&](int z, double a) {
        out[z].push_back(wrap(a));
        for (int e : dead[z]) tail(g.edge(e).t, a + lab[e]);
        for (int e : onward[z]) tail(g.edge(e).t, a + lab[e]);
    };
    // mutual reachability by plain search; each walk draws how strongly it prefers to stay put
    std::vector<std::vector<char>> reach(g.vertex_count(), std::vector<char>(g.vertex_count(), 0));
    for (int z = 0; z < g.vertex_count(); ++z) {
        std::vector<int> stack{z};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e = 0; e < g.edge_count(); ++e) {
                int t = g.edge(e).t;
                if (g.edge(e).o == u && !reach[z][t]) reach[z][t] = 1, stack.push_back(t);
            }
        }
    }
    std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
    std::uniform_int_distribution<int> pick_len(0, max_len);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long long s = 0; s < samples; ++s) {
        auto [z, a] = starts[pick_start(rng)];
        if (!live[z]) {
            tail(z, a);
            continue;
        }
        int len = pick_len(rng);
        double stay = unit(rng);
        out[z].push_back(wrap(a));
        for (int i = 0; i < len; ++i) {
            for (int e : dead[z]) tail(g.edge(e).t, a + lab[e]);
            std::vector<int> inside, leaving;
            for (int e : onward[z]) (reach[g.edge(e).t][z] ? inside : leaving).push_back(e);
            const auto& pool = inside.empty() || (!leaving.empty() && unit(rng) >= stay) ? leaving : inside;
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            int e = pool[pick(rng)];
            a += lab[e];
            z = g.edge(e).t;
            out[z].push_back(wrap(a));
        }
    }
    return out;
}

std::map<int, std::set<ExactAngle>> exact_path_labels(const Graph& g, const EdgeLabeling& l,
                                                      const std::vector<std::pair<int, ExactAngle>>& starts,
                                                      int max_len) {
    std::map<int, std::set<ExactAngle>> out;
    std::set<std::pair<int, ExactAngle>> layer(starts.begin(), starts.end()), seen = layer;
    for (int len = 0; len <= max_len && !layer.empty(); ++len) {
        std::set<std::pair<int, ExactAngle>> next;
        for (const auto& [z, a] : layer) {
            out[z].insert(a);
            for (int e = 0; e < g.edge_count(); ++e) {
                if (g.edge(e).o != z) continue;
                std::pair<int, ExactAngle> s{g.edge(e).t, a + l[e]};
                if (seen.insert(s).second) next.insert(s);
            }
        }
        layer = std::move(next);
    }
    return out;
}

} // namespace drs::oracle
