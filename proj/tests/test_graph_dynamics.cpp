#include <functional>

#include "doctest.h"
#include "generators.hpp"

#include "drs/graph_dynamics.hpp"
#include "drs/oracles.hpp"

using namespace drs;

namespace {

std::vector<std::vector<int>> words_up_to(const Graph& g, std::size_t n) {
    std::vector<std::vector<int>> out, layer;
    for (int e = 0; e < g.edge_count(); ++e) layer.push_back({e});
    for (std::size_t len = 1; len <= n; ++len) {
        out.insert(out.end(), layer.begin(), layer.end());
        std::vector<std::vector<int>> next;
        for (const auto& w : layer)
            for (int e : g.edges_into(g.edge(w.back()).o)) {
                auto v = w;
                v.push_back(e);
                next.push_back(v);
            }
        layer = next;
    }
    return out;
}

std::set<long long> expected_periods(const Sublattice& pt, long long window) {
    std::set<long long> s;
    for (long long p = -window; p <= window; ++p)
        if (pt.contains(IntVec{Int(p)})) s.insert(p);
    return s;
}

} // namespace

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(gen::build(2, {{0, 0}}), GraphError);
    try {
        gen::build(3, {{0, 0}, {0, 1}});
        FAIL("expected a surjectivity error");
    } catch (const GraphError& e) {
        CHECK(std::string(e.what()).find("v2") != std::string::npos);
    }
    CHECK_THROWS_AS(Graph::from_names({"a", "a"}, {{"e", "a", "a"}}), GraphError);
    CHECK_THROWS_AS(Graph::from_names({"a"}, {{"e", "a", "a"}, {"e", "a", "a"}}), GraphError);
    CHECK_THROWS_AS(Graph::from_names({"a"}, {{"e", "a", "b"}}), GraphError);
}

TEST_CASE("shift") {
    Graph c3 = gen::cycle(3);
    // edges e0: v0->v1, e1: v1->v2, e2: v2->v0; composable words run against the arrows
    EPPoint x(c3, {}, {0, 2, 1});
    CHECK(shift(x, 3) == x);
    CHECK(shift(x, 0) == x);
    Graph tail = gen::build(3, {{0, 1}, {1, 0}, {0, 2}});
    EPPoint y(tail, {2}, {1, 0});
    CHECK(shift(y, 1) == EPPoint(tail, {}, {1, 0}));
    CHECK(y.edge_at(0) == 2);
    CHECK(point_vertex(tail, y) == 2);
}

TEST_CASE("canonical points") {
    Graph f8 = gen::figure_eight();
    CHECK(EPPoint(f8, {}, {0, 0}) == EPPoint(f8, {}, {0}));
    CHECK(EPPoint(f8, {0}, {0}) == EPPoint(f8, {}, {0}));
    CHECK(EPPoint(f8, {1}, {0, 1}) == EPPoint(f8, {}, {1, 0}));
    CHECK_FALSE(EPPoint(f8, {1}, {0}) == EPPoint(f8, {}, {0}));
    CHECK_THROWS_AS(EPPoint(f8, {}, {}), GraphError);
}

TEST_CASE("canonical form is unique on random raw points") {
    gen::Rng r(21);
    for (int i = 0; i < 30; ++i) {
        Graph g = gen::minimal_graph(r, 4);
        for (const auto& x : oracle::raw_points(g, 2, 3)) {
            EPPoint a(g, x.prefix, x.cycle);
            auto pre = x.prefix;
            pre.push_back(x.cycle.front());
            std::vector<int> rot(x.cycle.begin() + 1, x.cycle.end());
            rot.push_back(x.cycle.front());
            CHECK(EPPoint(g, pre, rot) == a);
            auto twice = x.cycle;
            twice.insert(twice.end(), x.cycle.begin(), x.cycle.end());
            CHECK(EPPoint(g, x.prefix, twice) == a);
            for (std::size_t k = 0; k < 8; ++k) CHECK(a.edge_at(k) == x.at(k));
        }
    }
}

TEST_CASE("shift is a semigroup action") {
    gen::Rng r(22);
    for (int i = 0; i < 20; ++i) {
        Graph g = gen::minimal_graph(r, 5);
        for (const auto& x : enumerate_points(g, 2, 3))
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = 0; b < 4; ++b) CHECK(shift(shift(x, a), b) == shift(x, a + b));
    }
}

TEST_CASE("labels and h tilde") {
    auto b = gen::basis2();
    Graph f8 = gen::figure_eight();
    ExactAngle beta = ExactAngle::generator(b, "b1");
    EdgeLabeling l{ExactAngle::from_ints(1, 4), beta};
    CHECK(is_zero(label_sum(l, PathWord{{}, 0})));
    CHECK(label_sum(l, PathWord{{0}, -1}) == ExactAngle::from_ints(1, 4));
    CHECK(label_sum(l, PathWord{{0, 0, 1}, -1}) == ExactAngle::from_ints(1, 2) + beta);
    PathWord mu{{0, 1}, -1};
    CHECK(is_zero(h_tilde(f8, l, mu, mu)));
    CHECK(h_tilde(f8, l, PathWord{{0}, -1}, PathWord{{}, 0}) == ExactAngle::from_ints(1, 4));
    EdgeLabeling l2{beta, ExactAngle::from_ints(1, 3)};
    CHECK(h_tilde(f8, l2, PathWord{{0}, -1}, PathWord{{1}, -1}) == beta + ExactAngle::from_ints(2, 3));
}

TEST_CASE("h tilde is a 1-cocycle") {
    gen::Rng r(23);
    auto b = gen::basis2();
    for (int i = 0; i < 5; ++i) {
        Graph g = gen::minimal_graph(r, 3);
        EdgeLabeling l = gen::labels(r, g, b, 6, 0.3);
        auto ws = words_up_to(g, 5);
        for (const auto& m1 : ws)
            for (const auto& m2 : ws) {
                if (m1.size() + m2.size() > 5 || g.edge(m1.back()).o != g.edge(m2.front()).t) continue;
                std::vector<int> m12 = m1;
                m12.insert(m12.end(), m2.begin(), m2.end());
                int origin = g.edge(m2.back()).o;
                PathWord nu{{}, origin};
                PathWord e1{{}, g.edge(m1.back()).o};
                CHECK(h_tilde(g, l, PathWord{m12, -1}, nu) == h_tilde(g, l, PathWord{m1, -1}, e1) + h_tilde(g, l, PathWord{m2, -1}, nu));
            }
    }
}

TEST_CASE("minimality examples") {
    CHECK(is_minimal(gen::cycle(4)));
    CHECK_FALSE(is_minimal(gen::two_loops()));
    CHECK(is_minimal(gen::figure_eight()));
    CHECK(oracle::minimal(gen::figure_eight(), 6));
    CHECK_FALSE(oracle::minimal(gen::two_loops(), 6));
    auto w = minimality_witness(gen::two_loops());
    REQUIRE(w);
    CHECK(w->cycle_vertex != w->unreachable);
}

TEST_CASE("minimality agrees with the cylinder oracle") {
    gen::Rng r(24);
    for (int i = 0; i < 60; ++i) {
        Graph g = gen::any_graph(r, 5);
        CHECK(is_minimal(g) == oracle::minimal(g, 5));
    }
}

TEST_CASE("path space size") {
    CHECK_FALSE(is_path_space_uncountable(gen::cycle(3)));
    CHECK(is_path_space_uncountable(gen::figure_eight()));
    CHECK_FALSE(is_path_space_uncountable(gen::build(3, {{0, 1}, {1, 0}, {0, 2}})));
}

TEST_CASE("periodicity group examples") {
    CHECK(compute_P_T(gen::cycle(3)) == Sublattice(1, {IntVec{3}}));
    CHECK(compute_P_T(gen::figure_eight()).is_zero());
    ProductSystem s;
    s.components = {{gen::cycle(3), std::nullopt}, {gen::cycle(2), std::nullopt}};
    CHECK(compute_P_T(s) == Sublattice(2, {IntVec{3, 0}, IntVec{0, 2}}));
    CHECK_THROWS_AS(compute_P_T(gen::two_loops()), NotMinimal);
    CHECK(oracle::periodicity_window(gen::cycle(3), 8) == std::set<long long>{-6, -3, 0, 3, 6});
    CHECK(oracle::periodicity_window(gen::figure_eight(), 6) == std::set<long long>{0});
}

TEST_CASE("periodicity group agrees with brute force") {
    gen::Rng r(25);
    for (int i = 0; i < 25; ++i) {
        Graph g = gen::minimal_graph(r, 5);
        CHECK(expected_periods(compute_P_T(g), 8) == oracle::periodicity_window(g, 8));
    }
}

TEST_CASE("forward orbit density examples") {
    auto b = gen::basis2();
    Graph loop = gen::single_loop();
    auto d = forward_orbit_dense(loop, {ExactAngle::generator(b, "b1")}, 0);
    CHECK(d.dense);
    REQUIRE(d.certificate_cycle);
    d = forward_orbit_dense(loop, {ExactAngle::from_ints(1, 3)}, 0);
    CHECK_FALSE(d.dense);
    REQUIRE(d.witness);
    CHECK(d.witness->cosets == std::vector<ExactAngle>{ExactAngle(), ExactAngle::from_ints(1, 3), ExactAngle::from_ints(2, 3)});
    Graph tl = gen::build(2, {{0, 0}, {1, 1}, {1, 0}});
    d = forward_orbit_dense(tl, {ExactAngle::generator(b, "b1"), ExactAngle(), ExactAngle()}, 0);
    CHECK_FALSE(d.dense);
    CHECK(d.witness->unreachable);
    CHECK(d.witness->vertex == 1);
}

TEST_CASE("forward orbit density agrees with path enumeration") {
    gen::Rng r(26);
    oracle::Rng orng(26);
    auto b = gen::basis2();
    for (int i = 0; i < 25; ++i) {
        Graph g = gen::any_graph(r, 4);
        EdgeLabeling l = gen::labels(r, g, b, 6, 0.25);
        for (int v = 0; v < g.vertex_count(); ++v) {
            auto d = forward_orbit_dense(g, l, v);
            auto exact = oracle::exact_path_labels(g, l, {{v, ExactAngle()}}, 8);
            if (d.dense) {
                CHECK(label_sum(l, *d.certificate_cycle).has_irrational_part());
                auto samples = oracle::walk_labels(g, l, {{v, 0.0}}, 4000, 200, orng);
                for (int w = 0; w < g.vertex_count(); ++w) CHECK(oracle::covers_circle(samples[w], 0.05));
            } else if (d.witness->unreachable) {
                CHECK(exact.count(d.witness->vertex) == 0);
            } else {
                std::set<ExactAngle> cos(d.witness->cosets.begin(), d.witness->cosets.end());
                for (const auto& a : exact[d.witness->vertex]) CHECK(cos.count(a) == 1);
            }
        }
    }
}

TEST_CASE("point enumeration") {
    Graph c3 = gen::cycle(3);
    auto pts = all_points_countable(c3);
    CHECK(pts.size() == 3);
    Graph tail = gen::build(3, {{0, 1}, {1, 0}, {0, 2}});
    CHECK(all_points_countable(tail).size() == 3);
    CHECK_THROWS_AS(all_points_countable(gen::figure_eight()), Error);
    auto f8 = enumerate_points(gen::figure_eight(), 1, 2);
    std::set<EPPoint> uniq(f8.begin(), f8.end());
    CHECK(uniq.size() == f8.size());
}
