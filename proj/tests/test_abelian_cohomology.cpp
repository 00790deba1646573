#include "doctest.h"
#include "generators.hpp"

#include "drs/abelian_cohomology.hpp"

using namespace drs;

namespace {

ExactAngle q(long long a, long long b) { return ExactAngle::from_ints(a, b); }

Bicharacter upper(const ExactAngle& t) {
    Bicharacter w(2);
    w.at(0, 1) = t;
    return w;
}

const Vec e1{1, 0}, e2{0, 1};

ExactAngle skew(const Cocycle2& s, const Vec& p, const Vec& r) { return eval_cocycle(s, p, r) - eval_cocycle(s, r, p); }

// brute-force centre membership against the generators
bool central(const Bicharacter& w, const Vec& a) {
    for (std::size_t i = 0; i < w.rank(); ++i) {
        Vec e(w.rank(), 0);
        e[i] = 1;
        if (!is_zero(w.eval(a, e) - w.eval(e, a))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("cocycle evaluation") {
    Cocycle2 triv(Bicharacter(2));
    CHECK(is_zero(eval_cocycle(triv, {3, -1}, {2, 5})));
    Cocycle2 s(upper(q(1, 3)));
    CHECK(eval_cocycle(s, e1, e2) == q(1, 3));
    CHECK(is_zero(eval_cocycle(s, e2, e1)));
}

TEST_CASE("star") {
    Cocycle2 s(upper(q(1, 3)));
    Cocycle2 st = star(s);
    CHECK(is_zero(eval_cocycle(st, e1, e2)));
    CHECK(eval_cocycle(st, e2, e1) == q(2, 3));
    CHECK(is_zero(eval_cocycle(star(Cocycle2(Bicharacter(2))), e1, e2)));
    gen::Rng r(5);
    for (const auto& p : box_points(2, 2))
        for (const auto& v : box_points(2, 2)) CHECK(eval_cocycle(star(st), p, v) == eval_cocycle(s, p, v));
}

TEST_CASE("antisymmetrize") {
    gen::Rng r(6);
    CHECK(antisymmetrize(coboundary(gen::cochain(r, 2, 3, 7))).is_zero());
    Cocycle2 s(upper(q(1, 5)));
    Bicharacter a = antisymmetrize(s);
    CHECK(a.eval(e1, e2) == q(1, 5));
    CHECK(a.eval(e2, e1) == q(4, 5));
    for (int i = 0; i < 20; ++i) {
        Cocycle2 c(gen::bichar(r, 3, 12), gen::cochain(r, 3, 2, 12));
        Bicharacter m = antisymmetrize(c);
        CHECK(m == -m.transpose());
        for (const auto& p : box_points(3, 1))
            for (const auto& v : box_points(3, 1)) CHECK(m.eval(p, v) == skew(c, p, v));
    }
}

TEST_CASE("bicharacter from cocycle") {
    CHECK(bicharacter_from_cocycle(Cocycle2(Bicharacter(3))).is_zero());
    Cocycle2 s(upper(q(1, 3)));
    Bicharacter w = bicharacter_from_cocycle(s);
    CHECK(w.eval(e2, e1) == -q(1, 3));
    CHECK(is_zero(w.eval(e1, e2)));
    CHECK(is_zero(w.eval(e1, e1)));
    CHECK(w.eval(e1, e2) - w.eval(e2, e1) == q(1, 3));
    gen::Rng r(7);
    Cocycle2 twisted(upper(q(1, 3)), gen::cochain(r, 2, 3, 9));
    CHECK(bicharacter_from_cocycle(twisted) == w);
}

TEST_CASE("cohomology classes") {
    gen::Rng r(8);
    Cocycle2 s(upper(q(1, 3)));
    CHECK(is_cohomologous(s, Cocycle2(upper(q(1, 3)), gen::cochain(r, 2, 2, 5))));
    CHECK_FALSE(is_cohomologous(s, Cocycle2(upper(q(1, 4)))));
    CHECK(is_cohomologous(s, Cocycle2(bicharacter_from_cocycle(s))));
}

TEST_CASE("centre") {
    Bicharacter half = upper(q(1, 2));
    CHECK(centre(half) == Sublattice(2, {IntVec{2, 0}, IntVec{0, 2}}));
    for (const auto& a : box_points(2, 8)) CHECK(centre(half).contains(to_intvec(a)) == (a[0] % 2 == 0 && a[1] % 2 == 0));
    auto b = gen::basis2();
    CHECK(centre(upper(ExactAngle::generator(b, "b1"))).is_zero());
    CHECK(centre(Bicharacter(3)) == Sublattice::full(3));
}

TEST_CASE("centre agrees with brute force") {
    gen::Rng r(9);
    auto b = gen::basis2();
    for (int i = 0; i < 40; ++i) {
        std::size_t l = gen::uniform(r, 1, 3);
        Bicharacter w = gen::bichar(r, l, 6, b, 1);
        Sublattice z = centre(w);
        for (const auto& v : z.basis()) CHECK(central(w, to_ll(v)));
        for (const auto& a : box_points(l, l == 3 ? 3 : 6)) CHECK(z.contains(to_intvec(a)) == central(w, a));
    }
}

TEST_CASE("vanish on centre") {
    Normalized t = vanish_on_centre_normalize(Bicharacter(2));
    CHECK(t.omega_prime.is_zero());
    CHECK(t.centre == Sublattice::full(2));
    for (const auto& o : t.omega_tilde.orders) CHECK(o == 1);

    Normalized h = vanish_on_centre_normalize(upper(q(1, 2)));
    CHECK(h.centre == Sublattice(2, {IntVec{2, 0}, IntVec{0, 2}}));
    CHECK(h.omega_tilde.orders == std::vector<Int>{2, 2});
    const auto& qt = h.omega_tilde;
    Vec c1(qt.generators(), 0), c2(qt.generators(), 0);
    c1[0] = 1;
    c2[1] = 1;
    CHECK(qt.eval_classes(c1, c2) - qt.eval_classes(c2, c1) == q(1, 2));
    for (const auto& p : box_points(2, 6))
        for (const auto& v : box_points(2, 6)) CHECK(h.omega_prime.eval(p, v) == qt.eval(p, v));
    for (const auto& z : h.centre.basis())
        for (const auto& p : box_points(2, 6)) {
            CHECK(is_zero(h.omega_prime.eval(to_ll(z), p)));
            CHECK(is_zero(h.omega_prime.eval(p, to_ll(z))));
        }

    auto b = gen::basis2();
    Normalized irr = vanish_on_centre_normalize(upper(ExactAngle::generator(b, "b1")));
    CHECK(irr.centre.is_zero());
    for (const auto& p : box_points(2, 3))
        for (const auto& v : box_points(2, 3)) CHECK(irr.omega_prime.eval(p, v) == irr.omega_tilde.eval(p, v));
}

TEST_CASE("vanish on centre, random pairings") {
    gen::Rng r(10);
    auto b = gen::basis2();
    for (int i = 0; i < 30; ++i) {
        std::size_t l = gen::uniform(r, 1, 3);
        Bicharacter w = gen::bichar(r, l, 6, b, 1);
        Normalized nz = vanish_on_centre_normalize(w);
        CHECK(nz.centre == centre(w));
        CHECK(is_cohomologous(Cocycle2(w), Cocycle2(nz.omega_prime)));
        long long box = l == 3 ? 2 : 4;
        for (const auto& z : nz.centre.basis())
            for (const auto& p : box_points(l, box)) {
                CHECK(is_zero(nz.omega_prime.eval(to_ll(z), p)));
                CHECK(is_zero(nz.omega_prime.eval(p, to_ll(z))));
            }
        for (const auto& p : box_points(l, box))
            for (const auto& v : box_points(l, box)) CHECK(nz.omega_prime.eval(p, v) == nz.omega_tilde.eval(p, v));
    }
}

TEST_CASE("coboundaries") {
    gen::Rng r(14);
    CHECK(is_zero(eval_cocycle(coboundary(OneCochain(2, 3)), {1, 1}, {1, -2})));
    // a homomorphism has trivial coboundary
    OneCochain hom(2, 3);
    for (const auto& v : box_points(2, 3)) hom.set(v, q(v[0], 5) + q(2 * v[1], 7));
    Cocycle2 dh = coboundary(hom);
    for (const auto& p : box_points(2, 1))
        for (const auto& v : box_points(2, 1)) CHECK(is_zero(eval_cocycle(dh, p, v)));
    // rank 1, b(n) = n(n-1)/2 * theta
    OneCochain tri(1, 10);
    for (long long n = -10; n <= 10; ++n) tri.set({n}, q(n * (n - 1) / 2, 7));
    Cocycle2 dt = coboundary(tri);
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b)
            for (long long c = -3; c <= 3; ++c) {
                ExactAngle lhs = eval_cocycle(dt, {a}, {b}) + eval_cocycle(dt, {a + b}, {c});
                ExactAngle rhs = eval_cocycle(dt, {b}, {c}) + eval_cocycle(dt, {a}, {b + c});
                CHECK(lhs == rhs);
            }
    CHECK_THROWS_AS(tri.value({11}), OutOfBox);
}

TEST_CASE("cocycle identity on random presented cocycles") {
    gen::Rng r(15);
    for (int i = 0; i < 10; ++i) {
        std::size_t l = gen::uniform(r, 1, 3);
        Cocycle2 s(gen::bichar(r, l, 12), gen::cochain(r, l, 4, 12));
        for (int t = 0; t < 1000; ++t) {
            Vec a = gen::vec(r, l, 1), b = gen::vec(r, l, 1), c = gen::vec(r, l, 1);
            ExactAngle lhs = eval_cocycle(s, a, b) + eval_cocycle(s, add(a, b), c);
            ExactAngle rhs = eval_cocycle(s, b, c) + eval_cocycle(s, a, add(b, c));
            CHECK(lhs == rhs);
        }
        CHECK(is_zero(eval_cocycle(s, Vec(l, 0), gen::vec(r, l, 2))));
        CHECK(is_zero(eval_cocycle(s, gen::vec(r, l, 2), Vec(l, 0))));
    }
}

TEST_CASE("flatten to constant") {
    Bicharacter w = upper(q(1, 3));
    OneCochain z = flatten_to_constant(Cocycle2(w), w, 4);
    for (const auto& v : box_points(2, 4)) CHECK(is_zero(z.value(v)));

    Bicharacter zero1(1);
    OneCochain b0(1, 6);
    for (long long n = -6; n <= 6; ++n) b0.set({n}, q(n * (n - 1) / 2, 5));
    OneCochain b = flatten_to_constant(Cocycle2(zero1, b0), zero1, 6);
    for (long long n = -6; n <= 6; ++n) CHECK(b.value({n}) == b0.value({n}));

    gen::Rng r(16);
    for (int i = 0; i < 20; ++i) {
        Bicharacter base = bicharacter_from_cocycle(Cocycle2(gen::bichar(r, 2, 12)));
        OneCochain planted = gen::cochain(r, 2, 4, 12);
        planted.set(e1, ExactAngle());
        planted.set(e2, ExactAngle());
        Cocycle2 rho(base, planted);
        Bicharacter om = bicharacter_from_cocycle(rho);
        OneCochain got = flatten_to_constant(rho, om, 4);
        Cocycle2 d = coboundary(got);
        for (const auto& p : box_points(2, 2))
            for (const auto& v : box_points(2, 2)) CHECK(eval_cocycle(d, p, v) == eval_cocycle(rho, p, v) - om.eval(p, v));
        CHECK(om == base);
        for (const auto& v : box_points(2, 4)) CHECK(got.value(v) == planted.value(v));
    }
    CHECK_THROWS_AS(flatten_to_constant(Cocycle2(upper(q(1, 3))), upper(q(1, 4)), 3), NotCohomologous);
}

TEST_CASE("twisted group algebra simplicity") {
    auto b = gen::basis2();
    CHECK(twisted_group_algebra_simple(vanish_on_centre_normalize(upper(ExactAngle::generator(b, "b1"))).omega_tilde));
    CHECK_FALSE(twisted_group_algebra_simple(QuotientBicharacter{{0, 0}, Bicharacter(2), IntMatrix::identity(2)}));
    CHECK(twisted_group_algebra_simple(QuotientBicharacter{{2, 2}, upper(q(1, 2)), IntMatrix::identity(2)}));
    CHECK_FALSE(twisted_group_algebra_simple(QuotientBicharacter{{2, 2}, Bicharacter(2), IntMatrix::identity(2)}));
    // the quotient by the centre always carries a simple algebra
    gen::Rng r(17);
    for (int i = 0; i < 20; ++i) CHECK(twisted_group_algebra_simple(vanish_on_centre_normalize(gen::bichar(r, 2, 6)).omega_tilde));
}

TEST_CASE("canonical trace") {
    GroupFn d0{{{0, 0}, 1.0}};
    CHECK(trace_canonical(d0) == std::complex<double>(1.0));
    CHECK(trace_canonical(GroupFn{{{1, 0}, 1.0}}) == std::complex<double>(0.0));
    CHECK(trace_canonical(GroupFn{{{0, 0}, 2.0}, {{1, 0}, 3.0}}) == std::complex<double>(2.0));

    gen::Rng r(18);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 20; ++i) {
        Bicharacter w = gen::bichar(r, 2, 12, gen::basis2(), 2);
        GroupFn f, g;
        for (int k = 0; k < 8; ++k) {
            f[gen::vec(r, 2, 4)] = {u(r), u(r)};
            g[gen::vec(r, 2, 4)] = {u(r), u(r)};
        }
        auto a = trace_canonical(twisted_group_convolve(f, g, w));
        auto c = trace_canonical(twisted_group_convolve(g, f, w));
        CHECK(std::abs(a - c) < 1e-12);
    }
}
