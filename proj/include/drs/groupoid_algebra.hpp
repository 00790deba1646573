#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "drs/abelian_cohomology.hpp"
#include "drs/graph_dynamics.hpp"

namespace drs {

struct NotComposable : Error {
    using Error::Error;
};

using Point = std::vector<EPPoint>;

// (x, m - n, y) with T^m x = T^n y; certificate (m, n) is componentwise minimal
struct GroupoidElem {
    Point x;
    Vec p;
    Point y;
    Vec m, n;

    bool operator==(const GroupoidElem& o) const { return x == o.x && p == o.p && y == o.y; }
    bool operator<(const GroupoidElem& o) const {
        if (x != o.x) return x < o.x;
        if (p != o.p) return p < o.p;
        return y < o.y;
    }
};

std::optional<GroupoidElem> make_elem(const ProductSystem& s, const Point& x, const Vec& p, const Point& y);
GroupoidElem unit(const ProductSystem& s, const Point& x);
// some element from y to x, if the two points have equal tails up to shift
std::optional<GroupoidElem> find_arrow(const ProductSystem& s, const Point& x, const Point& y);
GroupoidElem compose(const ProductSystem& s, const GroupoidElem& a, const GroupoidElem& b);
GroupoidElem inverse(const GroupoidElem& a);
inline const Vec& degree(const GroupoidElem& a) { return a.p; }
inline const Point& range(const GroupoidElem& a) { return a.x; }
inline const Point& source(const GroupoidElem& a) { return a.y; }
bool in_isotropy_interior(const ProductSystem& s, const GroupoidElem& a);
bool in_isotropy_interior(const Sublattice& pt, const GroupoidElem& a);

class CocycleSpec;

struct DegreeCocycle {
    Cocycle2 rho;
};
// c_h on (graph) x (single loop); labels live on the first component
struct CHCocycle {
    EdgeLabeling labels;
};
// base - delta(b) with b supported on the isotropy interior, in P_T coordinates
struct CorrectedCocycle {
    std::shared_ptr<const CocycleSpec> base;
    Sublattice pt;
    OneCochain b;
};

class CocycleSpec {
public:
    using Variant = std::variant<DegreeCocycle, CHCocycle, CorrectedCocycle>;

    CocycleSpec() : v_(DegreeCocycle{}) {}
    CocycleSpec(Variant v) : v_(std::move(v)) {}
    static CocycleSpec degree(Cocycle2 rho) { return CocycleSpec(DegreeCocycle{std::move(rho)}); }
    static CocycleSpec ch(EdgeLabeling l) { return CocycleSpec(CHCocycle{std::move(l)}); }
    static CocycleSpec trivial(std::size_t rank) { return degree(Cocycle2(Bicharacter(rank))); }

    const Variant& variant() const { return v_; }
    bool is_degree() const { return std::holds_alternative<DegreeCocycle>(v_); }
    bool is_ch() const { return std::holds_alternative<CHCocycle>(v_); }
    bool is_trivial() const;

private:
    Variant v_;
};

ExactAngle eval_sigma(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& a, const GroupoidElem& b);

// h~ of the first component of a, read off its certificate
ExactAngle h_tilde_elem(const Graph& g, const EdgeLabeling& l, const GroupoidElem& a);

ExactAngle tau(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& g, const Vec& p, const Sublattice& pt);

std::pair<Point, AngleVector> theta_apply(const ProductSystem& s, const CocycleSpec& sigma, const GroupoidElem& g,
                                          const Point& basepoint, const AngleVector& chi, const std::vector<Vec>& zbasis,
                                          const Sublattice& pt);

// (graph, labels) x (single loop) as a rank-2 system
ProductSystem crossed_product_system(const Graph& g, const EdgeLabeling& l);
Graph loop_graph();
GroupoidElem product_with_Z(const ProductSystem& rank2, const GroupoidElem& a, long long n);

using TwistedFn = std::map<GroupoidElem, std::complex<double>>;

TwistedFn convolve(const ProductSystem& s, const TwistedFn& f, const TwistedFn& g, const CocycleSpec& sigma);
TwistedFn involution(const ProductSystem& s, const TwistedFn& f, const CocycleSpec& sigma);
TwistedFn conditional_expectation(const TwistedFn& f, const Sublattice& pt);
TwistedFn conditional_expectation(const TwistedFn& f, const ProductSystem& s);

// all elements between the given points with |p_i| <= max_degree
std::vector<GroupoidElem> enumerate_elements(const ProductSystem& s, const std::vector<Point>& points, long long max_degree);
// all tuples of per-component points with |prefix| <= max_prefix, |cycle| <= max_cycle
std::vector<Point> enumerate_product_points(const ProductSystem& s, std::size_t max_prefix, std::size_t max_cycle);

} // namespace drs
