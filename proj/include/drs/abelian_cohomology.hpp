#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "drs/exact_circle.hpp"
#include "drs/integer_lattice.hpp"

namespace drs {

using Vec = std::vector<long long>;

struct OutOfBox : Error {
    using Error::Error;
};
struct NotCohomologous : Error {
    using Error::Error;
};

// omega(p,q) = sum_ij p_i q_j M_ij
class Bicharacter {
public:
    Bicharacter() = default;
    explicit Bicharacter(std::size_t rank);
    explicit Bicharacter(std::vector<AngleVector> pairing);

    std::size_t rank() const { return m_.size(); }
    const std::vector<AngleVector>& pairing() const { return m_; }
    const ExactAngle& at(std::size_t i, std::size_t j) const { return m_[i][j]; }
    ExactAngle& at(std::size_t i, std::size_t j) { return m_[i][j]; }

    ExactAngle eval(const Vec& p, const Vec& q) const;
    ExactAngle eval(const IntVec& p, const IntVec& q) const;

    Bicharacter transpose() const;
    Bicharacter operator-() const;
    friend Bicharacter operator+(const Bicharacter& a, const Bicharacter& b);
    friend Bicharacter operator-(const Bicharacter& a, const Bicharacter& b) { return a + (-b); }
    // G has the new generators as columns: returns G^T M G
    Bicharacter pullback(const IntMatrix& g) const;
    bool is_zero() const;
    bool operator==(const Bicharacter& o) const = default;

private:
    std::vector<AngleVector> m_;
};

// values on the box |v|_inf <= radius, zero elsewhere in the box by default
class OneCochain {
public:
    OneCochain() = default;
    OneCochain(std::size_t rank, long long radius) : rank_(rank), radius_(radius) {}

    std::size_t rank() const { return rank_; }
    long long radius() const { return radius_; }
    bool in_box(const Vec& v) const;
    ExactAngle value(const Vec& v) const;
    void set(const Vec& v, const ExactAngle& a);
    const std::map<Vec, ExactAngle>& values() const { return values_; }
    OneCochain operator-() const;

private:
    std::size_t rank_ = 0;
    long long radius_ = 0;
    std::map<Vec, ExactAngle> values_;
};

class Cocycle2 {
public:
    Cocycle2() = default;
    explicit Cocycle2(Bicharacter base, std::optional<OneCochain> cochain = std::nullopt);

    std::size_t rank() const { return base_.rank(); }
    const Bicharacter& base() const { return base_; }
    const std::optional<OneCochain>& cochain() const { return cochain_; }
    ExactAngle eval(const Vec& p, const Vec& q) const;

private:
    Bicharacter base_;
    std::optional<OneCochain> cochain_;
};

// quotient Z^l / Z presented on SNF-adapted generators
struct QuotientBicharacter {
    std::vector<Int> orders; // 0 marks a free generator
    Bicharacter pairing;     // on generator coordinates
    IntMatrix projection;    // l x g, class coordinates c = p * projection

    std::size_t generators() const { return orders.size(); }
    Vec reduce(const Vec& p) const;
    ExactAngle eval(const Vec& p, const Vec& q) const; // ambient coordinates
    ExactAngle eval_classes(const Vec& c1, const Vec& c2) const;
};

struct Normalized {
    Bicharacter omega_prime;
    Sublattice centre;
    QuotientBicharacter omega_tilde;
};

ExactAngle eval_cocycle(const Cocycle2& s, const Vec& p, const Vec& q);
Cocycle2 star(const Cocycle2& s);
Bicharacter antisymmetrize(const Cocycle2& s);
Bicharacter bicharacter_from_cocycle(const Cocycle2& s);
bool is_cohomologous(const Cocycle2& a, const Cocycle2& b);
Sublattice centre(const Bicharacter& w);
Normalized vanish_on_centre_normalize(const Bicharacter& w);
Cocycle2 coboundary(const OneCochain& b);
OneCochain flatten_to_constant(const Cocycle2& rho, const Bicharacter& w, long long radius);
bool twisted_group_algebra_simple(const QuotientBicharacter& w);

using GroupFn = std::map<Vec, std::complex<double>>;
std::complex<double> trace_canonical(const GroupFn& f);
GroupFn twisted_group_convolve(const GroupFn& f, const GroupFn& g, const Bicharacter& w);

// all integer vectors with |v|_inf <= r
std::vector<Vec> box_points(std::size_t rank, long long r);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec neg(const Vec& a);
bool is_zero_vec(const Vec& a);
std::complex<double> phase(const ExactAngle& a);

} // namespace drs
