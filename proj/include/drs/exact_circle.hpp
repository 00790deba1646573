#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace drs {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompatibleBasis : Error {
    using Error::Error;
};

struct AngleParseError : Error {
    using Error::Error;
};

// Formal irrational generators, each with a numeric value in turns.
class IrrationalBasis {
public:
    IrrationalBasis() = default;
    explicit IrrationalBasis(std::vector<std::pair<std::string, double>> gens);

    const std::vector<std::pair<std::string, double>>& generators() const { return gens_; }
    bool contains(std::string_view sym) const;
    double value(std::string_view sym) const;
    std::size_t size() const { return gens_.size(); }

    bool operator==(const IrrationalBasis& o) const { return gens_ == o.gens_; }

private:
    std::vector<std::pair<std::string, double>> gens_;
};

using BasisPtr = std::shared_ptr<const IrrationalBasis>;

// Element of R/Z in turns: rational part in [0,1) plus sum of c_s * s.
class ExactAngle {
public:
    ExactAngle() = default;

    static ExactAngle from_rational(const Rational& q);
    static ExactAngle from_ints(long long num, long long den);
    static ExactAngle generator(BasisPtr basis, const std::string& sym, const Rational& coeff = 1);

    const Rational& rational_part() const { return q_; }
    const std::map<std::string, Rational>& irrational_coeffs() const { return coeffs_; }
    const BasisPtr& basis() const { return basis_; }

    bool is_zero() const { return q_ == 0 && coeffs_.empty(); }
    bool has_irrational_part() const { return !coeffs_.empty(); }

    // value mod 1 using the basis approximations
    double approx() const;

    ExactAngle operator-() const;
    ExactAngle& operator+=(const ExactAngle& o);
    ExactAngle& operator-=(const ExactAngle& o);
    friend ExactAngle operator+(ExactAngle a, const ExactAngle& b) { return a += b; }
    friend ExactAngle operator-(ExactAngle a, const ExactAngle& b) { return a -= b; }
    ExactAngle scaled(const Int& n) const;

    // basis pointer is context, not part of the value
    bool operator==(const ExactAngle& o) const { return q_ == o.q_ && coeffs_ == o.coeffs_; }
    bool operator<(const ExactAngle& o) const;

    std::string str() const;

private:
    void normalize();
    void merge_basis(const ExactAngle& o);

    Rational q_{0};
    std::map<std::string, Rational> coeffs_;
    BasisPtr basis_;
};

using AngleVector = std::vector<ExactAngle>;

ExactAngle angle_add(const ExactAngle& a, const ExactAngle& b);
ExactAngle angle_scale(const Int& n, const ExactAngle& a);
inline bool is_zero(const ExactAngle& a) { return a.is_zero(); }
inline double approx(const ExactAngle& a) { return a.approx(); }

ExactAngle parse_angle(std::string_view text, const BasisPtr& basis = nullptr);
std::string format_angle(const ExactAngle& a);

// frac part of a rational, in [0,1)
Rational frac(const Rational& q);
std::string format_rational(const Rational& q);

} // namespace drs
