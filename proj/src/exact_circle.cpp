#include "drs/exact_circle.hpp"

#include <cctype>
#include <cmath>
#include <set>

namespace drs {

IrrationalBasis::IrrationalBasis(std::vector<std::pair<std::string, double>> gens) : gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto& [name, v] : gens_) {
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
            throw Error("bad irrational symbol name '" + name + "'");
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw Error("bad irrational symbol name '" + name + "'");
        if (!seen.insert(name).second) throw Error("duplicate irrational symbol '" + name + "'");
        if (!std::isfinite(v)) throw Error("non-finite value for symbol '" + name + "'");
    }
}

bool IrrationalBasis::contains(std::string_view sym) const {
    for (const auto& g : gens_)
        if (g.first == sym) return true;
    return false;
}

double IrrationalBasis::value(std::string_view sym) const {
    for (const auto& g : gens_)
        if (g.first == sym) return g.second;
    throw Error("unknown irrational symbol '" + std::string(sym) + "'");
}

Rational frac(const Rational& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);
    Int r = n % d;
    if (r < 0) r += d;
    return Rational(r, d);
}

std::string format_rational(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

ExactAngle ExactAngle::from_rational(const Rational& q) {
    ExactAngle a;
    a.q_ = frac(q);
    return a;
}

ExactAngle ExactAngle::from_ints(long long num, long long den) {
    if (den == 0) throw Error("zero denominator");
    return from_rational(Rational(Int(num), Int(den)));
}

ExactAngle ExactAngle::generator(BasisPtr basis, const std::string& sym, const Rational& coeff) {
    if (!basis || !basis->contains(sym)) throw Error("unknown irrational symbol '" + sym + "'");
    ExactAngle a;
    a.basis_ = std::move(basis);
    if (coeff != 0) a.coeffs_[sym] = coeff;
    return a;
}

void ExactAngle::normalize() {
    q_ = frac(q_);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

void ExactAngle::merge_basis(const ExactAngle& o) {
    if (!o.basis_) return;
    if (!basis_) {
        basis_ = o.basis_;
        return;
    }
    if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
        throw IncompatibleBasis("angles over different irrational bases");
}

double ExactAngle::approx() const {
    long double v = q_.convert_to<long double>();
    for (const auto& [sym, c] : coeffs_) {
        if (!basis_) throw Error("irrational angle without basis");
        v += c.convert_to<long double>() * static_cast<long double>(basis_->value(sym));
    }
    v -= std::floor(v);
    if (v >= 1.0L) v = 0.0L;
    return static_cast<double>(v);
}

ExactAngle ExactAngle::operator-() const {
    ExactAngle r = *this;
    r.q_ = -r.q_;
    for (auto& kv : r.coeffs_) kv.second = -kv.second;
    r.normalize();
    return r;
}

ExactAngle& ExactAngle::operator+=(const ExactAngle& o) {
    merge_basis(o);
    q_ += o.q_;
    for (const auto& [sym, c] : o.coeffs_) coeffs_[sym] += c;
    normalize();
    return *this;
}

ExactAngle& ExactAngle::operator-=(const ExactAngle& o) {
    return *this += -o;
}

ExactAngle ExactAngle::scaled(const Int& n) const {
    ExactAngle r = *this;
    r.q_ *= n;
    for (auto& kv : r.coeffs_) kv.second *= n;
    r.normalize();
    return r;
}

bool ExactAngle::operator<(const ExactAngle& o) const {
    if (q_ != o.q_) return q_ < o.q_;
    return coeffs_ < o.coeffs_;
}

std::string ExactAngle::str() const {
    std::string s = format_rational(q_);
    for (const auto& [sym, c] : coeffs_) s += " + " + format_rational(c) + "*" + sym;
    return s;
}

ExactAngle angle_add(const ExactAngle& a, const ExactAngle& b) { return a + b; }
ExactAngle angle_scale(const Int& n, const ExactAngle& a) { return a.scaled(n); }
std::string format_angle(const ExactAngle& a) { return a.str(); }

namespace {

struct Scanner {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw AngleParseError("angle \"" + std::string(s) + "\": " + what + " at offset " + std::to_string(i));
    }
    Int integer() {
        skip();
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i) fail("expected integer");
        return Int(std::string(s.substr(b, i - b)));
    }
    bool at_digit() {
        skip();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    bool at_symbol() {
        skip();
        return i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_');
    }
    std::string symbol() {
        skip();
        std::size_t b = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        return std::string(s.substr(b, i - b));
    }
};

} // namespace

ExactAngle parse_angle(std::string_view text, const BasisPtr& basis) {
    Scanner sc{text};
    if (sc.done()) sc.fail("empty");
    Rational q = 0;
    std::map<std::string, Rational> coeffs;
    bool first = true;
    while (!sc.done()) {
        int sign = 1;
        if (!first) {
            if (sc.eat('+')) {
            } else if (sc.eat('-')) {
                sign = -1;
            } else {
                sc.fail("expected '+' or '-'");
            }
        }
        first = false;
        while (true) {
            if (sc.eat('-'))
                sign = -sign;
            else if (!sc.eat('+'))
                break;
        }
        Rational c = 1;
        bool have_num = false;
        if (sc.at_digit()) {
            Int n = sc.integer();
            Int d = 1;
            if (sc.eat('/')) {
                d = sc.integer();
                if (d == 0) sc.fail("zero denominator");
            }
            c = Rational(n, d);
            have_num = true;
        }
        if (have_num && !sc.eat('*')) {
            q += sign * c;
            continue;
        }
        if (!sc.at_symbol()) sc.fail("expected symbol");
        std::string sym = sc.symbol();
        if (!basis || !basis->contains(sym)) sc.fail("unknown symbol '" + sym + "'");
        coeffs[sym] += sign * c;
    }
    ExactAngle a = ExactAngle::from_rational(q);
    for (const auto& [sym, c] : coeffs) a += ExactAngle::generator(basis, sym, c);
    return a;
}

} // namespace drs
