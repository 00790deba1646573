#include "drs/abelian_cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace drs {

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
Vec neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}
bool is_zero_vec(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

std::vector<Vec> box_points(std::size_t rank, long long r) {
    std::vector<Vec> out;
    Vec v(rank, -r);
    if (rank == 0) return {Vec{}};
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < rank && v[i] == r) v[i++] = -r;
        if (i == rank) break;
        ++v[i];
    }
    return out;
}

std::complex<double> phase(const ExactAngle& a) {
    return std::polar(1.0, 2.0 * std::numbers::pi * a.approx());
}

Bicharacter::Bicharacter(std::size_t rank) : m_(rank, AngleVector(rank)) {}

Bicharacter::Bicharacter(std::vector<AngleVector> pairing) : m_(std::move(pairing)) {
    for (const auto& r : m_)
        if (r.size() != m_.size()) throw Error("bicharacter pairing must be square");
}

ExactAngle Bicharacter::eval(const Vec& p, const Vec& q) const {
    if (p.size() != rank() || q.size() != rank()) throw Error("bicharacter: argument rank mismatch");
    ExactAngle s;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) {
            if (q[j] == 0 || m_[i][j].is_zero()) continue;
            s += m_[i][j].scaled(Int(p[i]) * q[j]);
        }
    }
    return s;
}

ExactAngle Bicharacter::eval(const IntVec& p, const IntVec& q) const {
    if (p.size() != rank() || q.size() != rank()) throw Error("bicharacter: argument rank mismatch");
    ExactAngle s;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) {
            if (q[j] == 0 || m_[i][j].is_zero()) continue;
            s += m_[i][j].scaled(p[i] * q[j]);
        }
    }
    return s;
}

Bicharacter Bicharacter::transpose() const {
    Bicharacter t(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) t.m_[j][i] = m_[i][j];
    return t;
}

Bicharacter Bicharacter::operator-() const {
    Bicharacter t = *this;
    for (auto& r : t.m_)
        for (auto& a : r) a = -a;
    return t;
}

Bicharacter operator+(const Bicharacter& a, const Bicharacter& b) {
    if (a.rank() != b.rank()) throw Error("bicharacter rank mismatch");
    Bicharacter c = a;
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) c.m_[i][j] += b.m_[i][j];
    return c;
}

Bicharacter Bicharacter::pullback(const IntMatrix& g) const {
    if (g.rows() != rank()) throw Error("pullback: basis dimension mismatch");
    Bicharacter r(g.cols());
    for (std::size_t a = 0; a < g.cols(); ++a)
        for (std::size_t b = 0; b < g.cols(); ++b) r.m_[a][b] = eval(g.col(a), g.col(b));
    return r;
}

bool Bicharacter::is_zero() const {
    for (const auto& r : m_)
        for (const auto& a : r)
            if (!a.is_zero()) return false;
    return true;
}

bool OneCochain::in_box(const Vec& v) const {
    if (v.size() != rank_) throw Error("cochain: argument rank mismatch");
    return std::all_of(v.begin(), v.end(), [&](long long x) { return x >= -radius_ && x <= radius_; });
}

ExactAngle OneCochain::value(const Vec& v) const {
    if (!in_box(v)) throw OutOfBox("cochain evaluated outside its box");
    auto it = values_.find(v);
    return it == values_.end() ? ExactAngle() : it->second;
}

void OneCochain::set(const Vec& v, const ExactAngle& a) {
    if (!in_box(v)) throw OutOfBox("cochain value outside its box");
    if (is_zero_vec(v) && !a.is_zero()) throw Error("cochain must vanish at 0");
    if (a.is_zero())
        values_.erase(v);
    else
        values_[v] = a;
}

OneCochain OneCochain::operator-() const {
    OneCochain r(rank_, radius_);
    for (const auto& [v, a] : values_) r.values_[v] = -a;
    return r;
}

Cocycle2::Cocycle2(Bicharacter base, std::optional<OneCochain> cochain) : base_(std::move(base)), cochain_(std::move(cochain)) {
    if (cochain_ && cochain_->rank() != base_.rank()) throw Error("cochain rank differs from bicharacter rank");
}

ExactAngle Cocycle2::eval(const Vec& p, const Vec& q) const {
    ExactAngle r = base_.eval(p, q);
    if (cochain_) {
        Vec s = add(p, q);
        r += cochain_->value(p);
        r += cochain_->value(q);
        r -= cochain_->value(s);
    }
    return r;
}

Vec QuotientBicharacter::reduce(const Vec& p) const {
    if (p.size() != projection.rows()) throw Error("quotient: ambient rank mismatch");
    Vec c(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
        Int s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += projection(i, k) * p[i];
        if (orders[k] != 0) {
            s %= orders[k];
            if (s < 0) s += orders[k];
        }
        c[k] = static_cast<long long>(s);
    }
    return c;
}

ExactAngle QuotientBicharacter::eval_classes(const Vec& c1, const Vec& c2) const { return pairing.eval(c1, c2); }

ExactAngle QuotientBicharacter::eval(const Vec& p, const Vec& q) const { return pairing.eval(reduce(p), reduce(q)); }

ExactAngle eval_cocycle(const Cocycle2& s, const Vec& p, const Vec& q) { return s.eval(p, q); }

Cocycle2 star(const Cocycle2& s) {
    std::optional<OneCochain> b;
    if (s.cochain()) b = -*s.cochain();
    return Cocycle2(-s.base().transpose(), b);
}

Bicharacter antisymmetrize(const Cocycle2& s) { return s.base() - s.base().transpose(); }

Bicharacter bicharacter_from_cocycle(const Cocycle2& s) {
    Bicharacter sk = antisymmetrize(s);
    Bicharacter w(s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t j = 0; j < i; ++j) w.at(i, j) = sk.at(i, j);
    return w;
}

bool is_cohomologous(const Cocycle2& a, const Cocycle2& b) {
    if (a.rank() != b.rank()) throw Error("is_cohomologous: rank mismatch");
    return antisymmetrize(a) == antisymmetrize(b);
}

Sublattice centre(const Bicharacter& w) {
    Bicharacter sk = w - w.transpose();
    std::size_t l = w.rank();
    std::vector<AngleVector> rows(l, AngleVector(l));
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < l; ++i) rows[j][i] = sk.at(i, j);
    return rational_kernel_mod1(rows, l);
}

Normalized vanish_on_centre_normalize(const Bicharacter& w) {
    std::size_t l = w.rank();
    Bicharacter sk = w - w.transpose();
    Sublattice z = centre(w);
    std::size_t r = z.rank();

    IntMatrix V = IntMatrix::identity(l);
    std::vector<Int> d;
    if (r > 0) {
        SNFResult snf = smith_normal_form(z.basis_matrix());
        V = snf.V;
        for (std::size_t i = 0; i < r; ++i) d.push_back(snf.S(i, i));
    }
    // F = V^{-1}; its rows f_i form a basis with Z = span{d_i f_i}
    IntMatrix F = hermite_normal_form(V).U;
    Bicharacter s_f = sk.pullback(F.transpose());
    Bicharacter w_f(l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < i; ++j) w_f.at(i, j) = s_f.at(i, j);
    Bicharacter w_prime = w_f.pullback(V.transpose());

    std::vector<std::size_t> keep;
    QuotientBicharacter q;
    for (std::size_t i = 0; i < l; ++i) {
        Int ord = i < r ? d[i] : Int(0);
        if (ord == 1) continue;
        keep.push_back(i);
        q.orders.push_back(ord);
    }
    q.pairing = Bicharacter(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) q.pairing.at(a, b) = w_f.at(keep[a], keep[b]);
    q.projection = IntMatrix(l, keep.size());
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t a = 0; a < keep.size(); ++a) q.projection(i, a) = V(i, keep[a]);
    return {w_prime, z, q};
}

Cocycle2 coboundary(const OneCochain& b) { return Cocycle2(Bicharacter(b.rank()), b); }

OneCochain flatten_to_constant(const Cocycle2& rho, const Bicharacter& w, long long radius) {
    std::size_t l = rho.rank();
    if (w.rank() != l) throw Error("flatten_to_constant: rank mismatch");
    if (!is_cohomologous(rho, Cocycle2(w))) throw NotCohomologous("not cohomologous");
    auto ct = [&](const Vec& p, const Vec& q) { return rho.eval(p, q) - w.eval(p, q); };

    OneCochain b(l, radius);
    std::vector<Vec> lower{Vec(l, 0)};
    for (std::size_t i = 0; i < l; ++i) {
        Vec e(l, 0);
        e[i] = 1;
        std::vector<Vec> next = lower;
        for (const Vec& v : lower) {
            Vec m = v;
            for (long long k = 1; k <= radius; ++k) {
                Vec prev = m;
                m[i] = k;
                b.set(m, b.value(prev) - ct(e, prev));
                next.push_back(m);
            }
            m = v;
            for (long long k = 1; k <= radius; ++k) {
                Vec prev = m;
                m[i] = -k;
                b.set(m, b.value(prev) + ct(e, m));
                next.push_back(m);
            }
        }
        lower = std::move(next);
    }

    // post-hoc check of delta b = rho - w; exhaustive unless the box is large
    std::vector<Vec> box = box_points(l, radius);
    auto check = [&](const Vec& p, const Vec& q) {
        Vec s = add(p, q);
        if (!b.in_box(s)) return;
        if (b.value(p) + b.value(q) - b.value(s) != ct(p, q))
            throw Error("flatten_to_constant: recursion inconsistent on the box");
    };
    double pairs = std::pow(static_cast<double>(box.size()), 2.0);
    if (pairs <= 250000.0) {
        for (const Vec& p : box)
            for (const Vec& q : box) check(p, q);
    } else {
        for (std::size_t i = 0; i < l; ++i) {
            Vec e(l, 0);
            e[i] = 1;
            for (const Vec& q : box) {
                check(e, q);
                check(q, e);
            }
        }
        std::size_t stride = static_cast<std::size_t>(pairs / 50000.0) + 1;
        std::size_t n = box.size();
        for (std::size_t k = 0; k < n * n; k += stride) check(box[k / n], box[(k * 7919) % n]);
    }
    return b;
}

bool twisted_group_algebra_simple(const QuotientBicharacter& w) {
    std::size_t g = w.generators();
    if (g == 0) return true;
    Bicharacter sk = w.pairing - w.pairing.transpose();
    std::vector<AngleVector> rows(g, AngleVector(g));
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < g; ++i) rows[j][i] = sk.at(i, j);
    Sublattice L = rational_kernel_mod1(rows, g);
    for (const auto& v : L.basis())
        for (std::size_t i = 0; i < g; ++i) {
            if (w.orders[i] == 0) {
                if (v[i] != 0) return false;
            } else if (v[i] % w.orders[i] != 0) {
                return false;
            }
        }
    return true;
}

std::complex<double> trace_canonical(const GroupFn& f) {
    for (const auto& [v, c] : f)
        if (is_zero_vec(v)) return c;
    return {0.0, 0.0};
}

GroupFn twisted_group_convolve(const GroupFn& f, const GroupFn& g, const Bicharacter& w) {
    GroupFn h;
    for (const auto& [p, a] : f)
        for (const auto& [q, b] : g) h[add(p, q)] += phase(w.eval(p, q)) * a * b;
    return h;
}

} // namespace drs
