#include "drs/integer_lattice.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace drs {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / boost::multiprecision::gcd(a, b) * b);
}

} // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error("ragged matrix literal");
        for (long long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (v.size() != cols_) throw Error("matrix-vector dimension mismatch");
    IntVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

HNFResult hermite_normal_form(const IntMatrix& m) {
    IntMatrix H = m;
    IntMatrix U = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
        bool found = false;
        while (true) {
            std::size_t best = H.rows();
            for (std::size_t k = r; k < H.rows(); ++k)
                if (H(k, c) != 0 && (best == H.rows() || abs_int(H(k, c)) < abs_int(H(best, c)))) best = k;
            if (best == H.rows()) break;
            found = true;
            H.swap_rows(r, best);
            U.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                Int q = H(i, c) / H(r, c);
                H.add_row(i, r, -q);
                U.add_row(i, r, -q);
                if (H(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!found) continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(H(i, c), H(r, c));
            H.add_row(i, r, -q);
            U.add_row(i, r, -q);
        }
        ++r;
    }
    return {H, U};
}

SNFResult smith_normal_form(const IntMatrix& m) {
    IntMatrix S = m;
    IntMatrix U = IntMatrix::identity(m.rows());
    IntMatrix V = IntMatrix::identity(m.cols());
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t bi = S.rows(), bj = S.cols();
            for (std::size_t i = t; i < S.rows(); ++i)
                for (std::size_t j = t; j < S.cols(); ++j)
                    if (S(i, j) != 0 && (bi == S.rows() || abs_int(S(i, j)) < abs_int(S(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == S.rows()) return {S, U, V};
            S.swap_rows(t, bi);
            U.swap_rows(t, bi);
            S.swap_cols(t, bj);
            V.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < S.rows(); ++i) {
                Int q = S(i, t) / S(t, t);
                S.add_row(i, t, -q);
                U.add_row(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < S.cols(); ++j) {
                Int q = S(t, j) / S(t, t);
                S.add_col(j, t, -q);
                V.add_col(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < S.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < S.cols(); ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        S.add_row(t, i, 1);
                        U.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            U.negate_row(t);
        }
    }
    return {S, U, V};
}

Sublattice::Sublattice(std::size_t dim, const std::vector<IntVec>& generators) : dim_(dim) {
    if (generators.empty()) return;
    IntMatrix H = hermite_normal_form(IntMatrix::from_rows(generators, dim)).H;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        IntVec r = H.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; })) basis_.push_back(std::move(r));
    }
}

Sublattice Sublattice::full(std::size_t dim) {
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVec e(dim);
        e[i] = 1;
        gens.push_back(e);
    }
    return Sublattice(dim, gens);
}

IntMatrix Sublattice::basis_matrix() const { return IntMatrix::from_rows(basis_, dim_); }

std::optional<IntVec> Sublattice::coordinates(const IntVec& v) const {
    if (v.size() != dim_) throw Error("sublattice membership: dimension mismatch");
    IntVec w = v;
    IntVec coords;
    for (const auto& b : basis_) {
        std::size_t c = 0;
        while (b[c] == 0) ++c;
        if (w[c] % b[c] != 0) return std::nullopt;
        Int q = w[c] / b[c];
        coords.push_back(q);
        for (std::size_t j = 0; j < dim_; ++j) w[j] -= q * b[j];
    }
    if (!std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; })) return std::nullopt;
    return coords;
}

bool Sublattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

Sublattice integer_kernel(const IntMatrix& m) {
    auto [H, U] = hermite_normal_form(m.transpose());
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < H.rows(); ++i) {
        IntVec r = H.row(i);
        if (std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; })) gens.push_back(U.row(i));
    }
    return Sublattice(m.cols(), gens);
}

Sublattice rational_kernel_mod1(const std::vector<AngleVector>& m, std::size_t d) {
    std::vector<IntVec> irr_rows;
    std::vector<std::pair<IntVec, Int>> rat_rows;
    for (const auto& row : m) {
        if (row.size() != d) throw Error("rational_kernel_mod1: row length mismatch");
        std::set<std::string> syms;
        for (const auto& a : row)
            for (const auto& kv : a.irrational_coeffs()) syms.insert(kv.first);
        for (const auto& s : syms) {
            Int den = 1;
            for (const auto& a : row) {
                auto it = a.irrational_coeffs().find(s);
                if (it != a.irrational_coeffs().end()) den = lcm_int(den, boost::multiprecision::denominator(it->second));
            }
            IntVec eq(d);
            for (std::size_t j = 0; j < d; ++j) {
                auto it = row[j].irrational_coeffs().find(s);
                if (it != row[j].irrational_coeffs().end()) {
                    Rational v = it->second * den;
                    eq[j] = boost::multiprecision::numerator(v);
                }
            }
            irr_rows.push_back(eq);
        }
        Int den = 1;
        for (const auto& a : row) den = lcm_int(den, boost::multiprecision::denominator(a.rational_part()));
        if (den == 1) continue;
        IntVec eq(d);
        for (std::size_t j = 0; j < d; ++j) eq[j] = boost::multiprecision::numerator(Rational(row[j].rational_part() * den));
        rat_rows.emplace_back(eq, den);
    }
    std::size_t extra = rat_rows.size();
    std::size_t n = d + extra;
    IntMatrix A(irr_rows.size() + extra, n);
    for (std::size_t i = 0; i < irr_rows.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) A(i, j) = irr_rows[i][j];
    for (std::size_t k = 0; k < extra; ++k) {
        std::size_t i = irr_rows.size() + k;
        for (std::size_t j = 0; j < d; ++j) A(i, j) = rat_rows[k].first[j];
        A(i, d + k) = -rat_rows[k].second;
    }
    if (A.rows() == 0) return Sublattice::full(d);
    Sublattice K = integer_kernel(A);
    std::vector<IntVec> proj;
    for (const auto& b : K.basis()) proj.emplace_back(b.begin(), b.begin() + d);
    return Sublattice(d, proj);
}

IntVec to_intvec(const std::vector<long long>& v) {
    IntVec r;
    r.reserve(v.size());
    for (long long x : v) r.emplace_back(x);
    return r;
}

std::vector<long long> to_ll(const IntVec& v) {
    std::vector<long long> r;
    r.reserve(v.size());
    for (const auto& x : v) {
        if (x > Int(std::numeric_limits<long long>::max()) || x < Int(std::numeric_limits<long long>::min()))
            throw Error("integer vector entry overflows 64 bits");
        r.push_back(static_cast<long long>(x));
    }
    return r;
}

} // namespace drs
