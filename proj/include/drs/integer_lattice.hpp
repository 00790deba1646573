#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "drs/exact_circle.hpp"

namespace drs {

using IntVec = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    void swap_rows(std::size_t i, std::size_t j);
    void add_row(std::size_t dst, std::size_t src, const Int& k); // row_dst += k*row_src
    void negate_row(std::size_t i);
    void swap_cols(std::size_t i, std::size_t j);
    void add_col(std::size_t dst, std::size_t src, const Int& k);
    void negate_col(std::size_t i);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    IntVec operator*(const IntVec& v) const;
    bool operator==(const IntMatrix& o) const = default;

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

Int determinant(const IntMatrix& m); // Bareiss, square only

struct HNFResult {
    IntMatrix H, U;
};
struct SNFResult {
    IntMatrix S, U, V;
};

HNFResult hermite_normal_form(const IntMatrix& m);
SNFResult smith_normal_form(const IntMatrix& m);

class Sublattice {
public:
    Sublattice() = default;
    // generators need not be independent
    Sublattice(std::size_t dim, const std::vector<IntVec>& generators);

    static Sublattice zero(std::size_t dim) { return Sublattice(dim, {}); }
    static Sublattice full(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<IntVec>& basis() const { return basis_; }
    IntMatrix basis_matrix() const; // rank x dim
    bool contains(const IntVec& v) const;
    // c with v = sum_i c_i basis_i, if v lies in the lattice
    std::optional<IntVec> coordinates(const IntVec& v) const;
    bool is_zero() const { return basis_.empty(); }
    bool operator==(const Sublattice& o) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<IntVec> basis_;
};

Sublattice integer_kernel(const IntMatrix& m);

// {a in Z^d : sum_j a_j M[r][j] = 0 in R/Z for every row r}
Sublattice rational_kernel_mod1(const std::vector<AngleVector>& m, std::size_t d);

IntVec to_intvec(const std::vector<long long>& v);
std::vector<long long> to_ll(const IntVec& v);

} // namespace drs
