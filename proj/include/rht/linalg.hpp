#ifndef RHT_LINALG_HPP
#define RHT_LINALG_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rht/scalar.hpp"

namespace rht::la {

/* Sparse coordinate vector: index -> nonzero entry. */
using SparseVec = std::map<std::size_t, Scalar>;

SparseVec add(const SparseVec& a, const SparseVec& b);
SparseVec sub(const SparseVec& a, const SparseVec& b);
SparseVec scale(const Scalar& c, const SparseVec& v);

/* Sparse matrix over Q. Zero entries are never stored. */
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_(rows) {}
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVec>& cols);
    static SparseMatrix from_rows(std::size_t cols, const std::vector<SparseVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    const SparseVec& row(std::size_t r) const { return row_[r]; }
    SparseVec column(std::size_t c) const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    SparseMatrix operator+(const SparseMatrix& rhs) const;
    SparseMatrix operator-(const SparseMatrix& rhs) const;
    SparseMatrix scaled(const Scalar& c) const;
    bool operator==(const SparseMatrix& rhs) const;

    /* Matrix-vector product (v indexed by columns). */
    SparseVec apply(const SparseVec& v) const;

private:
    std::size_t rows_, cols_;
    std::vector<SparseVec> row_;
};

struct RrefResult {
    SparseMatrix r;
    std::vector<std::size_t> pivot_cols;
};

/* Reduced row echelon form. Pivot rows are chosen by minimal fill
 * (fewest nonzeros, then lowest index), which keeps runs reproducible;
 * the resulting RREF is canonical either way. */
RrefResult rref(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/* A list of linearly independent vectors in Q^ambient_dim. */
struct SubspaceBasis {
    std::size_t ambient_dim = 0;
    std::vector<SparseVec> vectors;

    std::size_t dim() const { return vectors.size(); }
};

/* Basis of { v : mv = 0 }, one vector per free column of rref(m). */
SubspaceBasis kernel_basis(const SparseMatrix& m);

/* Basis of the column space: the original columns at the pivot positions. */
SubspaceBasis image_basis(const SparseMatrix& m);

/* Some v with mv = b; nullopt when the system is inconsistent. */
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

/* Coordinates of v in the span of basis vectors; nullopt if v lies outside. */
std::optional<SparseVec> coords_in_span(const SubspaceBasis& basis, const SparseVec& v);

struct QuotientResult {
    std::size_t dim = 0;
    /* Vectors of `cycles` completing `boundaries` to a basis of the cycle space. */
    std::vector<SparseVec> representatives;
};

/* dim(Z/B) and coset representatives. Throws BrokenComplexError when
 * B is not contained in Z (a chain complex with d^2 != 0 upstream). */
QuotientResult quotient_dim_and_reps(const SubspaceBasis& cycles, const SubspaceBasis& boundaries);

}  // namespace rht::la

#endif
