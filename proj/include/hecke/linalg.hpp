#pragma once

#include "hecke/field.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hecke {

/// Sparse vector over F_q: (coordinate, nonzero value) pairs sorted by coordinate.
using SparseEntry = std::pair<std::uint32_t, FqElem>;
using SparseVec = std::vector<SparseEntry>;

/// y + c·x
SparseVec axpy(const Field& F, const SparseVec& y, FqElem c, const SparseVec& x);
SparseVec scale(const Field& F, FqElem c, const SparseVec& x);
SparseVec unit_vector(std::uint32_t index, FqElem one);
/// Removes zeros and sorts; duplicate coordinates are summed.
SparseVec canonicalize(const Field& F, SparseVec v);

/// Incremental row echelon form over F_q.
///
/// The pivot of a vector is its smallest nonzero coordinate, so the pivot
/// set of the stored rows equals the pivot set of the reduced row echelon
/// form of their span regardless of insertion order. Rows can carry a tag
/// (typically the combination of inputs they came from); tags are reduced
/// alongside the rows, which is how kernels are extracted.
class Echelon {
public:
    Echelon(const Field& F, std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Residual of v after eliminating every pivot coordinate.
    SparseVec reduce(const SparseVec& v) const;

    /// Inserts v; returns true when v was independent of the stored rows.
    /// When v was dependent, last_dependency() holds the reduced tag.
    bool insert(const SparseVec& v, const SparseVec& tag = {});

    const SparseVec& last_dependency() const noexcept { return last_dependency_; }

    std::vector<std::uint32_t> pivots() const;
    std::vector<std::uint32_t> non_pivots() const;

private:
    std::pair<SparseVec, SparseVec> reduce_tagged(const SparseVec& v, const SparseVec& tag, bool use_tag) const;

    const Field* F_;
    std::size_t dim_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tags_;
    std::vector<std::int32_t> pivot_row_;
    SparseVec last_dependency_;
    mutable std::vector<FqElem> scratch_;
    mutable std::vector<char> touched_;
};

std::size_t rank_of(const Field& F, std::size_t dim, const std::vector<SparseVec>& vectors);

/// Basis of {c : Σ c_i columns[i] = 0}, one vector per dependent column, as
/// sparse vectors indexed by column number.
std::vector<SparseVec> kernel_of_columns(const Field& F, std::size_t rows, const std::vector<SparseVec>& columns);

/// Small dense matrices, row-major.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FqElem> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    FqElem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    FqElem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static DenseMatrix identity(const Field& F, std::size_t n);

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

DenseMatrix operator_mul(const Field& F, const DenseMatrix& a, const DenseMatrix& b);
std::vector<FqElem> apply(const Field& F, const DenseMatrix& a, const std::vector<FqElem>& x);
std::size_t dense_rank(const Field& F, const DenseMatrix& a);
/// nullopt when singular.
std::optional<DenseMatrix> dense_inverse(const Field& F, const DenseMatrix& a);
/// Column j as a sparse vector with coordinates shifted by offset.
SparseVec dense_column(const DenseMatrix& a, std::size_t j, std::uint32_t offset = 0);

} // namespace hecke
