#pragma once

#include "hecke/field.hpp"
#include "hecke/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hecke {

using MultiIndex = std::vector<int>;

int level(const MultiIndex& n);
std::string to_string(const MultiIndex& n);

/// Truncation of a Z_{>=0}^d-graded space with d commuting operators.
///
/// Blocks C_n with |n| <= N carry the operators; blocks with |n| = N + 1
/// only receive images (overflow). Coordinates are global over all blocks,
/// ordered by level and then lexicographically, so B_L is always a prefix.
class GradedInstance {
public:
    GradedInstance(std::shared_ptr<const Field> F, int d, int N, const std::map<MultiIndex, std::uint32_t>& dims,
                   const std::map<MultiIndex, std::uint32_t>& overflow_dims);

    const Field& field() const noexcept { return *F_; }
    std::shared_ptr<const Field> field_ptr() const noexcept { return F_; }
    int d() const noexcept { return d_; }
    int N() const noexcept { return N_; }

    /// Every block (operator domain and overflow) in coordinate order.
    const std::vector<MultiIndex>& blocks() const noexcept { return blocks_; }
    bool has_block(const MultiIndex& n) const { return index_.count(n) != 0; }
    std::uint32_t block_dim(const MultiIndex& n) const;
    std::uint32_t block_offset(const MultiIndex& n) const;
    bool is_overflow(const MultiIndex& n) const { return level(n) > N_; }
    /// Block containing a global coordinate.
    const MultiIndex& block_of(std::uint32_t coord) const;
    /// Total dimension of the blocks with level <= L (L may be N + 1).
    std::uint32_t dim_B(int L) const;
    std::uint32_t total_dim() const { return dim_B(N_ + 1); }

    /// Image of the basis vector at coord (coord < dim_B(N)).
    const SparseVec& column(int j, std::uint32_t coord) const;
    void set_column(int j, std::uint32_t coord, SparseVec v);
    /// T_j(v) for v supported in B_N.
    SparseVec apply(int j, const SparseVec& v) const;
    /// Restriction of T_j to C_source -> C_target as a dense matrix.
    DenseMatrix block(int j, const MultiIndex& source, const MultiIndex& target) const;
    void set_block(int j, const MultiIndex& source, const MultiIndex& target, const DenseMatrix& m);

    /// Components of v in block n (coordinates local to the block).
    SparseVec project(const SparseVec& v, const MultiIndex& n) const;

    friend bool operator==(const GradedInstance& a, const GradedInstance& b);

private:
    std::shared_ptr<const Field> F_;
    int d_;
    int N_;
    std::vector<MultiIndex> blocks_;
    std::map<MultiIndex, std::size_t> index_;
    std::vector<std::uint32_t> dims_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::vector<SparseVec>> columns_;
};

struct HypothesisResult {
    std::string name;
    bool checked = true;
    bool passed = true;
    std::string detail;
    SparseVec witness;
};

struct HypothesisReport {
    std::vector<HypothesisResult> results;

    bool all_passed() const;
    const HypothesisResult& get(const std::string& name) const;
};

/// H1..H4, commutation on B_{N-1}, and H5. H5 is evaluated on the images
/// of the complement sets A_j produced by the inductive construction (the
/// only subspaces the construction feeds into C_n); for d = 1 it is
/// reported as not required.
HypothesisReport check_hypotheses(const GradedInstance& inst);

struct BasisMember {
    MultiIndex i;
    MultiIndex j;
    std::uint32_t a = 0;  // position inside A_j
    SparseVec vec;
};

struct BuildResult {
    std::map<MultiIndex, std::vector<SparseVec>> A;
    std::vector<BasisMember> family;
    /// Blocks where the images feeding the complement were not independent.
    std::vector<MultiIndex> h5_failures;
    bool disjoint = false;
    bool tops_ok = false;
    std::size_t rank = 0;
    bool verified = false;
    std::string failure;
};

enum class BuildMode { Strict, Naive };

/// Inductive construction of the sets A_n and verification that
/// {T^i(A_j) : |i| + |j| <= N} is a disjoint family whose union is a basis
/// of B_N. Strict mode throws ConstructionFailed at the first dependent
/// step; naive mode carries on and reports the failed verification.
BuildResult build_basis(const GradedInstance& inst, BuildMode mode = BuildMode::Strict);

struct RandomInstance {
    GradedInstance instance;
    int attempts = 0;
};

/// Seeded random instance with per-level block dimensions profile[0..N].
/// d = 1: random tridiagonal blocks with full-column-rank upward blocks.
/// d >= 2: a free module on generators placed to reach the profile, with
/// commuting diagonal weights, conjugated by random block-diagonal
/// invertible matrices. Samples are kept only when check_hypotheses passes;
/// throws BudgetExhausted after max_attempts rejections.
RandomInstance random_instance(std::shared_ptr<const Field> F, std::uint64_t seed, int d, int N,
                               const std::vector<std::uint32_t>& profile, int max_attempts = 200);

/// d = 2, N = 2 instance satisfying H1-H4 and commutation in which
/// T_2(a) = T_1(b) for generators a in C_(1,0), b in C_(0,1), so H5 fails.
GradedInstance h5_counterexample(std::shared_ptr<const Field> F);

/// Columns of kernel(π_{>rows_from} ∘ M) for the first `cols` columns of
/// M; returns a kernel vector not supported in the first `prefix`
/// coordinates, or nullopt when the kernel lies inside that prefix.
std::optional<SparseVec> kernel_outside_prefix(const Field& F, const std::vector<SparseVec>& columns,
                                               std::uint32_t cols, std::uint32_t rows_from,
                                               std::uint32_t row_dim, std::uint32_t prefix);

} // namespace hecke
