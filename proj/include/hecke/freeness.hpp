#pragma once

#include "hecke/graded.hpp"
#include "hecke/induction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hecke {

struct ConditionReport {
    std::string name;
    bool passed = true;
    std::string detail;
    SparseVec witness;
    /// Per-item facts, e.g. (n, dim C_n, Σ_{m<n} dim C_m) for C1.
    std::vector<std::vector<std::int64_t>> rows;
};

/// dim C_n > Σ_{m<n} dim C_m for 1 <= n <= N, in units of dim σ and in
/// absolute dimensions.
ConditionReport verify_C1(const InducedSpace& V, int N);
/// tau restricted to C_0 lands in C_1 and has rank dim σ.
ConditionReport verify_C2(const InducedSpace& V, const TauMatrix& T);
/// Every column stays in the adjacent shells and on its own side.
ConditionReport verify_C3(const InducedSpace& V, const TauMatrix& T);
/// {f in B_{n+1} : tau f in B_{n+1}} ⊆ B_n for 0 <= n < T.levels.
ConditionReport verify_C4(const InducedSpace& V, const TauMatrix& T);
/// The C4 containment for arbitrary columns; dim_B[k] = dim B_k for
/// k = 0..levels, row_dim bounds the column coordinates.
ConditionReport c4_containment(const Field& F, const std::vector<SparseVec>& columns,
                               const std::vector<std::uint32_t>& dim_B, std::uint32_t row_dim);

/// Expansion of tau(f_n) in {f_m}.
struct TauFnEntry {
    int n = 0;
    int next = 0;    // n + δ(n); -1 for n = 0
    int other = 0;   // n - δ(n); +1 for n = 0
    FqElem coeff_next;
    FqElem coeff_other;
    FqElem c_n;
    FqElem expected_other;  // 0, or λ for n = 0
    std::vector<std::pair<int, FqElem>> expansion;  // nonzero coefficients
    bool exact = false;     // tau(f_n) equals the expansion
    bool passed = false;
};

TauFnEntry tau_fn_entry(const InducedSpace& V, int n);
/// Entries for |n| <= N - 1, ordered by n.
std::vector<TauFnEntry> tau_fn_table(const InducedSpace& V, int N);
/// λ: 1 for the trivial weight, else 0.
FqElem expected_lambda(const InducedSpace& V);

struct FreeBasis {
    /// A[n] as unit coordinate vectors in C_n.
    std::vector<std::vector<SparseVec>> A;
    /// Pivot coordinates of the assembled family (reversed-coordinate
    /// elimination, so each pivot is the largest coordinate of its row).
    std::vector<std::uint32_t> pivots;
    std::size_t family_size = 0;
    std::size_t rank = 0;
};

/// A_0 = canonical basis of C_0; A_{n+1} = non-pivot unit vectors of C_{n+1}
/// for the span of π_{n+1}(τ(E_n)), where E_n = ⊔_{i+j=n} τ^i(A_j).
/// Throws CheckFailed with the dependent combination if τ(E_n) projects
/// dependently or the family is not a basis of B_N.
FreeBasis build_free_basis(const InducedSpace& V, const TauMatrix& T);

/// The d = 1 graded instance carried by tau on B_N with shell N + 1 as overflow.
GradedInstance export_graded(const InducedSpace& V, const TauMatrix& T);

struct FreenessParams {
    std::uint32_t p = 0;
    std::uint32_t deg = 0;
    std::vector<std::uint32_t> r;
    int N = 0;
    std::int64_t precision = 0;
    W0Choice w0 = W0Choice::Standard;
};

struct FreenessCertificate {
    FreenessParams params;
    std::vector<std::uint64_t> dims;  // dim C_n, n = 0..N
    std::uint64_t dim_B = 0;
    std::vector<ConditionReport> conditions;
    FqElem lambda;
    std::vector<TauFnEntry> tau_table;
    std::optional<FreeBasis> basis;
    std::string basis_failure;
    bool passed = false;
};

/// Runs C1-C4, the tau(f_n) table and the basis construction.
FreenessCertificate certify(const WeightShape& S, int N, std::optional<std::int64_t> precision = std::nullopt,
                            W0Choice w0 = W0Choice::Standard);

} // namespace hecke
