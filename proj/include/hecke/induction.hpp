#pragma once

#include "hecke/linalg.hpp"
#include "hecke/series.hpp"
#include "hecke/sl2.hpp"
#include "hecke/weights.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace hecke {

/// Finitely supported function on the coset points, keyed by global point
/// index; entry (P, v) stands for the standard function [rep(P), v].
struct InducedFn {
    std::map<std::uint64_t, WeightVec> entries;

    bool empty() const noexcept { return entries.empty(); }
    friend bool operator==(const InducedFn&, const InducedFn&) = default;
};

/// One summand of tau on a standard function [rep(P), v]: contributes
/// (functional · v) · value at point.
struct TauTerm {
    CosetPoint point;
    std::uint64_t point_index = 0;
    bool upper = true;  // summand of the lambda sum, else of the mu sum
    SL2q kbar;
    WeightVec functional;
    WeightVec value;
};

/// Columns of tau on the standard coordinates of B_N, written in the
/// coordinates of B_{N+1}.
struct TauMatrix {
    int levels = 0;
    std::uint32_t source_dim = 0;
    std::uint32_t target_dim = 0;
    std::vector<SparseVec> columns;
};

/// The compact induction of a weight, realized on coset points.
///
/// Coordinates: the standard function [rep(P), e_b] has coordinate
/// global_index(P) · dim σ + b, so B_N is the initial segment of length
/// dim_B(N).
class InducedSpace {
public:
    InducedSpace(const WeightShape& S, std::int64_t precision, W0Choice w0 = W0Choice::Standard);
    InducedSpace(const InducedSpace&) = delete;
    InducedSpace& operator=(const InducedSpace&) = delete;

    /// The policy precision 2N + 6 for computations up to level N.
    static std::int64_t policy_precision(int N) { return 2 * static_cast<std::int64_t>(N) + 6; }

    const Field& field() const noexcept { return S_->field(); }
    const WeightShape& shape() const noexcept { return *S_; }
    const SL2Ops& ops() const noexcept { return ops_; }
    const SeriesRing& ring() const noexcept { return *ring_; }
    W0Choice w0_choice() const noexcept { return w0_; }
    const SL2q& w0() const noexcept { return w0_mat_; }
    std::int64_t precision() const noexcept { return ring_->precision(); }

    std::uint64_t dim_C(int n) const;
    std::uint64_t dim_B(int N) const;

    InducedFn std_fn(const SL2Mat& g, const WeightVec& v) const;
    InducedFn act_g(const SL2Mat& g, const InducedFn& f) const;
    /// Summands in canonical order: lambda = (l0, l1) with l0 major, then mu.
    std::vector<TauTerm> tau_terms(const CosetPoint& P) const;
    /// A nonzero shuffle_seed permutes the summation order (result unchanged).
    InducedFn tau_apply(const InducedFn& f, std::uint64_t shuffle_seed = 0) const;
    InducedFn f_n(int n) const;

    /// Largest shell in the support; -1 for the zero function.
    int top(const InducedFn& f) const;
    InducedFn project(const InducedFn& f, int n) const;
    /// Throws TopExceedsLevel when top(f) > N.
    SparseVec coords(const InducedFn& f, int N) const;
    InducedFn from_coords(const SparseVec& v) const;
    CosetPoint point(std::uint64_t index) const { return point_at_global(field().q(), index); }
    std::uint64_t index(const CosetPoint& P) const { return global_index(field().q(), P); }

    /// Tau on every standard coordinate of B_N, columns in B_{N+1}.
    TauMatrix tau_matrix(int N) const;

    /// Invariance under u(c t^i), ubar(c t^(i+1)), diag(1 + c t^(i+1)) for
    /// c in F_q^x and 0 <= i < level. Requires level >= 2(top(f) + 1).
    bool i1_invariant(const InducedFn& f, int level) const;
    /// Basis (as coordinate vectors) of the I_S(1)-invariants of C_n,
    /// solved with the generators at level 2(n + 1).
    std::vector<SparseVec> i1_invariants_of_shell(int n) const;

    /// Generators used by the invariance checks at the given level.
    std::vector<SL2Mat> i1_generators(int level) const;

private:
    void accumulate(InducedFn& f, std::uint64_t point, const WeightVec& v, FqElem c) const;

    const WeightShape* S_;
    std::unique_ptr<SeriesRing> ring_;
    SL2Ops ops_;
    W0Choice w0_;
    SL2q w0_mat_;
};

} // namespace hecke
