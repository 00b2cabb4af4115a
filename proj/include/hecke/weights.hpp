#pragma once

#include "hecke/field.hpp"
#include "hecke/linalg.hpp"
#include "hecke/sl2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hecke {

/// binom(r, i) mod p computed digit-wise; 0 unless 0 <= i <= r.
std::uint32_t lucas_binom(std::uint64_t r, std::uint64_t i, std::uint32_t p);

/// Sym^r0 ⊗ (Sym^r1)^Frob ⊗ ... over F_q.
///
/// Basis tuples (i_0, ..., i_{deg-1}), 0 <= i_j <= r_j, stand for the
/// monomials ⊗_j X^(r_j - i_j) Y^(i_j) and are listed lexicographically
/// with i_0 most significant. Index 0 is X^r, the last index is Y^r.
class WeightShape {
public:
    /// r must have deg entries in [0, p).
    WeightShape(const Field& F, std::vector<std::uint32_t> r);

    const Field& field() const noexcept { return *F_; }
    const std::vector<std::uint32_t>& r() const noexcept { return r_; }
    std::size_t dim() const noexcept { return dim_; }
    bool is_trivial() const noexcept { return dim_ == 1; }
    /// Σ r_j, the parity that governs the w0 sign.
    std::uint32_t degree_sum() const noexcept;
    /// Σ r_j p^j.
    std::uint64_t embedded_degree() const noexcept;

    std::vector<std::uint32_t> tuple(std::size_t index) const;
    std::size_t index(const std::vector<std::uint32_t>& tuple) const;
    /// Σ i_j p^j, the exponent of Y inside Sym^r.
    std::uint64_t embedded_exponent(std::size_t index) const;

    std::size_t x_top() const noexcept { return 0; }
    std::size_t y_top() const noexcept { return dim_ - 1; }

    /// Matrix of the action of k, column j = image of basis vector j.
    DenseMatrix matrix(const SL2q& k) const;

    friend bool operator==(const WeightShape& a, const WeightShape& b) {
        return *a.F_ == *b.F_ && a.r_ == b.r_;
    }

private:
    const Field* F_;
    std::vector<std::uint32_t> r_;
    std::size_t dim_;
};

/// Vector in σ_r, stored densely in basis order.
using WeightVec = std::vector<FqElem>;

WeightVec basis_vector(const WeightShape& S, std::size_t index);
WeightVec act(const WeightShape& S, const SL2q& k, const WeightVec& v);
/// (coefficient of Y^r) · Y^r.
WeightVec u_project(const WeightShape& S, const WeightVec& v);
bool is_zero(const WeightVec& v);

struct StructureReport {
    bool passed = true;
    std::size_t dim = 0;
    std::size_t lower_orbit_rank = 0;   // rank of {ubar(a) X^r}
    std::size_t upper_fixed_dim = 0;    // dim of common fixed space of u(a)
    bool upper_fixed_is_x_line = false;
    std::size_t upper_orbit_rank = 0;   // rank of {u(a) Y^r}
    std::size_t lower_fixed_dim = 0;    // dim of common fixed space of ubar(a)
    bool lower_fixed_is_y_line = false;
    std::string failure;
    WeightVec witness;
};

/// Generation by X^r under the lower unipotents, the U-fixed line, and the
/// mirror statements for Y^r. Throws InvalidParameter when q > 9.
StructureReport structure_checks(const WeightShape& S);

} // namespace hecke
