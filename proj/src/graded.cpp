#include "hecke/graded.hpp"

#include "hecke/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace hecke {

int level(const MultiIndex& n) { return std::accumulate(n.begin(), n.end(), 0); }

std::string to_string(const MultiIndex& n) {
    std::string s = "(";
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(n[i]);
    }
    return s + ")";
}

namespace {

// Multi-indices of length d and level l, lexicographically increasing.
void indices_of_level(int d, int l, MultiIndex& cur, std::vector<MultiIndex>& out) {
    const int pos = static_cast<int>(cur.size());
    if (pos == d - 1) {
        cur.push_back(l);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= l; ++k) {
        cur.push_back(k);
        indices_of_level(d, l - k, cur, out);
        cur.pop_back();
    }
}

std::vector<MultiIndex> indices_of_level(int d, int l) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    indices_of_level(d, l, cur, out);
    return out;
}

MultiIndex unit_index(int d, int j) {
    MultiIndex e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(j)] = 1;
    return e;
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

MultiIndex minus(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
    return c;
}

MultiIndex plus(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
    return c;
}

std::uint32_t max_coord(const SparseVec& v) { return v.empty() ? 0 : v.back().first; }

} // namespace

GradedInstance::GradedInstance(std::shared_ptr<const Field> F, int d, int N,
                               const std::map<MultiIndex, std::uint32_t>& dims,
                               const std::map<MultiIndex, std::uint32_t>& overflow_dims)
    : F_(std::move(F)), d_(d), N_(N) {
    if (!F_) throw InvalidParameter("graded instance without a field");
    if (d < 1) throw InvalidParameter("graded instance needs d >= 1");
    if (N < 0) throw InvalidParameter("graded instance needs N >= 0");
    std::uint64_t offset = 0;
    for (int l = 0; l <= N + 1; ++l) {
        const auto& source = l <= N ? dims : overflow_dims;
        for (const MultiIndex& n : indices_of_level(d, l)) {
            auto it = source.find(n);
            if (it == source.end()) throw InvalidParameter("missing dimension for block " + to_string(n));
            if (l <= N && it->second == 0) throw InvalidParameter("block " + to_string(n) + " has dimension 0");
            index_[n] = blocks_.size();
            blocks_.push_back(n);
            dims_.push_back(it->second);
            offsets_.push_back(static_cast<std::uint32_t>(offset));
            offset += it->second;
            if (offset > 0xffffffffULL) throw InvalidParameter("graded instance too large");
        }
    }
    const std::size_t expected = blocks_.size();
    if (dims.size() + overflow_dims.size() != expected)
        throw InvalidParameter("dimension map has blocks outside the truncation");
    columns_.assign(static_cast<std::size_t>(d), std::vector<SparseVec>(dim_B(N)));
}

std::uint32_t GradedInstance::block_dim(const MultiIndex& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw InvalidParameter("unknown block " + to_string(n));
    return dims_[it->second];
}

std::uint32_t GradedInstance::block_offset(const MultiIndex& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw InvalidParameter("unknown block " + to_string(n));
    return offsets_[it->second];
}

const MultiIndex& GradedInstance::block_of(std::uint32_t coord) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coord);
    // Zero-dimensional overflow blocks share offsets; step back to the one that owns coord.
    std::size_t k = static_cast<std::size_t>(it - offsets_.begin());
    while (k > 0 && (coord < offsets_[k - 1] || coord >= offsets_[k - 1] + dims_[k - 1])) --k;
    if (k == 0) throw InvalidParameter("coordinate outside the instance");
    return blocks_[k - 1];
}

std::uint32_t GradedInstance::dim_B(int L) const {
    std::uint32_t total = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k)
        if (level(blocks_[k]) <= L) total += dims_[k];
    return total;
}

const SparseVec& GradedInstance::column(int j, std::uint32_t coord) const {
    return columns_.at(static_cast<std::size_t>(j)).at(coord);
}

void GradedInstance::set_column(int j, std::uint32_t coord, SparseVec v) {
    v = canonicalize(*F_, std::move(v));
    if (!v.empty() && max_coord(v) >= total_dim()) throw InvalidParameter("column entry outside the instance");
    columns_.at(static_cast<std::size_t>(j)).at(coord) = std::move(v);
}

SparseVec GradedInstance::apply(int j, const SparseVec& v) const {
    const std::uint32_t limit = dim_B(N_);
    SparseVec acc;
    for (const auto& [i, c] : v) {
        if (i >= limit) throw CheckFailed("operator applied outside B_N");
        for (const auto& [k, x] : column(j, i)) acc.emplace_back(k, F_->mul(c, x));
    }
    return canonicalize(*F_, std::move(acc));
}

DenseMatrix GradedInstance::block(int j, const MultiIndex& source, const MultiIndex& target) const {
    const std::uint32_t so = block_offset(source), sd = block_dim(source);
    const std::uint32_t to = block_offset(target), td = block_dim(target);
    DenseMatrix m(td, sd);
    for (std::uint32_t b = 0; b < sd; ++b)
        for (const auto& [i, c] : column(j, so + b))
            if (i >= to && i < to + td) m.at(i - to, b) = c;
    return m;
}

void GradedInstance::set_block(int j, const MultiIndex& source, const MultiIndex& target, const DenseMatrix& m) {
    const std::uint32_t so = block_offset(source), sd = block_dim(source);
    const std::uint32_t to = block_offset(target), td = block_dim(target);
    if (level(source) > N_) throw InvalidParameter("overflow block cannot be a source");
    if (m.rows != td || m.cols != sd) throw InvalidParameter("block shape mismatch");
    for (std::uint32_t b = 0; b < sd; ++b) {
        SparseVec col;
        for (const auto& e : column(j, so + b))
            if (e.first < to || e.first >= to + td) col.push_back(e);
        for (std::uint32_t a = 0; a < td; ++a)
            if (!F_->is_zero(m.at(a, b))) col.emplace_back(to + a, m.at(a, b));
        set_column(j, so + b, std::move(col));
    }
}

SparseVec GradedInstance::project(const SparseVec& v, const MultiIndex& n) const {
    const std::uint32_t o = block_offset(n), dim = block_dim(n);
    SparseVec out;
    for (const auto& [i, c] : v)
        if (i >= o && i < o + dim) out.emplace_back(i - o, c);
    return out;
}

bool operator==(const GradedInstance& a, const GradedInstance& b) {
    return *a.F_ == *b.F_ && a.d_ == b.d_ && a.N_ == b.N_ && a.blocks_ == b.blocks_ && a.dims_ == b.dims_ &&
           a.columns_ == b.columns_;
}

bool HypothesisReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const HypothesisResult& r) { return r.passed; });
}

const HypothesisResult& HypothesisReport::get(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return r;
    throw InvalidParameter("no hypothesis named " + name);
}

std::optional<SparseVec> kernel_outside_prefix(const Field& F, const std::vector<SparseVec>& columns,
                                               std::uint32_t cols, std::uint32_t rows_from,
                                               std::uint32_t row_dim, std::uint32_t prefix) {
    std::vector<SparseVec> projected(cols);
    for (std::uint32_t c = 0; c < cols; ++c)
        for (const auto& e : columns.at(c))
            if (e.first >= rows_from) projected[c].push_back(e);
    for (SparseVec& k : kernel_of_columns(F, row_dim, projected))
        if (!k.empty() && max_coord(k) >= prefix) return std::move(k);
    return std::nullopt;
}

namespace {

struct Construction {
    std::map<MultiIndex, std::vector<SparseVec>> A;
    // images[j][i] = T^i applied to each member of A_j
    std::map<MultiIndex, std::map<MultiIndex, std::vector<SparseVec>>> images;
    std::vector<MultiIndex> h5_failures;
    std::vector<MultiIndex> dependent;
    SparseVec h5_witness;
    SparseVec dependent_image;
    std::string first_dependency;
};

// T^i = T_1^{i_1} ... T_d^{i_d}; T^i(a) = T_k(T^{i - e_k}(a)) for the first k with i_k > 0.
void compute_images(const GradedInstance& inst, const MultiIndex& j, Construction& c) {
    const int d = inst.d();
    auto& table = c.images[j];
    table[MultiIndex(static_cast<std::size_t>(d), 0)] = c.A[j];
    for (int l = 1; l + level(j) <= inst.N(); ++l)
        for (const MultiIndex& i : indices_of_level(d, l)) {
            int k = 0;
            while (i[static_cast<std::size_t>(k)] == 0) ++k;
            const auto& prev = table.at(minus(i, unit_index(d, k)));
            std::vector<SparseVec> out;
            out.reserve(prev.size());
            for (const auto& v : prev) out.push_back(inst.apply(k, v));
            table[i] = std::move(out);
        }
}

Construction construct(const GradedInstance& inst, bool strict) {
    const Field& F = inst.field();
    Construction c;
    for (int l = 0; l <= inst.N(); ++l) {
        for (const MultiIndex& n : indices_of_level(inst.d(), l)) {
            const std::uint32_t off = inst.block_offset(n);
            const std::uint32_t dim = inst.block_dim(n);
            Echelon ech(F, dim);
            std::size_t count = 0, sum_individual = 0;
            for (const auto& [j, table] : c.images) {
                if (j == n || !leq(j, n)) continue;
                const auto& imgs = table.at(minus(n, j));
                std::vector<SparseVec> projected;
                for (const auto& v : imgs) projected.push_back(inst.project(v, n));
                sum_individual += rank_of(F, dim, projected);
                for (const auto& v : projected) {
                    ++count;
                    if (!ech.insert(v) && c.first_dependency.empty()) {
                        c.first_dependency = "dependent image of A_" + to_string(j) + " in C_" + to_string(n);
                        for (const auto& [k, x] : v) c.dependent_image.emplace_back(off + k, x);
                    }
                }
            }
            if (ech.rank() != sum_individual) {
                c.h5_failures.push_back(n);
                if (c.h5_witness.empty()) c.h5_witness = c.dependent_image;
            }
            if (ech.rank() != count) {
                c.dependent.push_back(n);
                if (strict)
                    throw ConstructionFailed("images feeding C_" + to_string(n) + " are dependent: rank " +
                                             std::to_string(ech.rank()) + " of " + std::to_string(count) +
                                             (c.first_dependency.empty() ? "" : "; " + c.first_dependency));
            }
            std::vector<SparseVec> An;
            for (std::uint32_t k : ech.non_pivots()) An.push_back(unit_vector(off + k, F.one()));
            c.A[n] = std::move(An);
            compute_images(inst, n, c);
        }
    }
    return c;
}

HypothesisResult named(std::string name) {
    HypothesisResult r;
    r.name = std::move(name);
    return r;
}

} // namespace

HypothesisReport check_hypotheses(const GradedInstance& inst) {
    const Field& F = inst.field();
    const int d = inst.d(), N = inst.N();
    HypothesisReport report;
    const MultiIndex zero(static_cast<std::size_t>(d), 0);

    {
        HypothesisResult r = named("H1");
        for (int l = 1; l <= N && r.passed; ++l) {
            const std::uint64_t below = inst.dim_B(l - 1);
            for (const MultiIndex& n : indices_of_level(d, l))
                if (inst.block_dim(n) <= below) {
                    r.passed = false;
                    r.detail = "dim C_" + to_string(n) + " = " + std::to_string(inst.block_dim(n)) +
                               " <= " + std::to_string(below);
                    break;
                }
        }
        report.results.push_back(std::move(r));
    }
    {
        HypothesisResult r = named("H2");
        const std::uint32_t o0 = inst.block_offset(zero), d0 = inst.block_dim(zero);
        for (int j = 0; j < d && r.passed; ++j) {
            const MultiIndex ej = unit_index(d, j);
            const std::uint32_t oe = inst.block_offset(ej), de = inst.block_dim(ej);
            std::vector<SparseVec> cols;
            for (std::uint32_t b = 0; b < d0 && r.passed; ++b) {
                const SparseVec& col = inst.column(j, o0 + b);
                for (const auto& e : col)
                    if (e.first < oe || e.first >= oe + de) {
                        r.passed = false;
                        r.detail = "T_" + std::to_string(j + 1) + "(C_0) leaves C_e" + std::to_string(j + 1);
                        r.witness = unit_vector(o0 + b, F.one());
                        break;
                    }
                cols.push_back(col);
            }
            if (!r.passed) break;
            auto ker = kernel_of_columns(F, inst.total_dim(), cols);
            if (!ker.empty()) {
                r.passed = false;
                r.detail = "T_" + std::to_string(j + 1) + " is not injective on C_0";
                for (auto& e : ker.front()) e.first += o0;
                r.witness = ker.front();
            }
        }
        report.results.push_back(std::move(r));
    }
    {
        HypothesisResult r = named("H3");
        for (int l = 1; l <= N && r.passed; ++l)
            for (const MultiIndex& n : indices_of_level(d, l)) {
                const std::uint32_t o = inst.block_offset(n);
                for (int j = 0; j < d && r.passed; ++j) {
                    const MultiIndex ej = unit_index(d, j);
                    std::vector<MultiIndex> allowed{n, plus(n, ej)};
                    if (n[static_cast<std::size_t>(j)] > 0) allowed.push_back(minus(n, ej));
                    for (std::uint32_t b = 0; b < inst.block_dim(n) && r.passed; ++b)
                        for (const auto& e : inst.column(j, o + b)) {
                            const MultiIndex& m = inst.block_of(e.first);
                            if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
                                r.passed = false;
                                r.detail = "T_" + std::to_string(j + 1) + " maps C_" + to_string(n) + " into C_" +
                                           to_string(m);
                                r.witness = unit_vector(o + b, F.one());
                                break;
                            }
                        }
                }
                if (!r.passed) break;
            }
        report.results.push_back(std::move(r));
    }
    {
        HypothesisResult r = named("H4");
        for (int j = 0; j < d && r.passed; ++j) {
            std::vector<SparseVec> cols(inst.dim_B(N));
            for (std::uint32_t c = 0; c < cols.size(); ++c) cols[c] = inst.column(j, c);
            for (int L = 0; L < N; ++L) {
                const std::uint32_t src = inst.dim_B(L + 1);
                auto w = kernel_outside_prefix(F, cols, src, src, inst.total_dim(), inst.dim_B(L));
                if (w) {
                    r.passed = false;
                    r.detail = "f in B_" + std::to_string(L + 1) + " with T_" + std::to_string(j + 1) +
                               "(f) in B_" + std::to_string(L + 1) + " but f not in B_" + std::to_string(L);
                    r.witness = *w;
                    break;
                }
            }
        }
        report.results.push_back(std::move(r));
    }
    {
        HypothesisResult r = named("commutation");
        if (N >= 1 && d >= 2) {
            const std::uint32_t limit = inst.dim_B(N - 1);
            for (std::uint32_t c = 0; c < limit && r.passed; ++c)
                for (int a = 0; a < d && r.passed; ++a)
                    for (int b = a + 1; b < d; ++b) {
                        SparseVec ab, ba;
                        try {
                            ab = inst.apply(a, inst.column(b, c));
                            ba = inst.apply(b, inst.column(a, c));
                        } catch (const CheckFailed&) {
                            r.passed = false;
                            r.detail = "image of B_{N-1} leaves B_N";
                            r.witness = unit_vector(c, F.one());
                            break;
                        }
                        if (ab != ba) {
                            r.passed = false;
                            r.detail = "T_" + std::to_string(a + 1) + " and T_" + std::to_string(b + 1) +
                                       " do not commute";
                            r.witness = unit_vector(c, F.one());
                            break;
                        }
                    }
        } else {
            r.detail = "nothing to compare";
        }
        report.results.push_back(std::move(r));
    }
    {
        HypothesisResult r = named("H5");
        if (d == 1) {
            r.checked = false;
            r.detail = "not required for d = 1";
        } else {
            try {
                const Construction c = construct(inst, false);
                if (!c.h5_failures.empty()) {
                    r.passed = false;
                    r.detail = "images pi_n T^(n-j)(A_j) not independent in C_" + to_string(c.h5_failures.front());
                    r.witness = c.h5_witness;
                }
            } catch (const Error& e) {
                r.passed = false;
                r.detail = std::string("not evaluable: ") + e.what();
            }
        }
        report.results.push_back(std::move(r));
    }
    return report;
}

BuildResult build_basis(const GradedInstance& inst, BuildMode mode) {
    const Field& F = inst.field();
    const bool strict = mode == BuildMode::Strict;
    Construction c = construct(inst, strict);
    BuildResult out;
    out.h5_failures = c.h5_failures;
    for (const auto& [j, table] : c.images)
        for (const auto& [i, vecs] : table)
            for (std::uint32_t a = 0; a < vecs.size(); ++a) out.family.push_back({i, j, a, vecs[a]});
    out.A = std::move(c.A);

    out.tops_ok = true;
    for (const BasisMember& m : out.family) {
        const MultiIndex target = plus(m.i, m.j);
        const int top = level(target);
        bool hit = false;
        for (const auto& [k, x] : m.vec) {
            const MultiIndex& b = inst.block_of(k);
            if (level(b) > top || (level(b) == top && b != target)) {
                hit = false;
                out.tops_ok = false;
                break;
            }
            if (b == target) hit = true;
        }
        if (!hit) out.tops_ok = false;
        if (!out.tops_ok) {
            if (out.failure.empty())
                out.failure = "T^" + to_string(m.i) + "(A_" + to_string(m.j) + ") member " + std::to_string(m.a) +
                              " has top component outside C_" + to_string(target);
            break;
        }
    }

    std::set<SparseVec> seen;
    out.disjoint = true;
    for (const BasisMember& m : out.family)
        if (!seen.insert(m.vec).second) {
            out.disjoint = false;
            if (out.failure.empty())
                out.failure = "T^" + to_string(m.i) + "(A_" + to_string(m.j) + ") repeats an earlier member";
            break;
        }

    Echelon ech(F, inst.total_dim());
    for (const BasisMember& m : out.family) ech.insert(m.vec);
    out.rank = ech.rank();
    const std::uint32_t target = inst.dim_B(inst.N());
    const bool full = out.rank == target && out.family.size() == target;
    if (!full && out.failure.empty())
        out.failure = "family of " + std::to_string(out.family.size()) + " vectors has rank " +
                      std::to_string(out.rank) + ", dim B_N = " + std::to_string(target);
    out.verified = out.tops_ok && out.disjoint && full;
    if (strict && !out.verified) throw ConstructionFailed(out.failure);
    return out;
}

namespace {

FqElem random_elem(const Field& F, std::mt19937_64& rng) { return {static_cast<std::uint32_t>(rng() % F.q())}; }

DenseMatrix random_matrix(const Field& F, std::mt19937_64& rng, std::size_t r, std::size_t c) {
    DenseMatrix m(r, c);
    for (auto& x : m.data) x = random_elem(F, rng);
    return m;
}

DenseMatrix random_invertible(const Field& F, std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        DenseMatrix m = random_matrix(F, rng, n, n);
        if (dense_rank(F, m) == n) return m;
    }
}

void check_profile(int N, const std::vector<std::uint32_t>& profile) {
    if (profile.size() != static_cast<std::size_t>(N) + 1)
        throw InvalidParameter("growth profile needs N + 1 entries");
    for (std::uint32_t x : profile)
        if (x == 0) throw InvalidParameter("growth profile entries must be positive");
}

// Graded module spanned by "generators", each present in every block above
// one of its minimal degrees; T_l moves (g, n) to (g, n + e_l) plus
// weights[l][n_l] (g, n).
struct Pattern {
    std::vector<std::vector<MultiIndex>> minimal;
    std::vector<std::vector<FqElem>> weights;
};

bool present(const std::vector<MultiIndex>& mins, const MultiIndex& n) {
    return std::any_of(mins.begin(), mins.end(), [&](const MultiIndex& m) { return leq(m, n); });
}

GradedInstance pattern_instance(std::shared_ptr<const Field> F, int d, int N, const Pattern& pat,
                                std::mt19937_64* conjugate) {
    std::map<MultiIndex, std::vector<std::size_t>> members;
    std::map<MultiIndex, std::uint32_t> dims, overflow;
    for (int l = 0; l <= N + 1; ++l)
        for (const MultiIndex& n : indices_of_level(d, l)) {
            auto& list = members[n];
            for (std::size_t g = 0; g < pat.minimal.size(); ++g)
                if (present(pat.minimal[g], n)) list.push_back(g);
            (l <= N ? dims : overflow)[n] = static_cast<std::uint32_t>(list.size());
        }
    GradedInstance inst(F, d, N, dims, overflow);
    std::map<MultiIndex, DenseMatrix> S, Sinv;
    if (conjugate)
        for (const MultiIndex& n : inst.blocks()) {
            S[n] = random_invertible(*F, *conjugate, inst.block_dim(n));
            Sinv[n] = *dense_inverse(*F, S[n]);
        }
    for (int l = 0; l <= N; ++l)
        for (const MultiIndex& n : indices_of_level(d, l)) {
            const auto& src = members[n];
            for (int j = 0; j < d; ++j) {
                const MultiIndex up = plus(n, unit_index(d, j));
                const auto& dst = members[up];
                DenseMatrix shift(dst.size(), src.size());
                DenseMatrix diag(src.size(), src.size());
                const FqElem w = pat.weights.empty() ? F->zero()
                                                     : pat.weights[static_cast<std::size_t>(j)]
                                                                  [static_cast<std::size_t>(n[static_cast<std::size_t>(j)])];
                for (std::size_t b = 0; b < src.size(); ++b) {
                    const auto pos = std::find(dst.begin(), dst.end(), src[b]) - dst.begin();
                    shift.at(static_cast<std::size_t>(pos), b) = F->one();
                    diag.at(b, b) = w;
                }
                if (conjugate) {
                    shift = operator_mul(*F, operator_mul(*F, S[up], shift), Sinv[n]);
                    diag = operator_mul(*F, operator_mul(*F, S[n], diag), Sinv[n]);
                }
                inst.set_block(j, n, up, shift);
                if (!F->is_zero(w)) inst.set_block(j, n, n, diag);
            }
        }
    return inst;
}

GradedInstance random_tridiagonal(std::shared_ptr<const Field> F, std::mt19937_64& rng, int N,
                                  const std::vector<std::uint32_t>& profile) {
    std::map<MultiIndex, std::uint32_t> dims, overflow;
    for (int l = 0; l <= N; ++l) dims[{l}] = profile[static_cast<std::size_t>(l)];
    overflow[{N + 1}] = 2 * profile.back();
    GradedInstance inst(F, 1, N, dims, overflow);
    for (int l = 0; l <= N; ++l) {
        const std::uint32_t dn = inst.block_dim({l}), du = inst.block_dim({l + 1});
        DenseMatrix up;
        do {
            up = random_matrix(*F, rng, du, dn);
        } while (dense_rank(*F, up) != dn);
        inst.set_block(0, {l}, {l + 1}, up);
        if (l > 0) {
            inst.set_block(0, {l}, {l}, random_matrix(*F, rng, dn, dn));
            inst.set_block(0, {l}, {l - 1}, random_matrix(*F, rng, inst.block_dim({l - 1}), dn));
        }
    }
    return inst;
}

GradedInstance random_free(std::shared_ptr<const Field> F, std::mt19937_64& rng, int d, int N,
                           const std::vector<std::uint32_t>& profile) {
    Pattern pat;
    std::map<MultiIndex, std::int64_t> gens;
    for (int l = 0; l <= N; ++l)
        for (const MultiIndex& n : indices_of_level(d, l)) {
            std::int64_t below = 0;
            for (const auto& [m, a] : gens)
                if (leq(m, n)) below += a;
            const std::int64_t a = static_cast<std::int64_t>(profile[static_cast<std::size_t>(l)]) - below;
            if (a < 0) throw InvalidParameter("growth profile not reachable by a free pattern at " + to_string(n));
            gens[n] = a;
            for (std::int64_t k = 0; k < a; ++k) pat.minimal.push_back({n});
        }
    pat.weights.assign(static_cast<std::size_t>(d), std::vector<FqElem>(static_cast<std::size_t>(N) + 1));
    for (auto& w : pat.weights)
        for (std::size_t k = 1; k < w.size(); ++k) w[k] = random_elem(*F, rng);
    return pattern_instance(F, d, N, pat, &rng);
}

} // namespace

RandomInstance random_instance(std::shared_ptr<const Field> F, std::uint64_t seed, int d, int N,
                               const std::vector<std::uint32_t>& profile, int max_attempts) {
    if (d < 1 || N < 1) throw InvalidParameter("random instances need d >= 1 and N >= 1");
    check_profile(N, profile);
    std::uint64_t below = 0;
    for (int l = 0; l <= N; ++l) {
        const std::uint64_t blocks = indices_of_level(d, l).size();
        if (l > 0 && profile[static_cast<std::size_t>(l)] <= below)
            throw InvalidParameter("growth profile violates H1 at level " + std::to_string(l));
        below += blocks * profile[static_cast<std::size_t>(l)];
    }
    std::mt19937_64 rng(seed);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        GradedInstance inst = d == 1 ? random_tridiagonal(F, rng, N, profile) : random_free(F, rng, d, N, profile);
        if (check_hypotheses(inst).all_passed()) return {std::move(inst), attempt};
    }
    throw BudgetExhausted("no instance passed the hypotheses in " + std::to_string(max_attempts) + " attempts");
}

GradedInstance h5_counterexample(std::shared_ptr<const Field> F) {
    Pattern pat;
    pat.minimal.push_back({{0, 0}});
    pat.minimal.push_back({{1, 0}, {0, 1}});
    for (const MultiIndex& n : indices_of_level(2, 2))
        for (int k = 0; k < 4; ++k) pat.minimal.push_back({n});
    return pattern_instance(std::move(F), 2, 2, pat, nullptr);
}

} // namespace hecke
