#include "hecke/serialize.hpp"

#include "hecke/errors.hpp"

namespace hecke {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Field& F) { return {{"p", F.p()}, {"deg", F.deg()}, {"modulus", F.modulus()}}; }

Json to_json(const CosetPoint& P) {
    Json param = Json::array();
    for (FqElem x : P.param) param.push_back(x.value);
    return {{"form", P.form == CosetForm::Plus ? "plus" : "minus"}, {"n", P.n}, {"param", param}};
}

CosetPoint point_from_json(const Json& j) {
    CosetPoint P;
    const std::string form = j.at("form").get<std::string>();
    if (form != "plus" && form != "minus") throw InvalidParameter("coset form must be plus or minus");
    P.form = form == "plus" ? CosetForm::Plus : CosetForm::Minus;
    P.n = j.at("n").get<int>();
    for (const auto& x : j.at("param")) P.param.push_back(FqElem{x.get<std::uint32_t>()});
    if (P.n < 0 || P.param.size() != static_cast<std::size_t>(2 * P.n))
        throw InvalidParameter("coset parameter length must be 2n");
    if (P.form == CosetForm::Minus && (P.n == 0 || P.param[0].value != 0))
        throw InvalidParameter("minus points need n >= 1 and zero constant term");
    return P;
}

Json to_json(const SparseVec& v) {
    Json out = Json::array();
    for (const auto& [i, c] : v) out.push_back({i, c.value});
    return out;
}

Json weight_to_json(const WeightShape& S, const WeightVec& v) {
    Json out = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].value != 0) out.push_back({S.tuple(i), v[i].value});
    return out;
}

WeightVec weight_from_json(const WeightShape& S, const Json& j) {
    WeightVec v(S.dim());
    for (const auto& e : j) {
        const auto value = e.at(1).get<std::uint32_t>();
        if (value >= S.field().q()) throw InvalidParameter("field element out of range");
        v[S.index(e.at(0).get<std::vector<std::uint32_t>>())] = FqElem{value};
    }
    return v;
}

Json shape_to_json(const WeightShape& S) { return {{"field", to_json(S.field())}, {"r", S.r()}}; }

Json to_json(const InducedSpace& V, const InducedFn& f) {
    Json entries = Json::array();
    for (const auto& [idx, v] : f.entries)
        entries.push_back({{"point", to_json(V.point(idx))}, {"value", weight_to_json(V.shape(), v)}});
    return {{"schema", kInducedFnSchema}, {"shape", shape_to_json(V.shape())}, {"entries", entries}};
}

InducedFn induced_from_json(const InducedSpace& V, const Json& j) {
    if (j.value("schema", "") != kInducedFnSchema) throw InvalidParameter("not an induced function document");
    if (j.at("shape") != shape_to_json(V.shape())) throw InvalidParameter("induced function has a different shape");
    InducedFn f;
    for (const auto& e : j.at("entries")) {
        const CosetPoint P = point_from_json(e.at("point"));
        for (FqElem x : P.param)
            if (x.value >= V.field().q()) throw InvalidParameter("coset parameter out of range");
        WeightVec v = weight_from_json(V.shape(), e.at("value"));
        if (!is_zero(v)) f.entries[V.index(P)] = std::move(v);
    }
    return f;
}

Json to_json(const ConditionReport& r) {
    return {{"name", r.name},
            {"passed", r.passed},
            {"detail", r.detail},
            {"witness", to_json(r.witness)},
            {"rows", r.rows}};
}

Json to_json(const TauFnEntry& e) {
    Json expansion = Json::array();
    for (const auto& [m, c] : e.expansion) expansion.push_back({m, c.value});
    return {{"n", e.n},
            {"next", e.next},
            {"other", e.other},
            {"coeff_next", e.coeff_next.value},
            {"coeff_other", e.coeff_other.value},
            {"expected_other", e.expected_other.value},
            {"c_n", e.c_n.value},
            {"expansion", expansion},
            {"exact", e.exact},
            {"passed", e.passed}};
}

Json to_json(const FreenessCertificate& c) {
    Json params = {{"p", c.params.p},
                   {"deg", c.params.deg},
                   {"r", c.params.r},
                   {"N", c.params.N},
                   {"precision", c.params.precision},
                   {"w0", c.params.w0 == W0Choice::Standard ? "standard" : "alternative"},
                   {"w0_matrix", to_string(c.params.w0)}};
    Json conditions = Json::array();
    for (const auto& r : c.conditions) conditions.push_back(to_json(r));
    Json table = Json::array();
    for (const auto& e : c.tau_table) table.push_back(to_json(e));
    Json basis = nullptr;
    Json invariants = nullptr;
    if (c.basis) {
        Json A = Json::array();
        std::vector<std::size_t> sizes;
        for (const auto& set : c.basis->A) {
            Json coords = Json::array();
            for (const auto& v : set) coords.push_back(v.front().first);
            A.push_back(coords);
            sizes.push_back(set.size());
        }
        basis = {{"A", A},
                 {"sizes", sizes},
                 {"pivots", c.basis->pivots},
                 {"family_size", c.basis->family_size},
                 {"rank", c.basis->rank}};
        bool increments = true;
        std::uint64_t weighted = 0;
        const std::size_t N = sizes.size() - 1;
        for (std::size_t n = 1; n <= N; ++n) increments = increments && sizes[n] == c.dims[n] - c.dims[n - 1];
        for (std::size_t j = 0; j <= N; ++j) weighted += (N + 1 - j) * sizes[j];
        invariants = {{"A0_is_C0", sizes[0] == c.dims[0]},
                      {"A_n_is_increment", increments},
                      {"weighted_sum_is_dim_B", weighted == c.dim_B}};
    }
    return {{"schema", kCertificateSchema},
            {"params", params},
            {"field", to_json(Field(c.params.p, c.params.deg))},
            {"dims", c.dims},
            {"dim_B", c.dim_B},
            {"conditions", conditions},
            {"lambda", c.lambda.value},
            {"tau_table", table},
            {"basis", basis},
            {"basis_failure", c.basis_failure},
            {"invariants", invariants},
            {"scope", "truncation at level N; the infinite-rank statement is not finitely checkable"},
            {"passed", c.passed}};
}

namespace {

Json dense_to_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).value);
        rows.push_back(row);
    }
    return rows;
}

bool is_zero_matrix(const DenseMatrix& m) {
    for (FqElem x : m.data)
        if (x.value != 0) return false;
    return true;
}

} // namespace

Json to_json(const GradedInstance& inst) {
    Json dims = Json::array(), overflow = Json::array();
    for (const MultiIndex& n : inst.blocks())
        (inst.is_overflow(n) ? overflow : dims).push_back({{"n", n}, {"dim", inst.block_dim(n)}});
    Json ops = Json::array();
    for (int j = 0; j < inst.d(); ++j) {
        Json blocks = Json::array();
        for (const MultiIndex& s : inst.blocks()) {
            if (inst.is_overflow(s)) continue;
            for (const MultiIndex& t : inst.blocks()) {
                if (inst.block_dim(t) == 0) continue;
                const DenseMatrix m = inst.block(j, s, t);
                if (is_zero_matrix(m)) continue;
                blocks.push_back({{"source", s}, {"target", t}, {"matrix", dense_to_json(m)}});
            }
        }
        ops.push_back(blocks);
    }
    return {{"schema", kGradedInstanceSchema},
            {"field", to_json(inst.field())},
            {"d", inst.d()},
            {"N", inst.N()},
            {"dims", dims},
            {"overflow_dims", overflow},
            {"operators", ops}};
}

GradedInstance graded_from_json(const Json& j) {
    if (j.value("schema", "") != kGradedInstanceSchema) throw InvalidParameter("not a graded instance document");
    const auto& fj = j.at("field");
    auto F = std::make_shared<const Field>(fj.at("p").get<std::uint32_t>(), fj.at("deg").get<std::uint32_t>());
    if (fj.contains("modulus") && fj.at("modulus").get<std::vector<std::uint32_t>>() != F->modulus())
        throw InvalidParameter("field modulus differs from the canonical choice");
    std::map<MultiIndex, std::uint32_t> dims, overflow;
    for (const auto& e : j.at("dims")) dims[e.at("n").get<MultiIndex>()] = e.at("dim").get<std::uint32_t>();
    for (const auto& e : j.at("overflow_dims")) overflow[e.at("n").get<MultiIndex>()] = e.at("dim").get<std::uint32_t>();
    const int d = j.at("d").get<int>();
    GradedInstance inst(F, d, j.at("N").get<int>(), dims, overflow);
    const auto& ops = j.at("operators");
    if (ops.size() != static_cast<std::size_t>(d)) throw InvalidParameter("expected one block list per operator");
    for (int k = 0; k < d; ++k)
        for (const auto& b : ops[static_cast<std::size_t>(k)]) {
            const MultiIndex s = b.at("source").get<MultiIndex>(), t = b.at("target").get<MultiIndex>();
            const auto& rows = b.at("matrix");
            DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t r = 0; r < m.rows; ++r) {
                if (rows[r].size() != m.cols) throw InvalidParameter("ragged block matrix");
                for (std::size_t c = 0; c < m.cols; ++c) {
                    const auto x = rows[r][c].get<std::uint32_t>();
                    if (x >= F->q()) throw InvalidParameter("field element out of range");
                    m.at(r, c) = FqElem{x};
                }
            }
            inst.set_block(k, s, t, m);
        }
    return inst;
}

Json to_json(const HypothesisReport& r) {
    Json results = Json::array();
    for (const auto& h : r.results)
        results.push_back({{"name", h.name},
                           {"checked", h.checked},
                           {"passed", h.passed},
                           {"detail", h.detail},
                           {"witness", to_json(h.witness)}});
    return {{"schema", kHypothesisReportSchema}, {"results", results}, {"all_passed", r.all_passed()}};
}

Json to_json(const BuildResult& r) {
    Json A = Json::array();
    for (const auto& [n, vecs] : r.A) {
        Json vs = Json::array();
        for (const auto& v : vecs) vs.push_back(to_json(v));
        A.push_back({{"n", n}, {"size", vecs.size()}, {"vectors", vs}});
    }
    return {{"schema", kBuildReportSchema},
            {"A", A},
            {"family_size", r.family.size()},
            {"rank", r.rank},
            {"disjoint", r.disjoint},
            {"tops_ok", r.tops_ok},
            {"h5_failures", r.h5_failures},
            {"verified", r.verified},
            {"failure", r.failure},
            {"scope", "basis of the truncation B_N only"}};
}

} // namespace hecke
