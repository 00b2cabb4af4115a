#include "cli.hpp"

#include "hecke/errors.hpp"
#include "hecke/freeness.hpp"
#include "hecke/graded.hpp"
#include "hecke/parallel.hpp"
#include "hecke/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hecke::cli {

namespace {

constexpr const char* kFieldInfoSchema = "hecke-sl2/field-info/1";
constexpr const char* kWeightInfoSchema = "hecke-sl2/weight-info/1";
constexpr const char* kFuzzSchema = "hecke-sl2/engine-fuzz/1";
constexpr const char* kErrorSchema = "hecke-sl2/error/1";

struct Config {
    std::uint32_t p = 0;
    std::uint32_t deg = 1;
    std::string r;
    int levels = 0;
    std::int64_t precision = 0;
    std::uint64_t seed = 1;
    std::string in;
    std::string out;
    int n = 0;
    int d = 1;
    std::string w0 = "standard";
    int count = 100;
    std::string profile;
    bool naive = false;
    std::string emit;
};

struct Outcome {
    Json doc;
    std::string summary;
    int code = 0;
};

std::vector<std::uint32_t> parse_list(const std::string& s, const char* what) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidParameter(std::string("malformed ") + what + " list: " + s);
        out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    return out;
}

std::vector<std::uint32_t> weight_digits(const Config& c) {
    if (c.r.empty()) return std::vector<std::uint32_t>(c.deg, 0);
    return parse_list(c.r, "weight digit");
}

W0Choice w0_choice(const Config& c) {
    if (c.w0 == "standard") return W0Choice::Standard;
    if (c.w0 == "alternative") return W0Choice::Alternative;
    throw InvalidParameter("w0 must be standard or alternative");
}

std::int64_t precision_for(const Config& c, int level) {
    const std::int64_t policy = InducedSpace::policy_precision(level);
    if (c.precision == 0) return policy;
    if (c.precision < policy)
        throw InvalidParameter("precision " + std::to_string(c.precision) + " below the policy minimum " +
                               std::to_string(policy));
    return c.precision;
}

void require_levels(const Config& c) {
    if (c.levels < 1) throw InvalidParameter("--levels must be >= 1");
}

Json read_json(const std::string& path) {
    if (path.empty()) throw InvalidParameter("--in is required");
    std::ifstream f(path);
    if (!f) throw InvalidParameter("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw InvalidParameter("malformed JSON in " + path + ": " + e.what());
    }
}

std::string shape_label(const WeightShape& S) {
    std::string r;
    for (std::uint32_t x : S.r()) r += (r.empty() ? "" : ",") + std::to_string(x);
    return "p=" + std::to_string(S.field().p()) + " deg=" + std::to_string(S.field().deg()) + " r=" + r;
}

Outcome field_info(const Config& c) {
    const Field F(c.p, c.deg);
    Outcome o;
    o.doc = {{"schema", kFieldInfoSchema}, {"field", to_json(F)}, {"q", F.q()}, {"generator", F.generator().value}};
    std::string mod;
    for (std::uint32_t x : F.modulus()) mod += (mod.empty() ? "" : ",") + std::to_string(x);
    o.summary = "field-info q=" + std::to_string(F.q()) + " modulus=[" + mod + "]";
    return o;
}

Outcome weight_info(const Config& c) {
    const Field F(c.p, c.deg);
    const WeightShape S(F, weight_digits(c));
    Outcome o;
    Json basis = Json::array();
    for (std::size_t i = 0; i < S.dim(); ++i) basis.push_back(S.tuple(i));
    o.doc = {{"schema", kWeightInfoSchema}, {"shape", shape_to_json(S)}, {"dim", S.dim()}, {"basis", basis}};
    o.summary = "weight-info " + shape_label(S) + " dim=" + std::to_string(S.dim());
    if (F.q() <= 9) {
        const StructureReport rep = structure_checks(S);
        o.doc["structure"] = {{"passed", rep.passed},
                              {"lower_orbit_rank", rep.lower_orbit_rank},
                              {"upper_fixed_dim", rep.upper_fixed_dim},
                              {"upper_fixed_is_x_line", rep.upper_fixed_is_x_line},
                              {"upper_orbit_rank", rep.upper_orbit_rank},
                              {"lower_fixed_dim", rep.lower_fixed_dim},
                              {"lower_fixed_is_y_line", rep.lower_fixed_is_y_line},
                              {"failure", rep.failure}};
        o.code = rep.passed ? 0 : 1;
        o.summary += rep.passed ? " structure: pass" : " structure: FAIL";
    } else {
        o.doc["structure"] = nullptr;
    }
    return o;
}

Outcome fn(const Config& c) {
    const Field F(c.p, c.deg);
    const WeightShape S(F, weight_digits(c));
    const int level = std::max(c.levels, std::abs(c.n));
    const InducedSpace V(S, precision_for(c, level), w0_choice(c));
    const InducedFn f = V.f_n(c.n);
    Outcome o;
    o.doc = to_json(V, f);
    o.summary = "fn n=" + std::to_string(c.n) + " " + shape_label(S) + " support=" + std::to_string(f.entries.size());
    return o;
}

Outcome tau_apply(const Config& c) {
    const Field F(c.p, c.deg);
    const WeightShape S(F, weight_digits(c));
    const Json in = read_json(c.in);
    int top = 0;
    if (in.contains("entries"))
        for (const auto& e : in.at("entries")) top = std::max(top, e.at("point").at("n").get<int>());
    const InducedSpace V(S, precision_for(c, std::max(c.levels, top + 1)), w0_choice(c));
    const InducedFn f = induced_from_json(V, in);
    const InducedFn g = V.tau_apply(f);
    Outcome o;
    o.doc = to_json(V, g);
    o.summary = "tau-apply " + shape_label(S) + " support " + std::to_string(f.entries.size()) + " -> " +
                std::to_string(g.entries.size());
    return o;
}

Outcome verify(const Config& c, const char* name) {
    require_levels(c);
    const Field F(c.p, c.deg);
    const WeightShape S(F, weight_digits(c));
    precision_for(c, c.levels);
    const FreenessCertificate cert =
        certify(S, c.levels, c.precision == 0 ? std::nullopt : std::optional<std::int64_t>(c.precision), w0_choice(c));
    Outcome o;
    o.doc = to_json(cert);
    o.code = cert.passed ? 0 : 1;
    std::string parts;
    for (const auto& r : cert.conditions) parts += " " + r.name + (r.passed ? ":pass" : ":FAIL");
    const bool table_ok =
        std::all_of(cert.tau_table.begin(), cert.tau_table.end(), [](const TauFnEntry& e) { return e.passed; });
    parts += std::string(" tau-table:") + (table_ok ? "pass" : "FAIL");
    parts += std::string(" basis:") + (cert.basis ? "rank " + std::to_string(cert.basis->rank) : "FAIL");
    o.summary = std::string(name) + " " + shape_label(S) + " N=" + std::to_string(c.levels) + parts;
    return o;
}

Outcome tau_table(const Config& c) {
    require_levels(c);
    const Field F(c.p, c.deg);
    const WeightShape S(F, weight_digits(c));
    const InducedSpace V(S, precision_for(c, c.levels), w0_choice(c));
    const auto table = tau_fn_table(V, c.levels);
    Json entries = Json::array();
    bool ok = true;
    std::string cs;
    for (const auto& e : table) {
        entries.push_back(to_json(e));
        ok = ok && e.passed;
        cs += " c" + std::to_string(e.n) + "=" + std::to_string(e.c_n.value);
    }
    Outcome o;
    o.doc = {{"schema", kTauTableSchema},
             {"shape", shape_to_json(S)},
             {"N", c.levels},
             {"w0", c.w0},
             {"lambda", expected_lambda(V).value},
             {"entries", entries},
             {"passed", ok}};
    o.code = ok ? 0 : 1;
    o.summary = "tau-table " + shape_label(S) + (ok ? " pass" : " FAIL") + cs;
    return o;
}

Outcome engine_check(const Config& c) {
    const GradedInstance inst = graded_from_json(read_json(c.in));
    const HypothesisReport rep = check_hypotheses(inst);
    Outcome o;
    o.doc = to_json(rep);
    o.code = rep.all_passed() ? 0 : 1;
    o.summary = "engine-check d=" + std::to_string(inst.d()) + " N=" + std::to_string(inst.N());
    for (const auto& h : rep.results) o.summary += " " + h.name + (h.checked ? (h.passed ? ":pass" : ":FAIL") : ":n/a");
    return o;
}

Outcome engine_build(const Config& c) {
    const GradedInstance inst = graded_from_json(read_json(c.in));
    const BuildResult res = build_basis(inst, c.naive ? BuildMode::Naive : BuildMode::Strict);
    Outcome o;
    o.doc = to_json(res);
    o.code = res.verified ? 0 : 1;
    o.summary = std::string("engine-build ") + (c.naive ? "naive" : "strict") + " rank=" + std::to_string(res.rank) +
                "/" + std::to_string(inst.dim_B(inst.N())) + (res.verified ? " verified" : " FAIL: " + res.failure);
    return o;
}

Outcome engine_fuzz(const Config& c) {
    require_levels(c);
    if (c.count < 1) throw InvalidParameter("--count must be >= 1");
    auto F = std::make_shared<const Field>(c.p == 0 ? 3u : c.p, c.deg);
    std::vector<std::uint32_t> profile;
    if (!c.profile.empty()) {
        profile = parse_list(c.profile, "profile");
    } else {
        const std::vector<std::uint32_t> base = c.d == 1 ? std::vector<std::uint32_t>{1, 2, 4, 8, 16, 32}
                                                         : std::vector<std::uint32_t>{1, 2, 6, 24, 96, 384};
        if (c.levels + 1 > static_cast<int>(base.size())) throw InvalidParameter("no default profile that deep");
        profile.assign(base.begin(), base.begin() + c.levels + 1);
    }
    struct Run {
        int attempts = 0;
        bool verified = false;
        std::string failure;
    };
    std::vector<Run> runs(static_cast<std::size_t>(c.count));
    parallel_for(runs.size(), [&](std::size_t k) {
        Run& r = runs[k];
        try {
            const RandomInstance ri = random_instance(F, c.seed + k, c.d, c.levels, profile);
            r.attempts = ri.attempts;
            r.verified = build_basis(ri.instance).verified;
        } catch (const Error& e) {
            r.failure = e.reason() + ": " + e.what();
        }
    });
    if (!c.emit.empty()) {
        std::ofstream f(c.emit);
        f << canonical_dump(to_json(random_instance(F, c.seed, c.d, c.levels, profile).instance));
        if (!f) throw InvalidParameter("cannot write " + c.emit);
    }
    Json list = Json::array();
    int verified = 0, attempts = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        list.push_back({{"seed", c.seed + k},
                        {"attempts", runs[k].attempts},
                        {"verified", runs[k].verified},
                        {"failure", runs[k].failure}});
        verified += runs[k].verified ? 1 : 0;
        attempts += runs[k].attempts;
    }
    Outcome o;
    const double rate = attempts == 0 ? 0.0 : static_cast<double>(c.count) / attempts;
    o.doc = {{"schema", kFuzzSchema},
             {"field", to_json(*F)},
             {"d", c.d},
             {"N", c.levels},
             {"profile", profile},
             {"runs", list},
             {"verified", verified},
             {"attempts", attempts},
             {"acceptance_rate", rate},
             {"all_verified", verified == c.count}};
    o.code = verified == c.count ? 0 : 1;
    std::ostringstream s;
    s << "engine-fuzz d=" << c.d << " N=" << c.levels << " verified " << verified << "/" << c.count
      << " acceptance rate " << rate;
    o.summary = s.str();
    return o;
}

int code_for(const Error& e) {
    if (e.reason() == "CheckFailed" || e.reason() == "ConstructionFailed" || e.reason() == "BudgetExhausted")
        return 1;
    if (e.reason() == "InsufficientPrecision") return 3;
    return 2;
}

void report_error(std::ostream& err, const std::string& reason, const std::string& message) {
    err << Json{{"schema", kErrorSchema}, {"reason", reason}, {"message", message}}.dump() << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact mod-p compact induction for SL2 and its Hecke freeness certificates", "hecke-sl2"};
    app.require_subcommand(1);
    Config c;

    auto add_field = [&](CLI::App* s) {
        s->add_option("--p", c.p, "residue characteristic")->required();
        s->add_option("--deg", c.deg, "residue degree")->capture_default_str();
    };
    auto add_shape = [&](CLI::App* s) {
        add_field(s);
        s->add_option("--r", c.r, "weight digits, comma separated (default all zero)");
        s->add_option("--w0", c.w0, "Weyl element: standard or alternative")->capture_default_str();
        s->add_option("--precision", c.precision, "series precision (default 2N+6)");
    };
    auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out, "output JSON path (default stdout)"); };

    auto* s_field = app.add_subcommand("field-info", "field modulus and order");
    add_field(s_field);
    add_out(s_field);
    auto* s_weight = app.add_subcommand("weight-info", "weight basis and structure checks");
    add_field(s_weight);
    s_weight->add_option("--r", c.r, "weight digits, comma separated");
    add_out(s_weight);
    auto* s_fn = app.add_subcommand("fn", "the I_S(1)-invariant function f_n");
    add_shape(s_fn);
    s_fn->add_option("--n", c.n, "index of f_n")->required();
    s_fn->add_option("--levels", c.levels, "truncation level for the precision policy");
    add_out(s_fn);
    auto* s_tau = app.add_subcommand("tau-apply", "apply tau to an induced function");
    add_shape(s_tau);
    s_tau->add_option("--in", c.in, "input induced function")->required();
    s_tau->add_option("--levels", c.levels, "truncation level for the precision policy");
    add_out(s_tau);
    auto* s_verify = app.add_subcommand("verify", "C1-C4, tau(f_n) table and free basis certificate");
    auto* s_basis = app.add_subcommand("free-basis", "free basis certificate");
    auto* s_table = app.add_subcommand("tau-table", "expansion of tau(f_n) for |n| <= N-1");
    for (auto* s : {s_verify, s_basis, s_table}) {
        add_shape(s);
        s->add_option("--levels", c.levels, "truncation level N")->required();
        add_out(s);
    }
    auto* s_check = app.add_subcommand("engine-check", "hypotheses H1-H5 of a graded instance");
    auto* s_build = app.add_subcommand("engine-build", "inductive basis construction for a graded instance");
    for (auto* s : {s_check, s_build}) {
        s->add_option("--in", c.in, "graded instance JSON")->required();
        add_out(s);
    }
    s_build->add_flag("--naive", c.naive, "keep going when the images feeding a block are dependent");
    auto* s_fuzz = app.add_subcommand("engine-fuzz", "seeded random instances through check, build, verify");
    s_fuzz->add_option("--p", c.p, "residue characteristic (default 3)");
    s_fuzz->add_option("--deg", c.deg, "residue degree")->capture_default_str();
    s_fuzz->add_option("--d", c.d, "number of operators")->capture_default_str();
    s_fuzz->add_option("--levels", c.levels, "truncation level N")->required();
    s_fuzz->add_option("--seed", c.seed, "first seed")->capture_default_str();
    s_fuzz->add_option("--count", c.count, "number of seeds")->capture_default_str();
    s_fuzz->add_option("--profile", c.profile, "block dimension per level, comma separated");
    s_fuzz->add_option("--emit", c.emit, "write the first instance to this path");
    add_out(s_fuzz);

    std::vector<const char*> argv{"hecke-sl2"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, "UsageError", e.what());
        return 2;
    }

    Outcome o;
    try {
        CLI::App* s = app.get_subcommands().front();
        const std::string name = s->get_name();
        if (name == "field-info") o = field_info(c);
        else if (name == "weight-info") o = weight_info(c);
        else if (name == "fn") o = fn(c);
        else if (name == "tau-apply") o = tau_apply(c);
        else if (name == "verify") o = verify(c, "verify");
        else if (name == "free-basis") o = verify(c, "free-basis");
        else if (name == "tau-table") o = tau_table(c);
        else if (name == "engine-check") o = engine_check(c);
        else if (name == "engine-build") o = engine_build(c);
        else o = engine_fuzz(c);
    } catch (const Error& e) {
        report_error(err, e.reason(), e.what());
        return code_for(e);
    } catch (const std::exception& e) {
        report_error(err, "InvalidParameter", e.what());
        return 2;
    }

    const std::string text = canonical_dump(o.doc);
    if (c.out.empty()) {
        out << text;
        err << o.summary << "\n";
    } else {
        std::ofstream f(c.out, std::ios::binary);
        f << text;
        if (!f) {
            report_error(err, "InvalidParameter", "cannot write " + c.out);
            return 2;
        }
        out << o.summary << "\n";
    }
    return o.code;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace hecke::cli
