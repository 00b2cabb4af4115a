#include <doctest.h>

#include "cli.hpp"
#include "hecke/serialize.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hecke;

namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hecke_sl2_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("non-prime p exits with 2 and a reason") {
        const Result r = call({"verify", "--p", "4", "--deg", "1", "--r", "1", "--levels", "2"});
        CHECK(r.code == 2);
        CHECK(Json::parse(r.err).at("reason") == "InvalidParameter");
    }

    TEST_CASE("usage errors exit with 2") {
        CHECK(call({"bogus"}).code == 2);
        CHECK(call({"verify", "--p", "3"}).code == 2);
        CHECK(call({"verify", "--p", "3", "--r", "x", "--levels", "2"}).code == 2);
        CHECK(call({"verify", "--p", "3", "--r", "3", "--levels", "2"}).code == 2);
        CHECK(call({"verify", "--p", "3", "--r", "1", "--levels", "2", "--precision", "9"}).code == 2);
        CHECK(call({"verify", "--p", "3", "--r", "1", "--levels", "2", "--w0", "other"}).code == 2);
        CHECK(call({"--help"}).code == 0);
    }

    TEST_CASE("tau of f_0 equals f_-1 through files") {
        const auto f0 = scratch("f0.json"), tf0 = scratch("tf0.json"), fm1 = scratch("fm1.json");
        const std::vector<std::string> shape{"--p", "3", "--r", "1", "--levels", "2"};
        auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
            head.insert(head.end(), shape.begin(), shape.end());
            head.insert(head.end(), tail.begin(), tail.end());
            return head;
        };
        REQUIRE(call(with({"fn"}, {"--n", "0", "--out", f0.string()})).code == 0);
        REQUIRE(call(with({"tau-apply"}, {"--in", f0.string(), "--out", tf0.string()})).code == 0);
        REQUIRE(call(with({"fn"}, {"--n", "-1", "--out", fm1.string()})).code == 0);
        CHECK(slurp(tf0) == slurp(fm1));
        CHECK(Json::parse(slurp(fm1)).at("schema") == kInducedFnSchema);
    }

    TEST_CASE("mismatched input shape is rejected") {
        const auto f0 = scratch("f0_r0.json");
        REQUIRE(call({"fn", "--p", "3", "--r", "0", "--n", "0", "--out", f0.string()}).code == 0);
        const Result r = call({"tau-apply", "--p", "3", "--r", "1", "--in", f0.string()});
        CHECK(r.code == 2);
    }

    TEST_CASE("verify output is byte-identical across runs and thread counts") {
        const auto a = scratch("cert_a.json"), b = scratch("cert_b.json");
        setenv("HECKE_SL2_THREADS", "1", 1);
        const Result ra = call({"verify", "--p", "2", "--r", "1", "--levels", "2", "--out", a.string()});
        setenv("HECKE_SL2_THREADS", "4", 1);
        const Result rb = call({"verify", "--p", "2", "--r", "1", "--levels", "2", "--out", b.string()});
        unsetenv("HECKE_SL2_THREADS");
        CHECK(ra.code == 0);
        CHECK(rb.code == 0);
        CHECK(slurp(a) == slurp(b));
        const Json cert = Json::parse(slurp(a));
        CHECK(cert.at("schema") == kCertificateSchema);
        CHECK(cert.at("passed") == true);
        CHECK(cert.at("params").at("w0") == "standard");
    }

    TEST_CASE("precision override changes only the precision field") {
        const auto a = scratch("cert_p10.json"), b = scratch("cert_p13.json");
        REQUIRE(call({"verify", "--p", "3", "--r", "1", "--levels", "2", "--out", a.string()}).code == 0);
        REQUIRE(call({"verify", "--p", "3", "--r", "1", "--levels", "2", "--precision", "13", "--out", b.string()})
                    .code == 0);
        Json ja = Json::parse(slurp(a)), jb = Json::parse(slurp(b));
        CHECK(ja.at("params").at("precision") == 10);
        CHECK(jb.at("params").at("precision") == 13);
        ja["params"].erase("precision");
        jb["params"].erase("precision");
        CHECK(canonical_dump(ja) == canonical_dump(jb));
    }

    TEST_CASE("alternative w0 fails the tau table for a nontrivial weight") {
        const Result std_run = call({"tau-table", "--p", "3", "--r", "1", "--levels", "2"});
        const Result alt_run = call({"tau-table", "--p", "3", "--r", "1", "--levels", "2", "--w0", "alternative"});
        CHECK(std_run.code == 0);
        CHECK(alt_run.code == 1);
    }

    TEST_CASE("engine subcommands") {
        const auto inst = scratch("inst.json"), fuzz = scratch("fuzz.json"), h5 = scratch("h5.json");
        const Result f = call({"engine-fuzz", "--d", "2", "--levels", "2", "--count", "5", "--emit", inst.string(),
                               "--out", fuzz.string()});
        CHECK(f.code == 0);
        CHECK(Json::parse(slurp(fuzz)).at("all_verified") == true);
        CHECK(call({"engine-check", "--in", inst.string()}).code == 0);
        CHECK(call({"engine-build", "--in", inst.string()}).code == 0);

        const GradedInstance g = graded_from_json(Json::parse(slurp(inst)));
        CHECK(to_json(g) == Json::parse(slurp(inst)));

        {
            std::ofstream o(h5);
            o << canonical_dump(to_json(h5_counterexample(std::make_shared<const Field>(3, 1))));
        }
        CHECK(call({"engine-check", "--in", h5.string()}).code == 1);
        const Result strict = call({"engine-build", "--in", h5.string()});
        CHECK(strict.code == 1);
        CHECK(Json::parse(strict.err).at("reason") == "ConstructionFailed");
        CHECK(call({"engine-build", "--in", h5.string(), "--naive"}).code == 1);
    }

    TEST_CASE("field and weight info") {
        const Result f = call({"field-info", "--p", "2", "--deg", "2"});
        CHECK(f.code == 0);
        CHECK(Json::parse(f.out).at("field").at("modulus") == Json::parse("[1,1,1]"));
        const Result w = call({"weight-info", "--p", "3", "--deg", "2", "--r", "1,2"});
        CHECK(w.code == 0);
        CHECK(Json::parse(w.out).at("dim") == 6);
    }
}
