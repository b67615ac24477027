#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = htl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_path(const std::string& name) { return std::string(HTL_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "cli_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("spectral-type command") {
    auto r = run({"spectral-type", "--input", data_path("painleve2.json")});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["spectral_type"]["chain"].size() == 4);
    for (const auto& comp : j["spectral_type"]["chain"]) REQUIRE(comp == htl::Json::array({1, 1}));
}

TEST_CASE("spectral-type on a nilpotent input carries the signature") {
    auto r = run({"spectral-type", "--input", data_path("nilpotent_order2.json")});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    bool has_nontrivial = false;
    for (const auto& sig : j["spectral_type"]["signature"])
        if (sig.size() > 1) has_nontrivial = true;
    REQUIRE(has_nontrivial);
}

TEST_CASE("invalid input is a validation error with a diagnostic") {
    std::string path = write_temp("bad_commutator.json",
                                  R"({"n":2,"k":0,"S":[["1","2"]],"N0":[[0,1,"1"]]})");
    auto r = run({"spectral-type", "--input", path});
    REQUIRE(r.code == htl::cli::kValidation);
    REQUIRE(r.err.find("error:") != std::string::npos);

    auto r2 = run({"spectral-type", "--input", "no_such_file.json"});
    REQUIRE(r2.code == htl::cli::kValidation);

    std::string garbled = write_temp("garbled.json", "{not json");
    auto r3 = run({"spectral-type", "--input", garbled});
    REQUIRE(r3.code == htl::cli::kValidation);
    REQUIRE(r3.err.find("JSON parse error") != std::string::npos);
}

TEST_CASE("unfold command: zero parameters echo the input") {
    auto r = run({"unfold", "--input", data_path("painleve2.json"), "--params", "0,0,0,0"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["membership"]["member"] == true);
    REQUIRE(j["local_forms"].size() == 1);
    REQUIRE(j["local_forms"][0]["pole_order"] == 4);
    REQUIRE(j["stratum_string"] == "0123");
}

TEST_CASE("unfold command: the order-2 split") {
    auto r = run({"unfold", "--input", data_path("painleve2.json"), "--params", "0,0,1,1"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["local_forms"].size() == 2);
    REQUIRE(j["local_forms"][0]["pole_order"] == 2);
    REQUIRE(j["local_forms"][1]["pole_order"] == 2);
    REQUIRE(j["stratum_string"] == "01|23");
    // residue table sums to S_0 (+ N_0)
    REQUIRE(j["residue_sum"] == htl::Json::parse(R"([["0","0"],["0","0"]])"));
}

TEST_CASE("unfold command: non-membership exits with the precondition code") {
    std::string path = write_temp("worked_k2.json",
                                  R"({"n":2,"k":2,"S":[["0","0"],["2","3"],["1","-1"]],"N0":[]})");
    auto r = run({"unfold", "--input", path, "--params", "2,5,0"});
    REQUIRE(r.code == htl::cli::kPrecondition);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["membership"]["member"] == false);
    REQUIRE(j["membership"]["violated"].size() == 1);
    REQUIRE(j["membership"]["violated"][0] == htl::Json::array({0, 0, 1}));
}

TEST_CASE("dh-membership reports without failing") {
    std::string path = write_temp("worked_k2b.json",
                                  R"({"n":2,"k":2,"S":[["0","0"],["2","3"],["1","-1"]],"N0":[]})");
    auto r = run({"dh-membership", "--input", path, "--params", "2,5,0"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["membership"]["member"] == false);
}

TEST_CASE("local-forms command") {
    auto r = run({"local-forms", "--input", data_path("painleve2.json"), "--params", "0,0,1,1"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["local_forms"].size() == 2);
    for (const auto& lf : j["local_forms"]) REQUIRE(lf["form"]["k"] == 1);
}

TEST_CASE("strata command: counts, dot output, and the guard") {
    auto r1 = run({"strata", "--k", "1"});
    REQUIRE(r1.code == 0);
    auto j1 = htl::Json::parse(r1.out);
    REQUIRE(j1["partitions"].size() == 2);
    REQUIRE(j1["hasse_edges"].size() == 1);

    auto r3 = run({"strata", "--k", "3"});
    auto j3 = htl::Json::parse(r3.out);
    REQUIRE(j3["partitions"].size() == 15);

    auto rd = run({"strata", "--k", "1", "--format", "dot"});
    REQUIRE(rd.code == 0);
    REQUIRE(rd.out.find("digraph strata") != std::string::npos);
    REQUIRE(rd.out.find("\"0|1\" -> \"01\"") != std::string::npos);

    auto rbad = run({"strata", "--k", "9"});
    REQUIRE(rbad.code == htl::cli::kValidation);
}

TEST_CASE("painleve2 command: default report and dot edges") {
    auto r = run({"painleve2"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["strata"].size() == 5);
    REQUIRE(j["hasse_edges"].size() == 5);

    auto rd = run({"painleve2", "--format", "dot"});
    REQUIRE(rd.code == 0);
    for (const auto* edge : {"\"VI\" -> \"V\"", "\"V\" -> \"IV\"", "\"V\" -> \"III\"", "\"IV\" -> \"II\"",
                             "\"III\" -> \"II\""})
        REQUIRE(rd.out.find(edge) != std::string::npos);

    auto rbad = run({"painleve2", "--params", "0,1,3,1;0,2,4,1"});
    REQUIRE(rbad.code == htl::cli::kValidation);
}

TEST_CASE("verify command: pass, determinism, self-test") {
    auto r = run({"verify", "--suite", "rings", "--seed", "7"});
    REQUIRE(r.code == 0);
    auto j = htl::Json::parse(r.out);
    REQUIRE(j["ok"] == true);

    auto r2 = run({"verify", "--suite", "rings", "--seed", "7"});
    REQUIRE(r2.out == r.out);  // byte-identical for identical input and seed

    auto st = run({"verify", "--suite", "selftest"});
    REQUIRE(st.code == 0);

    auto bad = run({"verify", "--suite", "unknown"});
    REQUIRE(bad.code == htl::cli::kValidation);
}

TEST_CASE("outputs can be redirected to files") {
    auto r = run({"strata", "--k", "2", "--out", "cli_test_strata.json"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream f("cli_test_strata.json");
    REQUIRE(f.good());
    htl::Json j;
    f >> j;
    REQUIRE(j["partitions"].size() == 5);
}

TEST_CASE("normal form JSON round trip") {
    htl::ScalarMatrix n0 = htl::scalar_zero(3, 3);
    n0.at(1, 0) = htl::GaussianRational::parse("1/2");
    htl::HTLForm h(3, 1,
                   {{htl::GaussianRational::parse("1/2"), htl::GaussianRational::parse("1/2"),
                     htl::GaussianRational::parse("-1+2*i")},
                    {htl::GaussianRational::parse("2"), htl::GaussianRational::parse("2"),
                     htl::GaussianRational::parse("5")}},
                   n0);
    htl::HTLForm back = htl::htl_from_json(htl::to_json(h));
    REQUIRE(back == h);
}

TEST_CASE("collection JSON parses and validates") {
    std::ifstream f(data_path("collection_two_poles.json"));
    htl::Json j;
    f >> j;
    htl::HTLCollection coll = htl::collection_from_json(j);
    REQUIRE(coll.poles.size() == 2);
    REQUIRE(coll.forms[0].k == 1);
    REQUIRE(htl::to_json(coll) == j);

    // breaking the trace balance is a validation error
    j["forms"][1]["S"][0][0] = "7";
    REQUIRE_THROWS_AS(htl::collection_from_json(j), htl::ValidationError);
}

TEST_CASE("repeated runs are byte-identical") {
    auto a = run({"painleve2"});
    auto b = run({"painleve2"});
    REQUIRE(a.out == b.out);
    auto c = run({"unfold", "--input", data_path("painleve2.json"), "--params", "0,0,1,1"});
    auto d = run({"unfold", "--input", data_path("painleve2.json"), "--params", "0,0,1,1"});
    REQUIRE(c.out == d.out);
}
