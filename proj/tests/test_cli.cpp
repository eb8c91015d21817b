#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "motifeval/io.hpp"

namespace fs = std::filesystem;
using motifeval::io::json;

namespace {

const fs::path kDir = fs::temp_directory_path() / "motifeval_test_cli";

struct RunResult {
    int code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
    fs::create_directories(kDir);
    const auto out = kDir / "stdout.txt";
    const std::string cmd = "cd '" + kDir.string() + "' && " + env + " '" MOTIFEVAL_CLI "' " + args + " > '" +
                            out.string() + "' 2> '" + (kDir / "stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

void write(const std::string& name, const std::string& text) {
    fs::create_directories(kDir);
    std::ofstream(kDir / name) << text;
}

const char* kGt = R"({"motif_sets":[{"motifs":[{"start":1,"end":10},{"start":21,"end":30}]},{"motifs":[{"start":41,"end":50}]}]})";
const char* kPred =
    R"({"motif_sets":[{"motifs":[{"start":2,"end":11},{"start":22,"end":31},{"start":60,"end":69}]},{"motifs":[{"start":42,"end":51}]}]})";
const char* kOverlapping = R"({"motif_sets":[{"motifs":[{"start":0,"end":10},{"start":5,"end":12}]}]})";

}  // namespace

TEST_CASE("cli eval") {
    write("gt.json", kGt);
    write("pred.json", kPred);
    write("overlap.json", kOverlapping);

    auto r = run("eval --gt gt.json --pred gt.json");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["metrics"]["prom"]["f1"].get<double>() == 1.0);

    r = run("eval --gt gt.json --pred pred.json --format tsv");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("prom.precision\t0.750000") != std::string::npos);
    CHECK(r.out.find("prom.recall\t1.000000") != std::string::npos);
    CHECK(r.out.find("prom.f1\t0.857143") != std::string::npos);

    r = run("eval --gt gt.json --pred pred.json --metrics prom,cm,cg,score");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out)["metrics"];
    CHECK(j.contains("cm"));
    CHECK(j.contains("score"));

    CHECK(run("eval --gt overlap.json --pred gt.json").code == 3);
    CHECK(run("eval --gt gt.json --pred missing.json").code == 2);
    write("broken.json", R"({"motif_sets":[{"motifs":[{"start":3}]}]})");
    CHECK(run("eval --gt gt.json --pred broken.json").code == 2);
    CHECK(slurp(kDir / "stderr.txt").find("broken.json") != std::string::npos);
    CHECK(run("eval --gt gt.json --pred pred.json --metrics bogus").code == 2);
    CHECK(run("eval --gt gt.json --pred pred.json --or-threshold 1.5").code == 2);
    CHECK(run("eval --gt gt.json").code == 2);
}

TEST_CASE("cli gen, manifest replay and seed fallback") {
    REQUIRE(run("synth-pool --classes 7 --per-class 8 --length 16 --seed 2 --out pool.json").code == 0);
    fs::remove_all(kDir / "bench");
    REQUIRE(run("gen --dataset pool.json --out-dir bench --n-val 4 --n-test 6 --seed 9").code == 0);
    CHECK(fs::exists(kDir / "bench/validation/series_0003.json"));
    CHECK(fs::exists(kDir / "bench/test/series_0005.json"));
    const auto manifest = json::parse(slurp(kDir / "bench/manifest.json"));
    CHECK(manifest["seed"].get<std::uint64_t>() == 9);
    CHECK(manifest["inputs"]["pool.json"].get<std::string>().size() == 64);
    CHECK(manifest["config"]["n-val"].get<int>() == 4);

    const auto before = slurp(kDir / "bench/test/series_0002.json");
    fs::remove(kDir / "bench/test/series_0002.json");
    REQUIRE(run("replay bench/manifest.json").code == 0);
    CHECK(slurp(kDir / "bench/test/series_0002.json") == before);

    fs::remove_all(kDir / "bench_env");
    REQUIRE(run("gen --dataset pool.json --out-dir bench_env --n-val 4 --n-test 6", "MOTIFEVAL_SEED=9").code == 0);
    CHECK(slurp(kDir / "bench_env/test/series_0002.json") == before);

    CHECK(run("gen --dataset pool.json --out-dir x", "MOTIFEVAL_SEED=abc").code == 2);
}

TEST_CASE("cli gen defaults produce 50 + 200 series") {
    REQUIRE(run("synth-pool --classes 5 --per-class 12 --length 8 --seed 1 --out pool5.json").code == 0);
    fs::remove_all(kDir / "bench_default");
    REQUIRE(run("gen --dataset pool5.json --out-dir bench_default --seed 1").code == 0);
    std::size_t val = 0, test = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(kDir / "bench_default/validation")) ++val;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(kDir / "bench_default/test")) ++test;
    CHECK(val == 50);
    CHECK(test == 200);
}

TEST_CASE("cli rank") {
    write("single.json", R"({"records":[{"dataset":"d","series":"0","method":"m","metric":"F","value":0.5}]})");
    auto r = run("rank --results single.json");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["tau"] == json::parse("[[1.0]]"));

    write("two.json", R"([
      {"dataset":"a","series":"0","method":"x","metric":"F","value":0.9},
      {"dataset":"a","series":"0","method":"y","metric":"F","value":0.1},
      {"dataset":"b","series":"0","method":"x","metric":"F","value":0.1},
      {"dataset":"b","series":"0","method":"y","metric":"F","value":0.9}])");
    r = run("rank --results two.json --average-ranks F --format tsv");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x\t1.500000") != std::string::npos);
    CHECK(run("rank --results two.json --average-ranks P").code == 2);
}

TEST_CASE("cli rwdemo") {
    auto r = run("rwdemo --n-series 4 --length 3000 --seed 5");
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["evaluated"].get<int>() == 4);
    CHECK(j["mean_f1"].get<double>() >= 0.0);

    r = run("rwdemo --n-series 3 --min-insertions 0 --max-insertions 0 --length 2000");
    REQUIRE(r.code == 0);
    const auto empty = json::parse(r.out);
    CHECK(empty["mean_f1"].get<double>() == 0.0);
    CHECK(empty["skipped"].get<int>() == 3);

    CHECK(run("rwdemo --alpha 0.3").code == 2);
}

TEST_CASE("cli import-ucr") {
    write("toy.tsv", "1\t0.5\t1.5\n2\t2\t3\n1\t4\t5\n");
    REQUIRE(run("import-ucr --input toy.tsv --out toy.json").code == 0);
    const auto j = json::parse(slurp(kDir / "toy.json"));
    CHECK(j["name"] == "toy");
    CHECK(j["classes"].size() == 2);
    write("ragged.tsv", "1\t0.5\t1.5\n2\t2\n");
    CHECK(run("import-ucr --input ragged.tsv --out r.json").code == 2);
}
