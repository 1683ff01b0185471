#include <doctest.h>

#include "latspec/cli.hpp"
#include "latspec/model_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

using namespace latspec;
using nlohmann::json;

namespace {

const std::string kModels = LATSPEC_MODELS_DIR;

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string model(const std::string& name) { return kModels + "/" + name + ".json"; }

// Writes `doc` to a file in the temp directory and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("latspec_test_" + name + ".json");
    std::ofstream(path) << text;
    return path.string();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.push_back("");
    return cells;
}

}  // namespace

TEST_CASE("validate") {
    for (const char* name : {"model_a_d1", "model_a_d2", "model_a_d1_decoupled", "model_a_d1_beta0", "decoupled_w0_minus3"}) {
        const Run r = run({"validate", "--model", model(name)});
        CHECK(r.code == kExitOk);
        CHECK(json::parse(r.out)["ok"] == true);
    }
}

TEST_CASE("malformed models are input errors naming the key") {
    json doc = model_to_json(model_a(1, 1, 1));
    doc.erase("dimension");
    Run r = run({"validate", "--model", scratch("no_dimension", doc.dump())});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("/dimension") != std::string::npos);

    doc = model_to_json(model_a(1, 1, 1));
    doc["w2"]["override"] = 1.0;
    r = run({"spectrum", "--model", scratch("override", doc.dump())});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("/w2/override") != std::string::npos);

    r = run({"validate", "--model", scratch("garbage", "{ not json")});
    CHECK(r.code == kExitInputError);
    r = run({"validate", "--model", kModels + "/does_not_exist.json"});
    CHECK(r.code == kExitInputError);
    r = run({"frobnicate"});
    CHECK(r.code == kExitInputError);
}

TEST_CASE("bad arguments are input errors") {
    CHECK(run({"fiber", "--model", model("model_a_d1"), "--K", "0,0"}).code == kExitInputError);
    CHECK(run({"fiber", "--model", model("model_a_d2"), "--k", "1"}).code == kExitInputError);
    CHECK(run({"spectrum", "--model", model("model_a_d1"), "--window", "3:1"}).code == kExitInputError);
    CHECK(run({"spectrum", "--model", model("model_a_d1"), "--n-quad", "0"}).code == kExitInputError);
}

TEST_CASE("fiber on the degenerate fiber") {
    const Run r = run({"fiber", "--model", model("model_a_d1"), "--k", "3.141592653589793", "--n-quad", "64"});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["band"]["degenerate"] == true);
    CHECK(doc["band"]["e_max"].get<double>() == doctest::Approx(4.0));
    CHECK(doc["below"].get<double>() == doctest::Approx(4 - std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(doc["above"].get<double>() == doctest::Approx(4 + std::sqrt(M_PI)).epsilon(1e-10));
    CHECK(doc["grid"]["measure"].get<std::string>().find("(2pi)^d") != std::string::npos);
}

TEST_CASE("fiber with no coupling has no eigenvalues") {
    const Run r = run({"fiber", "--model", model("model_a_d1_beta0"), "--n-quad", "32"});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["below"].is_null());
    CHECK(doc["above"].is_null());
}

TEST_CASE("spectrum") {
    Run r = run({"spectrum", "--model", model("decoupled_w0_minus3"), "--n-quad", "32", "--n-k", "32"});
    REQUIRE(r.code == kExitOk);
    json doc = json::parse(r.out);
    REQUIRE(doc["discrete"]["eigenvalues"].size() == 1);
    CHECK(doc["discrete"]["eigenvalues"][0]["z"].get<double>() == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(doc["channel"]["merged"].size() == 1);

    r = run({"spectrum", "--model", model("model_a_d1"), "--n-quad", "64", "--n-k", "32"});
    REQUIRE(r.code == kExitOk);
    doc = json::parse(r.out);
    CHECK(doc["channel"]["merged"].size() <= 3);
    CHECK(doc["discrete"]["eigenvalues"].size() >= 1);
    for (const auto& e : doc["discrete"]["eigenvalues"]) CHECK(e.contains("residual"));

    r = run({"spectrum", "--model", model("model_a_d1"), "--n-quad", "32", "--n-k", "16", "--window", "-1.1:-1.0"});
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["discrete"]["eigenvalues"].empty());
}

TEST_CASE("sweep CSV") {
    const std::vector<std::string> args{"sweep", "--model", model("model_a_d1"), "--n-quad", "32", "--n-k", "16"};
    const Run first = run(args);
    REQUIRE(first.code == kExitOk);
    const auto lines = split_lines(first.out);
    REQUIRE(lines.size() == 34);
    CHECK(lines[0] == "K0,m_K,M_K,below_lo,below_hi,below_uniform,above_lo,above_hi,above_uniform,discrete");
    double previous = -10;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 10);
        const double K = std::stod(cells[0]);
        CHECK(K > previous);
        previous = K;
        // Three equal momenta K/3 minimize the three-particle energy.
        CHECK(std::stod(cells[1]) == doctest::Approx(3 - 3 * std::cos(K / 3)).epsilon(1e-9));
    }
    CHECK(std::stod(split(lines[1], ',')[0]) == doctest::Approx(-M_PI));
    CHECK(std::stod(split(lines.back(), ',')[0]) == doctest::Approx(M_PI));
    CHECK(run(args).out == first.out);
}

TEST_CASE("sweep without coupling leaves branch columns empty") {
    const Run r = run({"sweep", "--model", model("model_a_d1_beta0"), "--n-quad", "32", "--n-k", "16", "--n-path", "8",
                       "--no-discrete"});
    REQUIRE(r.code == kExitOk);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 10);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 10);
        for (int c = 3; c < 10; ++c) CHECK(cells[c].empty());
    }
}

TEST_CASE("sweep in two dimensions along the diagonal") {
    const Run r = run({"sweep", "--model", model("model_a_d2"), "--path", "diagonal", "--n-path", "2", "--n-quad", "8",
                       "--n-k", "8", "--no-discrete"});
    REQUIRE(r.code == kExitOk);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].rfind("K0,K1,m_K", 0) == 0);
    const auto cells = split(lines[2], ',');
    CHECK(std::stod(cells[0]) == 0.0);
    CHECK(std::stod(cells[1]) == 0.0);
}

TEST_CASE("oracle") {
    Run r = run({"oracle", "--model", model("decoupled_w0_minus3"), "--n-quad", "32", "--n-k", "16", "--n-oracle", "16"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["passed"] == true);

    r = run({"oracle", "--model", model("model_a_d1"), "--n-quad", "64", "--n-k", "64", "--n-oracle", "48"});
    CHECK(r.code == kExitOk);

    r = run({"oracle", "--model", model("model_a_d1"), "--n-quad", "64", "--n-k", "64", "--n-oracle", "48",
             "--sigma-shift", "0.5"});
    CHECK(r.code == kExitComparisonFailed);
    CHECK(json::parse(r.out)["passed"] == false);

    r = run({"oracle", "--model", model("model_a_d1"), "--n-oracle", "200"});
    CHECK(r.code == kExitInputError);
}

TEST_CASE("numerical failures exit 3") {
    ModelSpec spec = model_a(1, 1, 1);
    spec.v1 = CosineSeries::constant_series(1e6);
    const std::string path = scratch("huge_coupling", model_to_json(spec).dump());
    const Run r = run({"fiber", "--model", path, "--n-quad", "32"});
    CHECK(r.code == kExitNumericalFailure);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("installed binary") {
    const std::string cmd = std::string(LATSPEC_CLI_PATH) + " validate --model " + model("model_a_d1") + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::string text;
    std::array<char, 256> buf{};
    while (fgets(buf.data(), buf.size(), pipe.get())) text += buf.data();
    const int status = pclose(pipe.release());
    CHECK(status == 0);
    CHECK(json::parse(text)["ok"] == true);
}
