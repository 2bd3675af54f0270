#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(POLAR_SNF_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("predict command emits the documented schema") {
    auto r = run("predict --family s --q 2 --m 2 --target smith");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["family"] == "s");
    CHECK(j["q"] == 2);
    CHECK(j["m"] == 2);
    CHECK(j["target"] == "smith");
    CHECK(j["v"] == 15);
    CHECK(j["k"] == 6);
    CHECK(j["group"] == "Z/2 + (Z/3)^6");
    CHECK(j["profiles"]["3"]["1"] == 6);
    CHECK(j["branches"]["3"] == "S:sec6:case2");
}

TEST_CASE("predict hermitian smith group") {
    auto r = run("predict --family ue --q 2 --m 2 --target smith");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["group"] == "Z/4 + (Z/3)^15 + (Z/9)^15");
}

TEST_CASE("invalid q exits 2") {
    auto r = run("predict --family s --q 6 --m 2 --target smith");
    CHECK(r.exit_code == 2);
}

TEST_CASE("resource bound exits 3") {
    auto r = run("compute --family s --q 3 --m 3 --target smith --v-bound 100");
    CHECK(r.exit_code == 3);
}

TEST_CASE("compute matches prediction end to end") {
    auto r = run("compute --family s --q 2 --m 2 --target critical");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["group"] == "Z/3 + (Z/9)^4 + (Z/5)^8");
    CHECK(j["free_rank"] == 1);
    // 3^9 * 5^8 spanning trees
    CHECK(j["trees"] == 19683L * 390625L);

    auto u = run("compute --family uo --q 2 --m 2 --target smith");
    REQUIRE(u.exit_code == 0);
    json ju = json::parse(u.out);
    CHECK(ju["v"] == 165);
}

TEST_CASE("verify single instance") {
    auto r = run("verify --family s --q 3 --m 2");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["match"] == true);
    CHECK(j["srg_ok"] == true);
    CHECK(j["smith"]["2"]["branch"] == "S:sec7:meven");
    CHECK(j["smith"]["2"]["match"] == true);
}

TEST_CASE("verify detects an injected typo with a per-prime diff") {
    auto r = run("verify --family ue --q 2 --m 2 --inject-typo tableue-g");
    CHECK(r.exit_code == 1);
    json j = json::parse(r.out);
    CHECK(j["match"] == false);
    CHECK(j["smith"]["3"]["match"] == false);
    CHECK(j["smith"]["3"]["predicted"] != j["smith"]["3"]["computed"]);
}

TEST_CASE("export formats") {
    auto a = run("export --family s --q 2 --m 2 --what adjacency --out /tmp/ps_adj.txt");
    REQUIRE(a.exit_code == 0);
    std::ifstream in("/tmp/ps_adj.txt");
    std::string line;
    std::getline(in, line);
    CHECK(line == "15");
    int lines = 1;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 16);

    auto l = run("export --family s --q 2 --m 2 --what laplacian --out /tmp/ps_lap.txt");
    REQUIRE(l.exit_code == 0);
    std::ifstream lin("/tmp/ps_lap.txt");
    std::getline(lin, line);  // header
    std::getline(lin, line);  // first row: diagonal entry is the degree
    CHECK(line.substr(0, 2) == "6 ");

    auto p = run("export --family ominus --q 2 --m 3 --what points --out /tmp/ps_pts.txt");
    REQUIRE(p.exit_code == 0);
    std::ifstream pin("/tmp/ps_pts.txt");
    int pts = 0;
    while (std::getline(pin, line)) {
        ++pts;
        CHECK(line.find('\t') != std::string::npos);
    }
    CHECK(pts == 27);
}

TEST_CASE("json round trips through a file") {
    auto r = run("predict --family o --q 3 --m 2 --target critical --json /tmp/ps_pred.json");
    REQUIRE(r.exit_code == 0);
    std::ifstream in("/tmp/ps_pred.json");
    json j = json::parse(in);
    CHECK(j["family"] == "o");
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("unknown subcommand input errors") {
    auto r = run("predict --family nope --q 2 --m 2");
    CHECK(r.exit_code == 2);
}
