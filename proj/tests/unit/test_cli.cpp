// Drives the built qmur binary end to end.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "qmur/io.hpp"
#include "qmur/states.hpp"

namespace fs = std::filesystem;
using namespace qmur;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args)
{
    const std::string cmd = std::string(QMUR_CLI_PATH) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        o.out.append(buf.data(), n);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

fs::path scratch(const std::string& name)
{
    const fs::path dir(QMUR_SCRATCH_DIR);
    fs::create_directories(dir);
    return dir / name;
}

std::string first_line(const std::string& s)
{
    return s.substr(0, s.find('\n'));
}

std::string state_file(const std::string& name, const DensityOperator& rho)
{
    const auto p = scratch(name);
    write_state(p.string(), rho);
    return p.string();
}

} // namespace

TEST_CASE("usage errors exit with 2")
{
    CHECK(run("").code == 2);
    CHECK(run("verify --suite nosuch").code == 2);
    CHECK(run("verify --suite omega --trials 0").code == 2);
    CHECK(run("verify --suite omega --tolerance=-1").code == 2);
    CHECK(run("entropy --state /nonexistent --measure vn").code == 2);
    const auto bad = scratch("malformed.json");
    std::ofstream(bad) << "{\"profile\": [2], \"matrix\": [[1, 0]]}";
    CHECK(run("entropy --state " + bad.string() + " --measure vn").code == 2);
    const auto st = state_file("flat2x2.json", DensityOperator(maximally_mixed(4), {2, 2}));
    CHECK(run("entropy --state " + st + " --measure nosuch").code == 2);
    CHECK(run("entropy --state " + st + " --measure hmax-smooth").code == 2);
}

TEST_CASE("entropy prints nine decimals and the sentinel")
{
    const auto flat = state_file("flat2x2.json", DensityOperator(maximally_mixed(4), {2, 2}));
    auto o = run("entropy --state " + flat + " --measure vn-cond");
    CHECK(o.code == 0);
    CHECK(first_line(o.out) == "1.000000000");

    const auto mes = state_file("mes.json", max_entangled(2));
    o = run("entropy --state " + mes + " --measure hmin-cond");
    CHECK(o.code == 0);
    CHECK(first_line(o.out) == "-1.000000000");

    Matrix sigma = Matrix::Zero(2, 2);
    sigma(0, 0) = 1;
    const auto pure = state_file("sigma_pure.json", DensityOperator(sigma, {2}));
    o = run("entropy --state " + mes + " --measure hmin-cond-fixed --sigma " + pure);
    CHECK(o.code == 0);
    CHECK(first_line(o.out) == "-inf");
}

TEST_CASE("game reports the violation for the maximally entangled strategy")
{
    auto mes = run("game --strategy mes --dims 2");
    REQUIRE(mes.code == 0);
    const auto a = Json::parse(mes.out);
    CHECK(a["game"]["violation"] == true);

    auto werner = run("game --strategy werner --dims 2 --p 1.0");
    REQUIRE(werner.code == 0);
    const auto b = Json::parse(werner.out);
    CHECK(b["game"]["h_a_b"] == a["game"]["h_a_b"]);
    CHECK(b["game"]["memory_bound"] == a["game"]["memory_bound"]);
    CHECK(b["game"]["violation"] == true);

    auto product = run("game --strategy product --dims 3 --format text");
    CHECK(product.code == 0);
    CHECK(product.out.find("violation") != std::string::npos);

    CHECK(run("game --strategy mes --qkd").code == 0);
    CHECK(run("game --strategy nosuch").code == 2);
}

TEST_CASE("same seed gives identical reports apart from the header")
{
    // The output path is part of the config, so both runs write to the same file.
    const auto path = scratch("report.json");
    const std::string args = "verify --suite main-theorem,omega --trials 5 --seed 17 --out " + path.string();
    REQUIRE(run(args).code == 0);
    auto j1 = read_json_file(path.string());
    REQUIRE(run(args).code == 0);
    auto j2 = read_json_file(path.string());
    j1.erase("header");
    j2.erase("header");
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["summary"].size() == 2);

    const auto csv = run("verify --suite robertson --trials 2 --format csv");
    CHECK(csv.code == 0);
    CHECK(first_line(csv.out) == "suite,trial,relation,kind,status,lhs,rhs,slack,tolerance,digest,note");
}

TEST_CASE("smooth-trace runs on a state file")
{
    const auto flat = state_file("flat2x2.json", DensityOperator(maximally_mixed(4), {2, 2}));
    const auto o = run("smooth-trace --state " + flat + " --epsilon 0.1");
    REQUIRE(o.code == 0);
    const auto j = Json::parse(o.out);
    CHECK(!j["certificates"].empty());
    for (const auto& c : j["certificates"])
        CHECK(c["status"] != "failed");
    CHECK(run("smooth-trace --state " + flat + " --epsilon 0.5").code == 2);
}
