#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "htau/cli.hpp"

using namespace htau;

namespace {

int run(std::vector<std::string> args)
{
    args.insert(args.begin(), "htau");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("config validation")
{
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.mmax() == 5);
    CHECK(cfg.k() == 7);
    cfg.dmax = 8;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dmax = 5;
    cfg.K = 8;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({}) == 2);
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"hurwitz", "--dmax", "9"}) == 2);
    CHECK(run({"verify", "--W", "3"}) == 2);
    CHECK(run({"tau", "--family", "other"}) == 2);
    CHECK(run({"tbasis", "--c", "1"}) == 2);
}

TEST_CASE("outputs are deterministic")
{
    const auto dir = std::filesystem::temp_directory_path() / "htau_cli_test";
    std::filesystem::remove_all(dir);
    const auto a = dir / "a";
    const auto b = dir / "b";
    const auto cache = (dir / "cache.json").string();
    for (const auto& out : {a, b}) {
        CHECK(run({"hurwitz", "--dmax", "4", "--out", out.string(), "--hurwitz-cache", cache}) == 0);
        CHECK(run({"intersections", "--W", "6", "--out", out.string()}) == 0);
        CHECK(run({"tbasis", "--W", "5", "--K", "3", "--out", out.string()}) == 0);
        CHECK(run({"tau", "--W", "5", "--c", "u^-1+2", "--out", out.string()}) == 0);
    }
    for (const char* f : {"hurwitz.json", "hurwitz.csv", "intersections.json", "intersections.csv", "tbasis.json",
                          "tau_exponential.json"}) {
        CAPTURE(f);
        CHECK(!slurp(a / f).empty());
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(std::filesystem::exists(cache));
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify reports the known failures")
{
    RunConfig cfg;
    cfg.W = 6;
    int failed = 0;
    for (const auto& r : run_verify_suite(cfg)) {
        if (r.failed()) {
            ++failed;
            CAPTURE(r.check);
            CHECK(r.check.find("n=") != std::string::npos);
        }
    }
    CHECK(failed == 2);
}

TEST_CASE("an injected corruption is caught and located")
{
    RunConfig cfg;
    cfg.W = 6;
    cfg.cs = {UPoly(1)};
    cfg.inject_corruption = true;
    bool seen = false;
    for (const auto& r : run_verify_suite(cfg)) {
        if (r.check.rfind("tau_assembled=tau_exponential", 0) == 0) {
            seen = true;
            CHECK(r.failed());
            REQUIRE(r.first_failure);
            CHECK(r.first_failure->find("q1*q2") != std::string::npos);
        }
    }
    CHECK(seen);
    CHECK(run({"verify", "--W", "5", "--c", "0|1", "--out", (std::filesystem::temp_directory_path() / "htau_v").string()}) == 1);
}
