#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "htau/hurwitz.hpp"
#include "htau/intersections.hpp"
#include "htau/report.hpp"

namespace htau {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    int W = 8;
    std::optional<int> Mmax;
    std::optional<int> K;
    int dmax = 5;
    int hurwitz_mmax = 5;
    int dgrid = 6;
    std::vector<UPoly> cs{UPoly(0), UPoly(1), UPoly::parse("u^-1+2")};
    std::string out_dir = ".";
    std::string cache_path = "hurwitz_cache.json";
    bool kp2 = false;
    // Adds a stray term to the second tau assembly so that its comparison must fail.
    bool inject_corruption = false;

    // Throws ConfigError.
    void validate() const;
    int mmax() const;
    int k() const;
};

// Every named check of the suite, in a fixed order.
std::vector<CheckReport> run_verify_suite(const RunConfig& cfg);

// Both Hurwitz routes for every index with d <= dmax, m <= hurwitz_mmax.
// Brute-force values are read from and added to the cache.
nlohmann::json hurwitz_table(const RunConfig& cfg, HurwitzCache& cache);

// Intersection numbers from the T-basis route at W and the polynomial-fit
// route on the d <= dgrid grid, merged with per-record route provenance.
// Throws std::runtime_error with a diff when the routes disagree.
nlohmann::json intersections_table(const RunConfig& cfg);

nlohmann::json tbasis_table(const RunConfig& cfg);

// family: "exponential", "assembled" or "cutjoin".
nlohmann::json tau_dump(const RunConfig& cfg, const std::string& family, const UPoly& c);

// Command-line entry point; returns the process exit code (0 success,
// 1 verification failure, 2 usage or configuration error).
int run_cli(int argc, const char* const* argv);

} // namespace htau
