#include "htau/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "htau/gjv.hpp"
#include "htau/series_json.hpp"

namespace htau {

namespace {

std::string join_ints(const std::vector<int>& v, char sep = ' ')
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            s += sep;
        }
        s += std::to_string(v[i]);
    }
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << body;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    write_file(path, j.dump(1) + "\n");
}

// (g, n) pairs whose top record (j = 0) fits in T-weight W.
std::vector<std::pair<int, int>> polyfit_targets(const RunConfig& cfg)
{
    std::vector<std::pair<int, int>> out;
    for (int g = 0; 4 * g - 1 <= cfg.W; ++g) {
        for (int n = 1; n <= cfg.dgrid; ++n) {
            if (2 * g - 2 + n <= 0 || 4 * g - 3 + 2 * n > cfg.W) {
                continue;
            }
            out.emplace_back(g, n);
        }
    }
    return out;
}

} // namespace

nlohmann::json hurwitz_table(const RunConfig& cfg, HurwitzCache& cache)
{
    cfg.validate();
    const TruncatedSeries cj = cutjoin_series(cfg.dmax, cfg.hurwitz_mmax);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& idx : hurwitz_indices(cfg.dmax, cfg.hurwitz_mmax)) {
        Coefficient bf;
        if (auto hit = cache.lookup(idx)) {
            bf = *hit;
        } else {
            const HurwitzValue v = hurwitz_bruteforce(idx, 7);
            cache.insert(v);
            bf = v.h;
        }
        const Coefficient sr = extract_hurwitz(cj, idx).h;
        rows.push_back({{"g", idx.g()},
                        {"parts", idx.parts()},
                        {"d", idx.d()},
                        {"m", idx.m()},
                        {"h_bruteforce", to_string(bf)},
                        {"h_series", to_string(sr)},
                        {"agree", bf == sr}});
    }
    return rows;
}

nlohmann::json intersections_table(const RunConfig& cfg)
{
    cfg.validate();
    using Key = std::pair<int, std::vector<int>>;
    struct Entry {
        int g;
        std::map<std::string, Coefficient> routes;
    };
    std::map<Key, Entry> merged;

    const TruncatedSeries G = extract_G(cfg.W, cfg.mmax());
    const TExpansion ex = tbasis_expansion(G);
    for (const auto& r : extract_intersections_tbasis(G, cfg.k())) {
        merged[{r.j(), r.degrees()}] = Entry{r.g(), {{"tbasis", r.value()}}};
    }

    const auto targets = polyfit_targets(cfg);
    int mneeded = 0;
    for (const auto& [g, n] : targets) {
        mneeded = std::max(mneeded, 2 * g - 1 + n);
    }
    const HurwitzSource src = cutjoin_source(cfg.dgrid, std::max(mneeded, 0));
    std::ostringstream diffs;
    for (const auto& [g, n] : targets) {
        std::vector<IntersectionNumber> recs;
        try {
            recs = extract_intersections_polyfit(g, n, src, cfg.dgrid);
        } catch (const UnderdeterminedSystem&) {
            continue;
        }
        for (const auto& r : recs) {
            Entry& e = merged[{r.j(), r.degrees()}];
            e.g = r.g();
            e.routes["polyfit"] = r.value();
            const bool covered = !r.degrees().empty() && r.degrees().back() <= cfg.k() &&
                                 tbasis_reaches(ex, r.j(), r.degrees());
            if (covered && !e.routes.count("tbasis")) {
                e.routes["tbasis"] = Coefficient(0);
            }
            if (e.routes.count("tbasis") && e.routes["tbasis"] != r.value()) {
                diffs << r.label() << ": tbasis " << to_string(e.routes["tbasis"]) << " vs polyfit "
                      << to_string(r.value()) << "\n";
            }
        }
    }
    if (!diffs.str().empty()) {
        throw std::runtime_error("intersection routes disagree:\n" + diffs.str());
    }

    std::vector<IntersectionNumber> order;
    for (const auto& [key, e] : merged) {
        const Coefficient& v = e.routes.begin()->second;
        order.emplace_back(key.first, key.second, v);
    }
    std::sort(order.begin(), order.end());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : order) {
        const Entry& e = merged.at({r.j(), r.degrees()});
        nlohmann::json row = r.to_json();
        row["label"] = r.label();
        row["routes"] = nlohmann::json::array();
        for (const auto& [name, v] : e.routes) {
            row["routes"].push_back(name);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json tbasis_table(const RunConfig& cfg)
{
    cfg.validate();
    const auto T = build_tbasis(cfg.k(), cfg.W);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < T.size(); ++k) {
        rows.push_back({{"k", k}, {"text", T[k].to_string()}, {"series", to_json(T[k])}});
    }
    return rows;
}

nlohmann::json tau_dump(const RunConfig& cfg, const std::string& family, const UPoly& c)
{
    cfg.validate();
    TruncatedSeries tau(Family::q, cfg.W);
    if (family == "exponential") {
        tau = assemble_tau_theorem2(c, cfg.W, 2 * cfg.mmax());
    } else if (family == "assembled") {
        tau = assemble_tau_theorem1(c, extract_G(cfg.W, cfg.mmax()));
    } else if (family == "cutjoin") {
        tau = cutjoin_series(cfg.W, cfg.mmax(), c);
    } else {
        throw ConfigError("unknown tau family '" + family + "' (exponential, assembled, cutjoin)");
    }
    return {{"family", family}, {"c", c.to_string()}, {"W", cfg.W}, {"series", to_json(tau)}};
}

int run_cli(int argc, const char* const* argv)
{
    CLI::App app{"Hurwitz numbers, intersection numbers and the tau function of their generating series"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("GJV_CACHE"); env && *env) {
        cfg.cache_path = env;
    }
    std::optional<int> mmax_opt;
    std::optional<int> k_opt;
    std::vector<std::string> c_opts;
    std::string family = "exponential";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--W", cfg.W, "truncation weight")->capture_default_str();
        sub->add_option("--mmax", mmax_opt, "largest beta-order of the cut-and-join series");
        sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    };

    CLI::App* hur = app.add_subcommand("hurwitz", "tabulate Hurwitz numbers by brute force and by series");
    common(hur);
    hur->add_option("--dmax", cfg.dmax, "largest degree (<= 7)")->capture_default_str();
    hur->add_option("--hurwitz-cache", cfg.cache_path, "brute-force cache file")->capture_default_str();

    CLI::App* inter = app.add_subcommand("intersections", "tabulate intersection numbers from both routes");
    common(inter);
    inter->add_option("--K", k_opt, "largest tau degree kept");

    CLI::App* tb = app.add_subcommand("tbasis", "print the T-basis");
    common(tb);
    tb->add_option("--K", k_opt, "largest index");

    CLI::App* ver = app.add_subcommand("verify", "run every consistency check");
    common(ver);
    ver->add_option("--dmax", cfg.dmax, "largest Hurwitz degree (<= 7)")->capture_default_str();
    ver->add_option("--c", c_opts, "constant terms, Laurent polynomials in u separated by '|'");
    ver->add_flag("--kp2", cfg.kp2, "also check the second KP equation");
    ver->add_flag("--inject-corruption", cfg.inject_corruption, "perturb one tau coefficient (sensitivity check)");

    CLI::App* tau = app.add_subcommand("tau", "dump a tau function");
    common(tau);
    tau->add_option("--family", family, "exponential, assembled or cutjoin")->capture_default_str();
    tau->add_option("--c", c_opts, "constant term");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*hur) {
            if (mmax_opt) {
                cfg.hurwitz_mmax = *mmax_opt;
            }
        } else {
            cfg.Mmax = mmax_opt;
        }
        cfg.K = k_opt;
        if (!c_opts.empty()) {
            cfg.cs.clear();
            for (const auto& opt : c_opts) {
                std::stringstream ss(opt);
                for (std::string piece; std::getline(ss, piece, '|');) {
                    cfg.cs.push_back(UPoly::parse(piece));
                }
            }
            if (*tau && cfg.cs.size() != 1) {
                throw ConfigError("tau takes a single --c");
            }
        }
        cfg.validate();
        std::filesystem::create_directories(cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const std::filesystem::path out(cfg.out_dir);

    try {
        if (*hur) {
            HurwitzCache cache = HurwitzCache::load(cfg.cache_path);
            const nlohmann::json rows = hurwitz_table(cfg, cache);
            cache.save(cfg.cache_path);
            write_json(out / "hurwitz.json", rows);
            std::ostringstream csv;
            csv << "g,parts,d,m,h_bruteforce,h_series,agree\n";
            bool all = true;
            for (const auto& r : rows) {
                csv << r["g"].get<int>() << "," << join_ints(r["parts"].get<std::vector<int>>()) << ","
                    << r["d"].get<int>() << "," << r["m"].get<int>() << "," << r["h_bruteforce"].get<std::string>()
                    << "," << r["h_series"].get<std::string>() << "," << (r["agree"].get<bool>() ? "1" : "0") << "\n";
                all = all && r["agree"].get<bool>();
            }
            write_file(out / "hurwitz.csv", csv.str());
            std::cout << rows.size() << " Hurwitz numbers, routes " << (all ? "agree" : "DISAGREE") << "\n";
            return all ? 0 : 1;
        }
        if (*inter) {
            nlohmann::json rows;
            try {
                rows = intersections_table(cfg);
            } catch (const std::runtime_error& e) {
                std::cerr << e.what();
                return 1;
            }
            write_json(out / "intersections.json", rows);
            std::ostringstream csv;
            csv << "g,j,degrees,value,routes\n";
            for (const auto& r : rows) {
                std::string routes;
                for (const auto& x : r["routes"]) {
                    routes += (routes.empty() ? "" : "+") + x.get<std::string>();
                }
                csv << r["g"].get<int>() << "," << r["j"].get<int>() << ","
                    << join_ints(r["degrees"].get<std::vector<int>>()) << "," << r["value"].get<std::string>() << ","
                    << routes << "\n";
            }
            write_file(out / "intersections.csv", csv.str());
            std::cout << rows.size() << " intersection numbers\n";
            return 0;
        }
        if (*tb) {
            const nlohmann::json rows = tbasis_table(cfg);
            write_json(out / "tbasis.json", rows);
            for (const auto& r : rows) {
                std::cout << "T" << r["k"].get<int>() << " = " << r["text"].get<std::string>() << "\n";
            }
            return 0;
        }
        if (*ver) {
            const auto reports = run_verify_suite(cfg);
            nlohmann::json arr = nlohmann::json::array();
            std::ostringstream csv;
            csv << "check,W,reliable_weight,status,first_failure\n";
            int failed = 0;
            for (const auto& r : reports) {
                arr.push_back(r.to_json());
                const std::string name =
                    r.extra.contains("tau") ? r.check + " " + r.extra["tau"].get<std::string>() : r.check;
                csv << csv_field(name) << "," << r.W << "," << r.reliable_weight << "," << status_name(r.status)
                    << "," << csv_field(r.first_failure.value_or("")) << "\n";
                std::cout << status_name(r.status) << "  " << r.check;
                if (r.extra.contains("tau")) {
                    std::cout << " " << r.extra["tau"].get<std::string>();
                }
                if (r.first_failure && r.failed()) {
                    std::cout << "  [" << *r.first_failure << "]";
                }
                std::cout << "\n";
                failed += r.failed() ? 1 : 0;
            }
            write_json(out / "verify.json", arr);
            write_file(out / "verify.csv", csv.str());
            std::cout << reports.size() << " checks, " << failed << " failed\n";
            return failed ? 1 : 0;
        }
        if (*tau) {
            const UPoly c = cfg.cs.size() == 1 ? cfg.cs.front() : UPoly(0);
            const nlohmann::json j = tau_dump(cfg, family, c);
            write_json(out / ("tau_" + family + ".json"), j);
            std::cout << j["series"]["terms"].size() << " terms\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // IO and other environment failures
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace htau
