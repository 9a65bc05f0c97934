#include "htau/series_json.hpp"

#include <algorithm>

namespace htau {

nlohmann::json to_json(const UPoly& p)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [k, c] : p.terms()) {
        out.push_back({k, to_string(c)});
    }
    return out;
}

UPoly upoly_from_json(const nlohmann::json& j)
{
    UPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) {
            throw std::invalid_argument("coefficient entries must be [u-exponent, \"p/q\"]");
        }
        p += UPoly::monomial(t[0].get<int>(), parse_rational(t[1].get<std::string>()));
    }
    return p;
}

nlohmann::json to_json(const TruncatedSeries& s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : s.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [i, e] : m.pairs()) {
            mono.push_back({i, e});
        }
        terms.push_back({{"mono", mono}, {"coef", to_json(c)}});
    }
    nlohmann::json out = {{"family", std::string(family_name(s.family()))}, {"W", s.W()}, {"terms", terms}};
    if (!s.u_exact()) {
        nlohmann::json caps = nlohmann::json::array();
        for (int c : s.ucap()) {
            caps.push_back(c >= kExactCap ? nlohmann::json(nullptr) : nlohmann::json(c));
        }
        out["ucap"] = caps;
    }
    if (!(s.band() == Band::for_weight(std::max(s.W(), 0)))) {
        out["band"] = {s.band().umin, s.band().umax};
    }
    return out;
}

TruncatedSeries series_from_json(const nlohmann::json& j)
{
    try {
        const Family f = parse_family(j.at("family").get<std::string>());
        const int W = j.at("W").get<int>();
        TruncatedSeries::TermMap terms;
        for (const auto& t : j.at("terms")) {
            std::vector<Monomial::Pair> pairs;
            for (const auto& pr : t.at("mono")) {
                pairs.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
            }
            const Monomial m = Monomial::from_pairs(f, pairs);
            UPoly c = upoly_from_json(t.at("coef"));
            auto [it, inserted] = terms.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
            }
        }
        std::vector<int> ucap;
        if (j.contains("ucap")) {
            for (const auto& c : j["ucap"]) {
                ucap.push_back(c.is_null() ? kExactCap : c.get<int>());
            }
        }
        std::optional<Band> band;
        if (j.contains("band")) {
            band = Band{j["band"].at(0).get<int>(), j["band"].at(1).get<int>()};
        }
        return TruncatedSeries::from_terms(f, W, std::move(terms), std::move(ucap), band);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace htau
