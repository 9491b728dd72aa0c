#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsplit/experiments.hpp"
#include "nsplit/heuristics.hpp"
#include "nsplit/necklace.hpp"
#include "nsplit/solver.hpp"

namespace nsplit {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Necklace& N) {
    return ordered_json{{"k", N.k}, {"t", N.t}, {"m", N.m}, {"beads", N.beads}};
}

inline Necklace necklace_from_json(const nlohmann::json& j) {
    Necklace N;
    N.k = j.at("k").get<int>();
    N.t = j.at("t").get<int>();
    N.m = j.at("m").get<int>();
    N.beads = j.at("beads").get<std::vector<std::int32_t>>();
    validate(N);
    return N;
}

inline ordered_json to_json(const Witness& w) {
    return ordered_json{
        {"s", w.cut_count}, {"cuts", w.partition.cuts}, {"owners", w.partition.owners}};
}

inline ordered_json to_json(const FairSolution& sol) {
    return ordered_json{{"cut_count", sol.cut_count},
                        {"cuts", sol.partition.cuts},
                        {"owners", sol.partition.owners},
                        {"cuts_intervals", sol.stats.cuts_intervals},
                        {"cuts_leftover", sol.stats.cuts_leftover}};
}

inline ordered_json to_json(const ExperimentResult& res) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : res.rows)
        rows.push_back(ordered_json{{"x", r.x},
                                    {"successes", r.successes},
                                    {"trials", r.trials},
                                    {"estimate", r.estimate},
                                    {"ci_low", r.ci_low},
                                    {"ci_high", r.ci_high}});
    ordered_json extras = ordered_json::object();
    for (const auto& [name, value] : res.extras) extras[name] = value;
    ordered_json j{{"provenance", res.provenance},
                   {"kind", res.kind},
                   {"x_name", res.x_name},
                   {"rows", rows},
                   {"extras", extras}};
    if (res.fit)
        j["fit"] = ordered_json{{"slope", res.fit->slope},
                                {"intercept", res.fit->intercept},
                                {"slope_err", res.fit->slope_err},
                                {"residual", res.fit->residual},
                                {"points", res.fit->points_used}};
    else
        j["fit"] = nullptr;
    return j;
}

/// One JSON object per line.
inline std::vector<Necklace> read_jsonl(std::istream& in) {
    std::vector<Necklace> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(necklace_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

inline void write_jsonl(std::ostream& os, const std::vector<Necklace>& necklaces) {
    for (const auto& N : necklaces) os << to_json(N).dump() << "\n";
}

} // namespace nsplit
