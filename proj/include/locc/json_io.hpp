#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "locc/assist.hpp"
#include "locc/coop.hpp"
#include "locc/nielsen.hpp"
#include "locc/oracle.hpp"
#include "locc/schmidt.hpp"

namespace locc {

using json = nlohmann::ordered_json;

/// Scalars serialize as numbers in the floating backend and as "p/q"
/// strings in the exact backend, matching the state file schema.
template <class S>
json scalar_json(const S& v) {
    if constexpr (is_exact_scalar_v<S>)
        return to_fraction_string(v);
    else
        return v;
}

template <class S>
json state_json(const schmidt_vector<S>& s, const std::optional<std::string>& label = {}) {
    json j = json::object();
    if (label) j["label"] = *label;
    json coeffs = json::array();
    for (const S& c : s.coeffs()) coeffs.push_back(scalar_json(c));
    j["coeffs"] = coeffs;
    return j;
}

/// Parses {"label": ..., "coeffs": [numbers | "p/q" strings]} and
/// canonicalizes. Diagnostics name the offending field.
template <class S>
schmidt_vector<S> state_from_json(const json& j, const numeric_config<S>& cfg = {}) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw std::invalid_argument("state JSON must be an object with a 'coeffs' array");
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_array() || coeffs.empty())
        throw std::invalid_argument("'coeffs' must be a nonempty array");
    std::vector<S> raw;
    raw.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const json& e = coeffs[i];
        if (e.is_number()) {
            raw.push_back(scalar_from_double<S>(e.get<double>()));
        } else if (e.is_string()) {
            try {
                raw.push_back(scalar_from_string<S>(e.get<std::string>()));
            } catch (const std::exception&) {
                throw std::invalid_argument("coeffs[" + std::to_string(i) +
                                            "]: not a number or 'p/q' string");
            }
        } else {
            throw std::invalid_argument("coeffs[" + std::to_string(i) +
                                        "]: not a number or 'p/q' string");
        }
    }
    return make_state(std::move(raw), cfg);
}

inline json verdict_json(const conversion_verdict& v) {
    json j = json::object();
    j["direction"] = to_string(v.dir);
    j["strong"] = v.strong;
    if (v.case3x3)
        j["case3x3"] = *v.case3x3 == rank3_case::case_a ? "A" : "B";
    else
        j["case3x3"] = nullptr;
    return j;
}

template <class S>
json report_json(const oracle_report<S>& r, bool with_trace = true) {
    json j = json::object();
    j["ok"] = r.ok;
    if (r.first_violation)
        j["first_violation"] = *r.first_violation;
    else
        j["first_violation"] = nullptr;
    j["sizes"] = json::array({r.sizes.first, r.sizes.second});
    if (with_trace) {
        json pairs = json::array();
        for (const auto& [a, b] : r.prefix_pairs)
            pairs.push_back(json::array({scalar_json(a), scalar_json(b)}));
        j["prefix_pairs"] = pairs;
    }
    return j;
}

template <class S>
json plan_json(const assist_plan<S>& p) {
    json j = json::object();
    j["auxiliary"] = state_json(p.auxiliary);
    j["residual"] = state_json(p.residual);
    j["c"] = p.c ? scalar_json(*p.c) : json(nullptr);
    j["cost_bits"] = p.cost_bits;
    j["verified"] = true;
    return j;
}

template <class S>
json synthesis_json(const coop_synthesis<S>& s) {
    json j = json::object();
    j["aux_source"] = state_json(s.aux_source);
    j["aux_target"] = state_json(s.aux_target);
    json cross = json::object();
    cross["psi1_phi1"] = verdict_json(s.psi1_phi1);
    cross["psi1_phi2"] = verdict_json(s.psi1_phi2);
    cross["psi2_phi1"] = verdict_json(s.psi2_phi1);
    cross["psi2_phi2"] = verdict_json(s.psi2_phi2);
    j["cross"] = cross;
    j["verified"] = true;
    return j;
}

template <class S>
json split_json(const split_result<S>& s) {
    json j = json::object();
    j["chi"] = state_json(s.chi);
    j["eta"] = state_json(s.eta);
    j["interval"] = json::array({scalar_json(s.interval_lo), scalar_json(s.interval_hi)});
    j["free_parameter"] = s.which == free_param::alpha1 ? "alpha1" : "alpha2";
    j["verified"] = true;
    return j;
}

template <class S>
json catalyst_json(const catalyst_search_result<S>& r, const search_config<S>& cfg) {
    json j = json::object();
    j["found"] = r.catalyst.has_value();
    j["witness"] = r.catalyst ? state_json(*r.catalyst) : json(nullptr);
    json budget = json::object();
    budget["examined"] = r.examined;
    budget["short_circuited"] = r.short_circuited;
    j["budget"] = budget;
    j["resolution"] = scalar_json(cfg.resolution);
    return j;
}

template <class S>
json partner_json(const partner_search_result<S>& r, const search_config<S>& cfg) {
    json j = json::object();
    j["found"] = r.partner.has_value();
    if (r.partner) {
        json w = json::object();
        w["aux_source"] = state_json(r.partner->first);
        w["aux_target"] = state_json(r.partner->second);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    json budget = json::object();
    budget["examined"] = r.examined;
    budget["max_samples"] = cfg.max_samples;
    j["budget"] = budget;
    j["resolution"] = scalar_json(cfg.resolution);
    return j;
}

}  // namespace locc
