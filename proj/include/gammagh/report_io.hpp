/*
   Copyright 2026 The gammagh Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "gammagh/experiments.hpp"
#include "gammagh/format.hpp"

namespace gammagh {

using Json = nlohmann::ordered_json;

inline Json to_json(const Check& c) {
    return Json{{"name", c.name},           {"passed", c.passed},     {"value", c.value},
                {"target", c.target},       {"tolerance", c.tolerance}, {"source", c.source},
                {"asserted", c.asserted}};
}

inline Json to_json(std::span<const Check> checks) {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(to_json(c));
    return arr;
}

/// MomentReport schema: mean_theory, mean_mc, mean_se, var_theory, var_mc,
/// var_limit, bounds_lo, bounds_hi, mesh, cells, replications (+ extras).
inline Json to_json(const MomentReport& r) {
    Json j;
    j["statistic"] = r.statistic;
    j["mean_theory"] = r.mean_theory;
    j["mean_mc"] = r.mean_mc;
    j["mean_se"] = r.mean_se;
    j["var_theory"] = r.var_theory;
    j["var_mc"] = r.var_mc;
    j["var_se"] = r.var_se;
    j["var_limit"] = r.var_limit;
    j["bounds_lo"] = r.bounds_lo ? Json(*r.bounds_lo) : Json(nullptr);
    j["bounds_hi"] = r.bounds_hi ? Json(*r.bounds_hi) : Json(nullptr);
    j["mesh"] = r.mesh;
    j["cells"] = r.cells;
    j["replications"] = r.replications;
    j["passed"] = r.passed();
    j["checks"] = to_json(std::span<const Check>(r.checks));
    return j;
}

inline Json to_json(const QvExperimentResult& r) {
    Json j;
    j["experiment"] = "qv";
    j["passed"] = r.passed();
    Json g = Json::array(), b = Json::array();
    for (const auto& m : r.gamma) g.push_back(to_json(m));
    for (const auto& m : r.brownian) b.push_back(to_json(m));
    j["reports"] = std::move(g);
    j["brownian"] = std::move(b);
    j["checks"] = to_json(std::span<const Check>(r.checks));
    return j;
}

inline Json to_json(const CharfnReport& r) {
    return Json{{"experiment", "charfn"}, {"passed", r.passed},       {"samples", r.samples},
                {"u_grid", r.u_grid},     {"errors", r.errors},       {"max_error", r.max_error},
                {"bound", r.bound},       {"bound_source", "4 / sqrt(N)"}};
}

inline Json to_json(const IdecompReport& r) {
    return Json{{"experiment", "idecomp"},
                {"passed", r.passed},
                {"parts", r.parts},
                {"samples", r.samples},
                {"ks_statistic", r.ks_statistic},
                {"ks_critical", r.ks_critical},
                {"ks_source", "1% two-sample critical value 1.63 sqrt(2/N)"},
                {"charfn_max_distance", r.charfn_max_distance},
                {"charfn_bound", r.charfn_bound},
                {"identity_max_error", r.identity_max_error},
                {"identity_tolerance", 1e-12}};
}

inline Json to_json(const FddReport& r) {
    Json j;
    j["experiment"] = "fdd";
    j["passed"] = r.passed();
    j["n"] = r.n;
    j["T"] = r.horizon;
    j["t1"] = r.t1;
    j["t2"] = r.t2;
    j["samples"] = r.samples;
    j["cell_count"] = r.cell_count;
    j["u_grid"] = r.u_grid;
    j["error_vs_limit"] = r.error_vs_limit;
    j["error_vs_finite"] = r.error_vs_finite;
    j["gap"] = r.gap;
    j["max_error_vs_limit"] = r.max_error_vs_limit;
    j["max_error_vs_finite"] = r.max_error_vs_finite;
    j["max_gap"] = r.max_gap;
    j["mc_bound"] = r.mc_bound;
    j["correlation"] = r.correlation;
    j["correlation_bound"] = r.correlation_bound;
    j["checks"] = to_json(std::span<const Check>(r.checks));
    return j;
}

inline constexpr const char* kMomentCsvHeader =
    "statistic,cells,mesh,mean_theory,mean_mc,mean_se,var_theory,var_mc,var_se,var_limit,"
    "replications,passed";

inline void write_csv_row(std::ostream& os, const MomentReport& r) {
    os << r.statistic << ',' << r.cells << ',' << format_number(r.mesh) << ','
       << format_number(r.mean_theory) << ',' << format_number(r.mean_mc) << ','
       << format_number(r.mean_se) << ',' << format_number(r.var_theory) << ','
       << format_number(r.var_mc) << ',' << format_number(r.var_se) << ','
       << format_number(r.var_limit) << ',' << r.replications << ',' << (r.passed() ? 1 : 0)
       << '\n';
}

}  // namespace gammagh
