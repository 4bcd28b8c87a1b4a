#include "ucq/json_report.hpp"

#include "ucq/io.hpp"

namespace ucq {

using nlohmann::json;

json report_envelope(const std::string& command, json result) {
    return json{{"tool", "ucq"}, {"schema_version", 1}, {"command", command},
                {"result", std::move(result)}};
}

json number_json(const BigInt& value) {
    static const BigInt kSafeMax = BigInt(1) << 53;
    if (value > -kSafeMax && value < kSafeMax) return json(static_cast<int64_t>(value));
    return json(value.str());
}

json cq_report_json(const CqReport& report) {
    json out;
    auto put = [&](const char* key, const auto& optional_value) {
        if (optional_value) out[key] = *optional_value;
    };
    put("acyclic", report.acyclic);
    put("treewidth", report.treewidth);
    put("contract_treewidth", report.contract_treewidth);
    put("is_minimal", report.is_minimal);
    put("core_treewidth", report.core_treewidth);
    put("core_contract_treewidth", report.core_contract_treewidth);
    if (report.core) out["core"] = format_query(*report.core);
    out["self_join_free"] = report.self_join_free;
    out["degree_of_freedom"] = report.degree_of_freedom;
    if (report.bound) out["bound"] = *report.bound;
    if (report.classification)
        out["classification"] =
            *report.classification == Classification::PolyTime ? "PolyTime" : "Hard";
    if (!report.field_errors.empty()) {
        json errors = json::object();
        for (const auto& [field, message] : report.field_errors) errors[field] = message;
        out["field_errors"] = errors;
    }
    return out;
}

json expansion_table_json(const ExpansionTable& table) {
    json entries = json::array();
    for (const auto& entry : table.entries) {
        json witnesses = json::array();
        for (uint64_t mask : entry.witness_subsets) {
            json subset = json::array();
            for (size_t j = 0; j < table.disjunct_count; ++j)
                if (mask & (uint64_t(1) << j)) subset.push_back(j + 1);
            witnesses.push_back(subset);
        }
        entries.push_back(json{{"query", format_query(entry.query)},
                               {"coefficient", number_json(entry.coefficient)},
                               {"witness_subsets", witnesses},
                               {"acyclic", is_acyclic(entry.query.body())}});
    }
    return json{{"mode", table.mode == ExpansionMode::IsomorphismOnly ? "isomorphism" : "core"},
                {"disjuncts", table.disjunct_count},
                {"zeros_kept", table.zeros_kept},
                {"entries", entries}};
}

json meta_verdict_json(const MetaVerdict& verdict, int arity) {
    json blockers = json::array();
    for (const auto& entry : verdict.blocking_terms)
        blockers.push_back(json{{"query", format_query(entry.query)},
                                {"coefficient", number_json(entry.coefficient)}});
    json out{{"linear_time", verdict.linear_time},
             {"assumption", verdict.assumption},
             {"blocking_terms", blockers}};
    if (arity > 2)
        out["caveat"] = "arity exceeds 2: the negative direction has no established "
                        "unconditional meaning for this input";
    return out;
}

json count_json(const AnswerCount& count) {
    const char* method = nullptr;
    switch (count.method) {
        case CountMethod::BruteForce: method = "brute"; break;
        case CountMethod::Backtracking: method = "backtrack"; break;
        case CountMethod::Yannakakis: method = "yannakakis"; break;
        case CountMethod::InclusionExclusion: method = "expansion"; break;
    }
    return json{{"value", number_json(count.value)}, {"method", method}};
}

}  // namespace ucq
