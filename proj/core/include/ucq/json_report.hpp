#pragma once

#include <json.hpp>

#include "ucq/analysis.hpp"
#include "ucq/counting.hpp"
#include "ucq/expansion.hpp"
#include "ucq/simplicial.hpp"

namespace ucq {

// Wrapper all commands share: {"tool": "ucq", "schema_version": 1,
// "command": ..., "result": ...}. The shape is pinned by schemas/report.json.
nlohmann::json report_envelope(const std::string& command, nlohmann::json result);

nlohmann::json cq_report_json(const CqReport& report);
nlohmann::json expansion_table_json(const ExpansionTable& table);
nlohmann::json meta_verdict_json(const MetaVerdict& verdict, int arity);
nlohmann::json count_json(const AnswerCount& count);
nlohmann::json number_json(const BigInt& value);  // integer when it fits, decimal string otherwise

}  // namespace ucq
