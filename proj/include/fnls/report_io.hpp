#pragma once

#include <string>

#include <json.hpp>

#include "fnls/report.hpp"

namespace fnls {

using json = nlohmann::json;

json to_json(const ClauseResult& clause);
json to_json(const Witness& witness);

ClauseResult clause_from_json(const json& j);
Witness witness_from_json(const json& j);

/// The body of a report: clauses, witnesses, samples_used, tolerances, notes.
/// Keys are stable; doubles round-trip exactly through the serialized text.
json report_body(const CheckReport& report);
CheckReport report_from_json(const json& j);

/// Full envelope around a body: command, config-echo, verdict plus the body
/// keys and runtime_ms. Extra top-level entries (solver output, certificate)
/// are merged in by the caller before writing.
json report_envelope(const std::string& command, const json& config_echo,
                     const std::string& verdict, const CheckReport& report, double runtime_ms);

/// Serialize with 2-space indent and write via a temp file + rename so the
/// output path never holds a partial report.
void write_report_file(const std::string& path, const json& report);

}  // namespace fnls
