#include "fnls/report_io.hpp"

#include <filesystem>
#include <fstream>

#include "fnls/errors.hpp"

namespace fnls {

json to_json(const ClauseResult& clause) {
  json j;
  j["id"] = clause.id;
  j["pass"] = clause.pass;
  j["note"] = clause.note;
  return j;
}

json to_json(const Witness& witness) {
  json j;
  j["clause"] = witness.clause;
  j["vectors"] = json::object();
  for (const auto& [name, v] : witness.vectors) j["vectors"][name] = v;
  j["scalars"] = json::object();
  for (const auto& [name, s] : witness.scalars) j["scalars"][name] = s;
  j["defect"] = witness.defect;
  j["tol"] = witness.tol;
  j["detail"] = witness.detail;
  return j;
}

ClauseResult clause_from_json(const json& j) {
  ClauseResult c;
  c.id = j.at("id").get<std::string>();
  c.pass = j.at("pass").get<bool>();
  c.note = j.value("note", std::string{});
  return c;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.clause = j.at("clause").get<std::string>();
  if (j.contains("vectors")) {
    for (const auto& [name, v] : j.at("vectors").items()) {
      w.vectors[name] = v.get<Vector>();
    }
  }
  if (j.contains("scalars")) {
    for (const auto& [name, s] : j.at("scalars").items()) {
      w.scalars[name] = s.get<double>();
    }
  }
  w.defect = j.at("defect").get<double>();
  w.tol = j.at("tol").get<double>();
  w.detail = j.value("detail", std::string{});
  return w;
}

json report_body(const CheckReport& report) {
  json j;
  j["clauses"] = json::array();
  for (const ClauseResult& c : report.clauses) j["clauses"].push_back(to_json(c));
  j["witnesses"] = json::array();
  for (const Witness& w : report.witnesses) j["witnesses"].push_back(to_json(w));
  j["samples_used"] = report.samples_used;
  j["violations_total"] = report.violations_total;
  j["tolerances"] = json::object();
  for (const auto& [name, t] : report.tolerances) j["tolerances"][name] = t;
  j["notes"] = report.notes;
  return j;
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  if (j.contains("clauses")) {
    for (const json& c : j.at("clauses")) r.clauses.push_back(clause_from_json(c));
  }
  if (j.contains("witnesses")) {
    for (const json& w : j.at("witnesses")) r.witnesses.push_back(witness_from_json(w));
  }
  r.samples_used = j.value("samples_used", std::size_t{0});
  r.violations_total = j.value("violations_total", std::size_t{0});
  if (j.contains("tolerances")) {
    for (const auto& [name, t] : j.at("tolerances").items()) {
      r.tolerances[name] = t.get<double>();
    }
  }
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

json report_envelope(const std::string& command, const json& config_echo,
                     const std::string& verdict, const CheckReport& report, double runtime_ms) {
  json j = report_body(report);
  j["command"] = command;
  j["config-echo"] = config_echo;
  j["verdict"] = verdict;
  j["runtime_ms"] = runtime_ms;
  return j;
}

void write_report_file(const std::string& path, const json& report) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError(path, "cannot open output path for writing");
    out << report.dump(2) << "\n";
    if (!out) throw ConfigError(path, "failed while writing the report");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ConfigError(path, "cannot move the report into place: " + ec.message());
}

}  // namespace fnls
