#include "certigate/scenario.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "certigate/errors.hpp"

namespace certigate {

namespace {

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

PolicyBundle load_policies(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  PolicyBundle bundle;
  try {
    bundle.scope = scope_policy_from_json(j.at("scope_policy"));
    bundle.standing = standing_policy_from_json(j.at("standing_policy"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed policy bundle: ") + e.what());
  }
  return bundle;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  Scenario sc;
  try {
    sc.name = j.at("name").get<std::string>();
    const auto base = path.parent_path();
    sc.contract_path = base / j.at("contract").get<std::string>();
    sc.net_path = base / j.at("net").get<std::string>();
    sc.policies_path = base / j.at("policies").get<std::string>();
    for (const auto& item : j.at("record_timeline"))
      sc.timeline.push_back(record_item_from_json(item));
    for (const auto& qj : j.at("queries")) {
      ScenarioQuery q;
      q.at = Rational::from_string(qj.at("at").get<std::string>());
      q.query_json = qj.at("query");
      if (qj.contains("expected_status"))
        q.expected = status_from_letter(qj.at("expected_status").get<std::string>().at(0));
      sc.queries.push_back(std::move(q));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  for (size_t i = 1; i < sc.timeline.size(); ++i)
    if (sc.timeline[i].timestamp < sc.timeline[i - 1].timestamp)
      throw ParseError("scenario timeline timestamps must be non-decreasing");
  return sc;
}

ScenarioRunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  const DeploymentContract base_contract = contract_from_file(scenario.contract_path.string());
  const NetworkModel net = load_network_file(scenario.net_path.string());
  const PolicyBundle policies = load_policies(scenario.policies_path);

  RecordStore store;
  for (const auto& item : scenario.timeline) store.append(item);
  write_file(out_dir / "records.jsonl", store.to_jsonl());

  EntitlementLog log;
  ScenarioRunResult result;
  std::ostringstream report;
  report << "scenario " << scenario.name << "\n";
  report << std::left << std::setw(14) << "query" << std::setw(8) << "at" << std::setw(8)
         << "status" << std::setw(12) << "reason" << std::setw(26) << "bounds" << std::setw(8)
         << "stages" << std::setw(6) << "cost" << std::setw(10) << "expected" << "\n";

  for (const auto& sq : scenario.queries) {
    // The record time is a contract component; a new record time is a new
    // contract instance.
    DeploymentContract contract = base_contract;
    contract.record_time = sq.at;
    seal_contract(contract);

    const GateQuery query = parse_query(sq.query_json, contract, net.output_arity);
    const InterfaceOutput out =
        evaluate_interface(contract, net, query, store, policies.scope, policies.standing);

    write_file(out_dir / (query.query_id + ".contract.json"),
               canonical_dump(contract_to_json(contract)));
    write_file(out_dir / (query.query_id + ".verdict.json"), canonical_dump(output_to_json(out)));
    write_file(out_dir / (query.query_id + ".transcript.txt"), render_transcript(out, contract));

    HistoryEntry issued;
    issued.event = LogEvent::Issued;
    issued.query_id = query.query_id;
    issued.new_status = std::string(1, status_letter(out.status));
    for (const auto& token : out.certificates) {
      write_file(out_dir / (token.cert_hash + ".cert.json"),
                 canonical_dump(token_to_json(token)));
      issued.cert_hash = token.cert_hash;
    }
    log.append(std::move(issued));

    QueryRow row;
    row.query_id = query.query_id;
    row.at = sq.at;
    row.status = out.status;
    row.expected = sq.expected;
    row.matched = !sq.expected || *sq.expected == out.status;
    if (out.status == Status::Undetermined) {
      row.reason = reason_class_name(*out.reason);
      row.bounds = out.detail.last_bounds;
      row.stages_used = out.detail.stages_used;
      row.cost_spent = out.detail.cost_spent;
    } else {
      const auto& w = out.certificates.front().witness;
      if (w.kind == ForcingWitness::Kind::Bound) row.bounds = w.bound;
      row.stages_used = w.stage;
      row.cost_spent = out.detail.cost_spent;
    }
    if (!row.matched) result.exit_code = 1;

    report << std::left << std::setw(14) << row.query_id << std::setw(8) << row.at.str()
           << std::setw(8) << status_letter(row.status) << std::setw(12)
           << (row.reason.empty() ? "-" : row.reason) << std::setw(26)
           << (row.bounds ? "[" + row.bounds->lo.str() + "," + row.bounds->hi.str() + "]" : "-")
           << std::setw(8) << row.stages_used << std::setw(6) << row.cost_spent << std::setw(10)
           << (row.expected ? std::string(1, status_letter(*row.expected)) : std::string("-"))
           << (row.matched ? "" : "  MISMATCH") << "\n";
    result.rows.push_back(std::move(row));
  }

  log.save((out_dir / "entitlement.log.jsonl").string());
  result.report = report.str();
  write_file(out_dir / "report.txt", result.report);
  return result;
}

}  // namespace certigate
