#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "certigate/errors.hpp"
#include "certigate/scenario.hpp"
#include "certigate/version.hpp"

namespace fs = std::filesystem;
using namespace certigate;

// Exit codes: 0 success, 1 semantic failure (rejection / mismatch / invalid
// chain), 2 configuration or integrity error, 64 usage error.
namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUsage = 64;

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << content;
}

struct CommonArgs {
  std::string contract_path;
  std::string net_path;
  std::string records_path;
  std::string policies_path;
  std::string log_path;
  std::string out_dir = ".";
  std::string format = "text";
};

int cmd_evaluate(const CommonArgs& args, const std::string& query_path) {
  const DeploymentContract contract = contract_from_file(args.contract_path);
  const NetworkModel net = load_network_file(args.net_path);
  const PolicyBundle policies = load_policies(args.policies_path);
  const RecordStore store = RecordStore::from_jsonl_file(args.records_path);
  const GateQuery query = parse_query(parse_json_file(query_path), contract, net.output_arity);

  const InterfaceOutput out =
      evaluate_interface(contract, net, query, store, policies.scope, policies.standing);

  fs::create_directories(args.out_dir);
  const fs::path base = fs::path(args.out_dir);
  write_file(base / (query.query_id + ".verdict.json"), canonical_dump(output_to_json(out)));
  const std::string transcript = render_transcript(out, contract);
  write_file(base / (query.query_id + ".transcript.txt"), transcript);
  for (const auto& token : out.certificates)
    write_file(base / (token.cert_hash + ".cert.json"), canonical_dump(token_to_json(token)));

  if (!args.log_path.empty()) {
    EntitlementLog log;
    if (fs::exists(args.log_path)) log = EntitlementLog::load(args.log_path);
    HistoryEntry entry;
    entry.event = LogEvent::Issued;
    entry.query_id = query.query_id;
    entry.new_status = std::string(1, status_letter(out.status));
    if (!out.certificates.empty()) entry.cert_hash = out.certificates.front().cert_hash;
    log.append(std::move(entry));
    log.save(args.log_path);
  }

  if (args.format == "json") {
    std::cout << canonical_dump(output_to_json(out)) << "\n";
  } else {
    std::cout << transcript;
  }
  return kExitOk;
}

int cmd_check(const CommonArgs& args, const std::string& cert_path) {
  const DeploymentContract contract = contract_from_file(args.contract_path);
  const PolicyBundle policies = load_policies(args.policies_path);
  const RecordStore store = RecordStore::from_jsonl_file(args.records_path);
  const json token_json = parse_json_file(cert_path);

  const CheckResult result =
      check_certificate(contract, token_json, store, policies.scope, policies.standing);
  if (result.accepted) {
    std::cout << "accepted\n";
    return kExitOk;
  }
  std::cout << "rejected\n";
  for (const auto& f : result.failures)
    std::cout << failure_code_name(f.code) << " (" << f.field << ")\n";
  return kExitSemantic;
}

int cmd_scenario(const std::string& scenario_path, const std::string& out_dir,
                 const std::string& format) {
  const Scenario scenario = load_scenario(scenario_path);
  const ScenarioRunResult result = run_scenario(scenario, out_dir);
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : result.rows) {
      json r;
      r["query_id"] = row.query_id;
      r["at"] = row.at.str();
      r["status"] = std::string(1, status_letter(row.status));
      r["reason"] = row.reason;
      if (row.bounds) r["bounds"] = {row.bounds->lo.str(), row.bounds->hi.str()};
      r["stages_used"] = row.stages_used;
      r["cost_spent"] = row.cost_spent;
      r["matched"] = row.matched;
      rows.push_back(std::move(r));
    }
    std::cout << canonical_dump(rows) << "\n";
  } else {
    std::cout << result.report;
  }
  if (result.exit_code != 0) {
    std::cerr << "expectation mismatch\n";
    return kExitSemantic;
  }
  return kExitOk;
}

int cmd_challenge(const CommonArgs& args, const std::string& cert_path, const std::string& role,
                  const std::string& ground, const std::string& challenge_id) {
  const DeploymentContract contract = contract_from_file(args.contract_path);
  const PolicyBundle policies = load_policies(args.policies_path);
  const RecordStore store = RecordStore::from_jsonl_file(args.records_path);
  const json token_json = parse_json_file(cert_path);
  const std::string cert_hash = token_json.value("cert_hash", std::string());

  EntitlementLog log;
  if (fs::exists(args.log_path)) log = EntitlementLog::load(args.log_path);

  CertificateRegistry registry;
  registry[cert_hash] = token_json;

  Challenge challenge;
  challenge.challenge_id = challenge_id;
  challenge.role = challenger_role_from_name(role);
  challenge.target_cert_hash = cert_hash;
  challenge.ground = challenge_ground_from_name(ground);
  challenge.submitted_at = contract.record_time;

  submit_challenge(log, registry, challenge);
  const RecheckOutcome outcome =
      recheck(contract, challenge, registry, store, policies.scope, policies.standing, log);

  if (outcome.upheld) {
    const InterfaceOutput revised =
        revise_status(log, outcome.query_id, outcome, contract.contract_hash);
    fs::create_directories(args.out_dir);
    write_file(fs::path(args.out_dir) / (outcome.query_id + ".revised.verdict.json"),
               canonical_dump(output_to_json(revised)));
    std::cout << "upheld; status revised to U (" << reason_class_name(*revised.reason) << ")\n";
  } else {
    std::cout << "dismissed\n";
  }
  for (const auto& f : outcome.result.failures)
    std::cout << failure_code_name(f.code) << " (" << f.field << ")\n";
  log.save(args.log_path);
  return kExitOk;
}

int cmd_replay(const std::string& log_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw ParseError("cannot open log '" + log_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const ReplayResult result = replay_verify(ss.str());
  if (result.valid) {
    std::cout << "valid\n";
    return kExitOk;
  }
  std::cout << "invalid at seq " << result.bad_seq << "\n";
  return kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certigate: certificate-gated decision layer"};
  app.set_version_flag("--version", kVerifierVersion);
  app.require_subcommand(1);

  CommonArgs common;
  std::string query_path, cert_path, scenario_path, log_path;
  std::string role = "auditor", ground = "witness_validity", challenge_id = "challenge-1";

  auto* evaluate = app.add_subcommand("evaluate", "evaluate one query under a contract");
  evaluate->add_option("--contract", common.contract_path)->required();
  evaluate->add_option("--net", common.net_path)->required();
  evaluate->add_option("--records", common.records_path)->required();
  evaluate->add_option("--policies", common.policies_path)->required();
  evaluate->add_option("--query", query_path)->required();
  evaluate->add_option("--out", common.out_dir);
  evaluate->add_option("--log", common.log_path);
  evaluate->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check", "independently re-verify a certificate");
  check->add_option("--contract", common.contract_path)->required();
  check->add_option("--cert", cert_path)->required();
  check->add_option("--records", common.records_path)->required();
  check->add_option("--policies", common.policies_path)->required();

  auto* scenario = app.add_subcommand("scenario", "replay a bundled scenario timeline");
  scenario->add_option("--scenario", scenario_path)->required();
  scenario->add_option("--out", common.out_dir)->required();
  scenario->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  auto* challenge = app.add_subcommand("challenge", "challenge a certificate and re-check it");
  challenge->add_option("--contract", common.contract_path)->required();
  challenge->add_option("--cert", cert_path)->required();
  challenge->add_option("--records", common.records_path)->required();
  challenge->add_option("--policies", common.policies_path)->required();
  challenge->add_option("--log", common.log_path)->required();
  challenge->add_option("--role", role)->check(CLI::IsMember({"affected_party", "auditor"}));
  challenge->add_option("--ground", ground)
      ->check(CLI::IsMember({"witness_validity", "scope_applicability", "provenance_defect"}));
  challenge->add_option("--challenge-id", challenge_id);
  challenge->add_option("--out", common.out_dir);

  auto* replay = app.add_subcommand("replay", "re-verify an entitlement log hash chain");
  replay->add_option("--log", log_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(common, query_path);
    if (check->parsed()) return cmd_check(common, cert_path);
    if (scenario->parsed()) return cmd_scenario(scenario_path, common.out_dir, common.format);
    if (challenge->parsed()) return cmd_challenge(common, cert_path, role, ground, challenge_id);
    if (replay->parsed()) return cmd_replay(log_path);
  } catch (const ConfigurationError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const HashMismatch& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitUsage;
}
