#include "certigate/contestability.hpp"

#include <fstream>
#include <sstream>

#include "certigate/errors.hpp"

namespace certigate {

const char* challenger_role_name(ChallengerRole r) {
  return r == ChallengerRole::AffectedParty ? "affected_party" : "auditor";
}

ChallengerRole challenger_role_from_name(const std::string& name) {
  if (name == "affected_party") return ChallengerRole::AffectedParty;
  if (name == "auditor") return ChallengerRole::Auditor;
  throw UnauthorizedChallenger("role '" + name + "' may not challenge");
}

const char* challenge_ground_name(ChallengeGround g) {
  switch (g) {
    case ChallengeGround::WitnessValidity: return "witness_validity";
    case ChallengeGround::ScopeApplicability: return "scope_applicability";
    case ChallengeGround::ProvenanceDefect: return "provenance_defect";
  }
  return "witness_validity";
}

ChallengeGround challenge_ground_from_name(const std::string& name) {
  if (name == "witness_validity") return ChallengeGround::WitnessValidity;
  if (name == "scope_applicability") return ChallengeGround::ScopeApplicability;
  if (name == "provenance_defect") return ChallengeGround::ProvenanceDefect;
  throw ParseError("unknown challenge ground '" + name + "'");
}

const char* log_event_name(LogEvent e) {
  switch (e) {
    case LogEvent::Issued: return "ISSUED";
    case LogEvent::Challenged: return "CHALLENGED";
    case LogEvent::Upheld: return "UPHELD";
    case LogEvent::Dismissed: return "DISMISSED";
    case LogEvent::Revised: return "REVISED";
  }
  return "ISSUED";
}

namespace {

LogEvent log_event_from_name(const std::string& name) {
  if (name == "ISSUED") return LogEvent::Issued;
  if (name == "CHALLENGED") return LogEvent::Challenged;
  if (name == "UPHELD") return LogEvent::Upheld;
  if (name == "DISMISSED") return LogEvent::Dismissed;
  if (name == "REVISED") return LogEvent::Revised;
  throw ParseError("unknown log event '" + name + "'");
}

}  // namespace

json history_entry_to_json(const HistoryEntry& e) {
  json j;
  j["seq"] = e.seq;
  j["event"] = log_event_name(e.event);
  j["query_id"] = e.query_id;
  j["cert_hash"] = e.cert_hash;
  j["new_status"] = e.new_status;
  j["challenge_id"] = e.challenge_id;
  j["challenger_role"] = e.challenger_role;
  j["ground"] = e.ground;
  j["failure_codes"] = e.failure_codes;
  j["prev_entry_hash"] = e.prev_entry_hash;
  j["entry_hash"] = e.entry_hash;
  return j;
}

namespace {

HistoryEntry history_entry_from_json(const json& j) {
  HistoryEntry e;
  e.seq = j.at("seq").get<long>();
  e.event = log_event_from_name(j.at("event").get<std::string>());
  e.query_id = j.at("query_id").get<std::string>();
  e.cert_hash = j.at("cert_hash").get<std::string>();
  e.new_status = j.at("new_status").get<std::string>();
  e.challenge_id = j.at("challenge_id").get<std::string>();
  e.challenger_role = j.at("challenger_role").get<std::string>();
  e.ground = j.at("ground").get<std::string>();
  e.failure_codes = j.at("failure_codes").get<std::vector<std::string>>();
  e.prev_entry_hash = j.at("prev_entry_hash").get<std::string>();
  e.entry_hash = j.at("entry_hash").get<std::string>();
  return e;
}

}  // namespace

long EntitlementLog::append(HistoryEntry entry) {
  entry.seq = static_cast<long>(entries_.size());
  entry.prev_entry_hash = entries_.empty() ? kZeroDigest : entries_.back().entry_hash;
  entry.entry_hash = payload_hash(history_entry_to_json(entry), "entry_hash");
  entries_.push_back(std::move(entry));
  return entries_.back().seq;
}

std::string EntitlementLog::to_jsonl() const {
  std::string out;
  for (const auto& e : entries_) {
    out += canonical_dump(history_entry_to_json(e));
    out += '\n';
  }
  return out;
}

void EntitlementLog::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write log '" + path + "'");
  out << to_jsonl();
}

EntitlementLog EntitlementLog::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open log '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const ReplayResult replay = replay_verify(text);
  if (!replay.valid)
    throw HashMismatch("log '" + path + "' fails replay at seq " + std::to_string(replay.bad_seq));
  EntitlementLog log;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    log.entries_.push_back(history_entry_from_json(json::parse(line)));
  }
  return log;
}

std::optional<std::string> EntitlementLog::current_status(const std::string& query_id) const {
  std::optional<std::string> status;
  for (const auto& e : entries_) {
    if (e.query_id != query_id) continue;
    if (e.event == LogEvent::Issued || e.event == LogEvent::Revised) status = e.new_status;
  }
  return status;
}

ReplayResult replay_verify(const std::string& jsonl_text) {
  std::istringstream in(jsonl_text);
  std::string line;
  long seq = 0;
  std::string prev = kZeroDigest;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      return ReplayResult{false, seq};
    }
    HistoryEntry e;
    try {
      e = history_entry_from_json(j);
    } catch (const std::exception&) {
      return ReplayResult{false, seq};
    }
    if (e.seq != seq) return ReplayResult{false, seq};
    if (e.prev_entry_hash != prev) return ReplayResult{false, seq};
    if (payload_hash(j, "entry_hash") != e.entry_hash) return ReplayResult{false, seq};
    prev = e.entry_hash;
    ++seq;
  }
  return ReplayResult{true, -1};
}

ChallengeAck submit_challenge(EntitlementLog& log, const CertificateRegistry& registry,
                              const Challenge& challenge) {
  if (!registry.count(challenge.target_cert_hash))
    throw UnknownCertificate("no certificate " + challenge.target_cert_hash);

  const json& token_json = registry.at(challenge.target_cert_hash);
  HistoryEntry entry;
  entry.event = LogEvent::Challenged;
  entry.query_id = token_json.contains("claim") && token_json.at("claim").contains("query_id")
                       ? token_json.at("claim").at("query_id").get<std::string>()
                       : "";
  entry.cert_hash = challenge.target_cert_hash;
  entry.challenge_id = challenge.challenge_id;
  entry.challenger_role = challenger_role_name(challenge.role);
  entry.ground = challenge_ground_name(challenge.ground);
  const long seq = log.append(std::move(entry));
  return ChallengeAck{challenge.challenge_id, seq};
}

namespace {

bool ground_hit(ChallengeGround ground, const CheckResult& result) {
  switch (ground) {
    case ChallengeGround::WitnessValidity:
      return result.has_code(FailureCode::WitnessInvalid);
    case ChallengeGround::ScopeApplicability:
      return result.has_code(FailureCode::ScopeMismatch);
    case ChallengeGround::ProvenanceDefect:
      return result.has_code(FailureCode::ProvenanceFail) ||
             result.has_code(FailureCode::HashMismatch) ||
             result.has_code(FailureCode::FieldMissing);
  }
  return false;
}

}  // namespace

RecheckOutcome recheck(const DeploymentContract& contract, const Challenge& challenge,
                       const CertificateRegistry& registry, const RecordStore& store,
                       const ScopePolicy& scope_policy, const StandingPolicy& standing_policy,
                       EntitlementLog& log) {
  if (!registry.count(challenge.target_cert_hash))
    throw UnknownCertificate("no certificate " + challenge.target_cert_hash);
  const json& token_json = registry.at(challenge.target_cert_hash);

  RecheckOutcome outcome;
  outcome.challenge = challenge;
  outcome.result = check_certificate(contract, token_json, store, scope_policy, standing_policy);
  outcome.upheld = ground_hit(challenge.ground, outcome.result);
  outcome.query_id = token_json.contains("claim") && token_json.at("claim").contains("query_id")
                         ? token_json.at("claim").at("query_id").get<std::string>()
                         : "";

  HistoryEntry entry;
  entry.event = outcome.upheld ? LogEvent::Upheld : LogEvent::Dismissed;
  entry.query_id = outcome.query_id;
  entry.cert_hash = challenge.target_cert_hash;
  entry.challenge_id = challenge.challenge_id;
  entry.challenger_role = challenger_role_name(challenge.role);
  entry.ground = challenge_ground_name(challenge.ground);
  for (const auto& f : outcome.result.failures)
    entry.failure_codes.push_back(failure_code_name(f.code));
  log.append(std::move(entry));
  return outcome;
}

InterfaceOutput revise_status(EntitlementLog& log, const std::string& query_id,
                              const RecheckOutcome& outcome, const std::string& contract_hash) {
  if (!outcome.upheld)
    throw NoUpheldChallenge("challenge '" + outcome.challenge.challenge_id + "' was not upheld");
  bool seen_upheld = false;
  for (const auto& e : log.entries())
    if (e.event == LogEvent::Upheld && e.query_id == query_id &&
        e.challenge_id == outcome.challenge.challenge_id)
      seen_upheld = true;
  if (!seen_upheld)
    throw NoUpheldChallenge("no UPHELD entry for query '" + query_id + "' and challenge '" +
                            outcome.challenge.challenge_id + "'");

  ReasonClass reason = ReasonClass::UEvidence;
  for (const auto& f : outcome.result.failures) {
    if (f.code == FailureCode::ScopeMismatch) {
      reason = ReasonClass::UScope;
      break;
    }
    if (f.code == FailureCode::WitnessInvalid) {
      reason = ReasonClass::UModel;
      break;
    }
    // PROVENANCE_FAIL, STANDING_FAIL, HASH_MISMATCH, FIELD_MISSING all mark
    // defects in the public trace: U-EVIDENCE.
  }

  InterfaceOutput out;
  out.status = Status::Undetermined;
  out.reason = reason;
  out.query_id = query_id;
  out.contract_hash = contract_hash;
  for (const auto& f : outcome.result.failures)
    out.detail.failed_checks.push_back(std::string(failure_code_name(f.code)) + ":" + f.field);

  HistoryEntry entry;
  entry.event = LogEvent::Revised;
  entry.query_id = query_id;
  entry.cert_hash = outcome.challenge.target_cert_hash;
  entry.new_status = "U";
  entry.challenge_id = outcome.challenge.challenge_id;
  entry.ground = challenge_ground_name(outcome.challenge.ground);
  for (const auto& f : outcome.result.failures)
    entry.failure_codes.push_back(failure_code_name(f.code));
  log.append(std::move(entry));
  return out;
}

}  // namespace certigate
