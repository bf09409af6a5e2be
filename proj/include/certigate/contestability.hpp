#pragma once

#include <map>

#include "certigate/gate.hpp"

namespace certigate {

/*
Entitlement history
===================

Append-only JSONL log of issuance, challenge, and revision events. Each entry
carries the previous entry's hash and its own hash over the canonical
serialization of all remaining fields:

  entry_hash_n = sha256(canonical(entry_n minus entry_hash))
  prev_entry_hash_n = entry_hash_{n-1}, genesis links to the zero digest.

Any byte flip, field edit, reordering, or mid-log deletion breaks the chain
at a recomputable sequence number. Limitation: a bare hash chain cannot
detect truncation of the final entries; deployments that need that must
anchor the head digest externally (checkpointing hook, out of scope here).

Challenges are processed synchronously in submission order. A successful
challenge never strengthens a verdict: revision always moves to Undetermined
and a fresh query must re-establish any categorical status.
*/

enum class ChallengerRole { AffectedParty, Auditor };
const char* challenger_role_name(ChallengerRole r);
// Throws UnauthorizedChallenger for anything outside the two allowed roles.
ChallengerRole challenger_role_from_name(const std::string& name);

enum class ChallengeGround { WitnessValidity, ScopeApplicability, ProvenanceDefect };
const char* challenge_ground_name(ChallengeGround g);
ChallengeGround challenge_ground_from_name(const std::string& name);

struct Challenge {
  std::string challenge_id;
  ChallengerRole role = ChallengerRole::Auditor;
  std::string target_cert_hash;
  ChallengeGround ground = ChallengeGround::WitnessValidity;
  Rational submitted_at;
  std::string payload;  // optional evidence references
};

enum class LogEvent { Issued, Challenged, Upheld, Dismissed, Revised };
const char* log_event_name(LogEvent e);

// Fixed schema; unused fields stay empty so tampering anywhere is hashed.
struct HistoryEntry {
  long seq = 0;
  LogEvent event = LogEvent::Issued;
  std::string query_id;
  std::string cert_hash;
  std::string new_status;
  std::string challenge_id;
  std::string challenger_role;
  std::string ground;
  std::vector<std::string> failure_codes;
  std::string prev_entry_hash;
  std::string entry_hash;
};

json history_entry_to_json(const HistoryEntry& e);

class EntitlementLog {
 public:
  const std::vector<HistoryEntry>& entries() const { return entries_; }

  // Appends with chained hashes; returns the new seq.
  long append(HistoryEntry entry);

  std::string to_jsonl() const;
  void save(const std::string& path) const;
  static EntitlementLog load(const std::string& path);  // rejects broken chains

  // Latest verdict status for a query (ISSUED / REVISED entries), if any.
  std::optional<std::string> current_status(const std::string& query_id) const;

 private:
  std::vector<HistoryEntry> entries_;
};

struct ReplayResult {
  bool valid = false;
  long bad_seq = -1;
};

// Re-verifies a serialized log end to end: parseable lines, gapless seq,
// intact hash chain. Works on raw text so damaged files can be analyzed.
ReplayResult replay_verify(const std::string& jsonl_text);

struct ChallengeAck {
  std::string challenge_id;
  long seq = 0;
};

// Known certificates, keyed by cert_hash, as serialized tokens.
using CertificateRegistry = std::map<std::string, json>;

ChallengeAck submit_challenge(EntitlementLog& log, const CertificateRegistry& registry,
                              const Challenge& challenge);

struct RecheckOutcome {
  bool upheld = false;
  CheckResult result;
  Challenge challenge;
  std::string query_id;
};

// Re-runs the contractual check against current stores; upheld iff the
// challenged aspect now fails. witness_validity targets WITNESS_INVALID,
// scope_applicability targets SCOPE_MISMATCH, provenance_defect targets
// PROVENANCE_FAIL / HASH_MISMATCH / FIELD_MISSING. Outcome entry appended.
RecheckOutcome recheck(const DeploymentContract& contract, const Challenge& challenge,
                       const CertificateRegistry& registry, const RecordStore& store,
                       const ScopePolicy& scope_policy, const StandingPolicy& standing_policy,
                       EntitlementLog& log);

// Emits the superseding Undetermined output for an upheld challenge and
// appends the REVISED entry. Reason mapping: SCOPE_MISMATCH -> U-SCOPE;
// WITNESS_INVALID -> U-MODEL; PROVENANCE_FAIL / STANDING_FAIL / integrity
// codes -> U-EVIDENCE. Throws NoUpheldChallenge otherwise.
InterfaceOutput revise_status(EntitlementLog& log, const std::string& query_id,
                              const RecheckOutcome& outcome, const std::string& contract_hash);

}  // namespace certigate
