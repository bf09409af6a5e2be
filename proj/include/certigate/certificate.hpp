#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "certigate/decision.hpp"
#include "certigate/record.hpp"

namespace certigate {

/*
Certificate layer
=================

The deployment contract pins everything a verdict depends on: scope policy,
internal regime descriptor, configuration reference (model / verifier /
config hashes), search budget and stage cap, standing policy, threshold and
record time. A certificate token packages a claim, its forcing witness, the
assumptions, the declared scope, both time indices and full provenance.
Both objects embed their own SHA-256 digest over the canonical serialization
of the remaining fields.

check_certificate runs, in declared order:

  1. field completeness       -> FIELD_MISSING     (non-selective disclosure)
  2. digest integrity         -> HASH_MISMATCH
  3. witness forcing          -> WITNESS_INVALID   (re-derived, not trusted)
  4. scope admissibility      -> SCOPE_MISMATCH    (scope_kappa within Sigma)
  5. provenance pinning       -> PROVENANCE_FAIL   (hashes resolve and match)
  6. standing at record time  -> STANDING_FAIL     (tau, t, evidential standard)

The order runs the cheapest and most objective checks first and makes the
reported failure code deterministic. A token is adequate iff the whole check
accepts (scope admissibility folded in).
*/

struct RegimeDescriptor {
  std::vector<std::string> activations{"relu", "sigmoid", "tanh"};
  unsigned precision_bits = 32;
  std::string refinement = "bisection-widest-dim";
  std::string arithmetic = "exact-rational";
};

// System-configuration reference t_int.
struct ConfigRef {
  Rational timestamp;
  std::string model_hash;
  std::string verifier_version;
  std::string config_hash;
};

struct DeploymentContract {
  std::string scope_policy_id;
  RegimeDescriptor regime;
  ConfigRef t_int;
  long budget = 0;
  int n_max = 0;
  std::string standing_policy_id;
  Rational tau;
  Rational record_time;
  Rational input_radius;  // widening of the featurized input point; 0 = exact
  std::string contract_hash;
};

json contract_to_json(const DeploymentContract& c);
DeploymentContract contract_from_json(const json& j);  // verifies embedded hash
DeploymentContract contract_from_file(const std::string& path);
// Recomputes and embeds contract_hash.
void seal_contract(DeploymentContract& c);

// Structured claim a certificate is about.
struct ClaimRef {
  std::string predicate_kind;  // "threshold" | "unique_argmax" | "deny_query" | "top_k"
  std::string query_id;
  size_t output_index = 0;     // threshold output or argmax candidate
  Rational tau;                // threshold only
  std::vector<size_t> top_set; // top_k only
  size_t num_outputs = 1;
};

Predicate claim_predicate(const ClaimRef& claim);

// Sigma_kappa: where and when the certificate claims to apply.
struct ScopeDescriptor {
  std::string jurisdiction;
  Rational window_start;
  Rational window_end;
  std::string identity_rule_id;
};

struct Provenance {
  std::string model_hash;
  std::string verifier_version;
  std::string config_hash;
  std::vector<std::string> record_item_hashes;
  std::uint64_t replay_seed = 0;
};

enum class CertType { Formal, Institutional, Mixed };
const char* cert_type_name(CertType t);
CertType cert_type_from_name(const std::string& name);

struct CertificateToken {
  CertType cert_type = CertType::Formal;
  ClaimRef claim;
  ForcingWitness witness;
  std::vector<std::string> assumptions;
  ScopeDescriptor scope;
  Rational record_time;
  ConfigRef t_int;
  Provenance provenance;
  std::string cert_hash;
};

json token_to_json(const CertificateToken& token);
CertificateToken token_from_json(const json& j);

enum class FailureCode {
  WitnessInvalid,
  ScopeMismatch,
  StandingFail,
  ProvenanceFail,
  FieldMissing,
  HashMismatch,
};
const char* failure_code_name(FailureCode c);

struct CheckFailure {
  std::string field;
  FailureCode code;
};

struct CheckResult {
  bool accepted = false;
  std::vector<CheckFailure> failures;

  bool has_code(FailureCode c) const;
};

// Builds a fully populated token. The witness must force the claim
// (WitnessRejected otherwise) and every record reference must resolve in the
// store as of the contract's record time (UnresolvedRecordRef). Deterministic
// for identical inputs; cert_type is formal without record refs, mixed with.
CertificateToken issue_certificate(const DeploymentContract& contract, const ClaimRef& claim,
                                   const ForcingWitness& witness, const ScopeDescriptor& scope,
                                   const std::vector<std::string>& record_refs,
                                   const RecordStore& store);

// Auditor-side re-verification over the serialized token. All failures are
// reported in the result; nothing throws.
CheckResult check_certificate(const DeploymentContract& contract, const json& token_json,
                              const RecordStore& store, const ScopePolicy& scope_policy,
                              const StandingPolicy& standing_policy);

// Adeq_C: check accepts (scope admissibility included). Exposed separately
// for the decider construction.
bool adequacy(const DeploymentContract& contract, const json& token_json, const RecordStore& store,
              const ScopePolicy& scope_policy, const StandingPolicy& standing_policy);

enum class ForcesOutcome { Asserts, Denies, Neither };

// Which disjunct (if any) the token's witness forces for the predicate.
ForcesOutcome forces(const CertificateToken& token, const Predicate& pred);

}  // namespace certigate
