#pragma once

#include <functional>

#include "certigate/certificate.hpp"

namespace certigate {

enum class ReasonClass { UEvidence, UScope, UModel, UCompute };
const char* reason_class_name(ReasonClass r);
ReasonClass reason_class_from_name(const std::string& name);

struct UndeterminedDetail {
  std::vector<std::string> failed_checks;
  std::optional<Interval> last_bounds;
  int stages_used = 0;
  long cost_spent = 0;
  bool exhausted = false;
};

// I_C(x) = <status, trace>. Categorical statuses carry at least one adequate
// certificate whose witness forces them; Undetermined carries exactly one
// reason class plus diagnostics, and never a certificate.
struct InterfaceOutput {
  Status status = Status::Undetermined;
  std::vector<CertificateToken> certificates;
  std::optional<ReasonClass> reason;
  UndeterminedDetail detail;
  std::string query_id;
  std::string contract_hash;
};

json output_to_json(const InterfaceOutput& out);
InterfaceOutput output_from_json(const json& j);

struct GateQuery {
  std::string query_id;
  QueryMeta meta;
  Predicate predicate;
  FeatureSpec feature_spec;
};

// Parses a query file. Threshold predicates take tau from the contract (the
// public standing triple owns the threshold); a query-supplied tau would be
// a second source of truth and is rejected.
GateQuery parse_query(const json& j, const DeploymentContract& contract, size_t output_arity);

// The full pipeline: scope gate, standing gate, witness search, certificate
// issuance or reason classification. Throws ConfigurationError when contract
// hashes disagree with loaded artifacts (model, policies, verifier).
InterfaceOutput evaluate_interface(const DeploymentContract& contract, const NetworkModel& net,
                                   const GateQuery& query, const RecordStore& store,
                                   const ScopePolicy& scope_policy,
                                   const StandingPolicy& standing_policy);

// Precedence: scope failures first (downstream evaluation is meaningless),
// then evidence, then the compute/model split by budget exhaustion.
ReasonClass classify_undetermined(bool scope_fail, bool standing_fail, bool exhausted);

// Human transcript; always rendered alongside the structured payload.
std::string render_transcript(const InterfaceOutput& out, const DeploymentContract& contract);

// Binary oracle for the decider construction: total A/D answers with a
// serialized certificate per point.
struct OracleAnswer {
  Status status = Status::Undetermined;
  json token_json;
};
using BinaryOracle = std::function<OracleAnswer(const std::vector<Rational>&)>;

// A total, certificate-sound binary interface yields a decision procedure:
// run the oracle, re-verify the certificate independently, output the
// witnessed disjunct. Any certificate that fails re-verification (or a
// non-binary answer) raises SoundnessViolation, exhibiting that the oracle
// was not certificate-sound on its declared scope.
class Decider {
 public:
  struct Decision {
    Status status;
    json token_json;
  };

  Decider(BinaryOracle oracle, DeploymentContract contract, const RecordStore* store,
          const ScopePolicy* scope_policy, const StandingPolicy* standing_policy,
          Predicate predicate);

  Decision decide(const std::vector<Rational>& x) const;

 private:
  BinaryOracle oracle_;
  DeploymentContract contract_;
  const RecordStore* store_;
  const ScopePolicy* scope_policy_;
  const StandingPolicy* standing_policy_;
  Predicate predicate_;
};

Decider derive_decider(BinaryOracle oracle, const DeploymentContract& contract,
                       const RecordStore& store, const ScopePolicy& scope_policy,
                       const StandingPolicy& standing_policy, const Predicate& predicate);

}  // namespace certigate
