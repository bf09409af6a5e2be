#include "certigate/gate.hpp"

#include <sstream>

#include "certigate/errors.hpp"
#include "certigate/version.hpp"

namespace certigate {

const char* reason_class_name(ReasonClass r) {
  switch (r) {
    case ReasonClass::UEvidence: return "U-EVIDENCE";
    case ReasonClass::UScope: return "U-SCOPE";
    case ReasonClass::UModel: return "U-MODEL";
    case ReasonClass::UCompute: return "U-COMPUTE";
  }
  return "U-MODEL";
}

ReasonClass reason_class_from_name(const std::string& name) {
  if (name == "U-EVIDENCE") return ReasonClass::UEvidence;
  if (name == "U-SCOPE") return ReasonClass::UScope;
  if (name == "U-MODEL") return ReasonClass::UModel;
  if (name == "U-COMPUTE") return ReasonClass::UCompute;
  throw ParseError("unknown reason class '" + name + "'");
}

ReasonClass classify_undetermined(bool scope_fail, bool standing_fail, bool exhausted) {
  if (scope_fail) return ReasonClass::UScope;
  if (standing_fail) return ReasonClass::UEvidence;
  return exhausted ? ReasonClass::UCompute : ReasonClass::UModel;
}

json output_to_json(const InterfaceOutput& out) {
  json j;
  j["query_id"] = out.query_id;
  j["contract_hash"] = out.contract_hash;
  j["status"] = std::string(1, status_letter(out.status));
  json trace;
  if (out.status == Status::Undetermined) {
    trace["reason"] = reason_class_name(*out.reason);
    json detail;
    detail["failed_checks"] = out.detail.failed_checks;
    if (out.detail.last_bounds) {
      detail["last_bounds"] = {out.detail.last_bounds->lo.str(), out.detail.last_bounds->hi.str()};
    } else {
      detail["last_bounds"] = nullptr;
    }
    detail["stages_used"] = out.detail.stages_used;
    detail["cost_spent"] = out.detail.cost_spent;
    detail["exhausted"] = out.detail.exhausted;
    trace["detail"] = std::move(detail);
  } else {
    json certs = json::array();
    for (const auto& token : out.certificates) certs.push_back(token_to_json(token));
    trace["certificates"] = std::move(certs);
  }
  j["trace"] = std::move(trace);
  return j;
}

InterfaceOutput output_from_json(const json& j) {
  InterfaceOutput out;
  try {
    out.query_id = j.at("query_id").get<std::string>();
    out.contract_hash = j.at("contract_hash").get<std::string>();
    out.status = status_from_letter(j.at("status").get<std::string>().at(0));
    const json& trace = j.at("trace");
    if (out.status == Status::Undetermined) {
      out.reason = reason_class_from_name(trace.at("reason").get<std::string>());
      const json& detail = trace.at("detail");
      out.detail.failed_checks = detail.at("failed_checks").get<std::vector<std::string>>();
      if (!detail.at("last_bounds").is_null()) {
        const auto& lb = detail.at("last_bounds");
        out.detail.last_bounds =
            Interval::make(Rational::from_string(lb.at(0).get<std::string>()),
                           Rational::from_string(lb.at(1).get<std::string>()));
      }
      out.detail.stages_used = detail.at("stages_used").get<int>();
      out.detail.cost_spent = detail.at("cost_spent").get<long>();
      out.detail.exhausted = detail.at("exhausted").get<bool>();
    } else {
      for (const auto& tj : trace.at("certificates")) out.certificates.push_back(token_from_json(tj));
      if (out.certificates.empty())
        throw ParseError("categorical verdict without a certificate");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed interface output: ") + e.what());
  }
  return out;
}

GateQuery parse_query(const json& j, const DeploymentContract& contract, size_t output_arity) {
  GateQuery q;
  try {
    q.query_id = j.at("query_id").get<std::string>();
    const json& meta = j.at("query_meta");
    q.meta.jurisdiction = meta.at("jurisdiction").get<std::string>();
    q.meta.query_time = Rational::from_string(meta.at("query_time").get<std::string>());
    q.meta.identity_rule_id = meta.at("identity_rule_id").get<std::string>();
    const json& pj = j.at("predicate");
    const std::string kind = pj.at("kind").get<std::string>();
    if (kind == "threshold") {
      if (pj.contains("tau"))
        throw ConfigurationError("query must not carry its own tau; the contract pins it");
      q.predicate = ThresholdPredicate{pj.at("output_index").get<size_t>(), contract.tau};
    } else if (kind == "unique_argmax" || kind == "deny_query") {
      ArgmaxPredicate p;
      p.mode = kind == "unique_argmax" ? ArgmaxMode::UniqueArgmax : ArgmaxMode::DenyQuery;
      p.candidate_index = pj.at("candidate_index").get<size_t>();
      p.num_outputs = output_arity;
      q.predicate = std::move(p);
    } else if (kind == "top_k") {
      ArgmaxPredicate p;
      p.mode = ArgmaxMode::TopK;
      for (size_t i : pj.at("K").get<std::vector<size_t>>()) p.top_set.insert(i);
      p.num_outputs = output_arity;
      q.predicate = std::move(p);
    } else {
      throw ParseError("unknown predicate kind '" + kind + "'");
    }
    q.feature_spec = feature_spec_from_json(j.at("feature_spec"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed query: ") + e.what());
  }
  return q;
}

namespace {

ClaimRef claim_for(const GateQuery& query, const DeploymentContract& contract,
                   size_t output_arity) {
  ClaimRef claim;
  claim.query_id = query.query_id;
  claim.num_outputs = output_arity;
  if (const auto* tp = std::get_if<ThresholdPredicate>(&query.predicate)) {
    claim.predicate_kind = "threshold";
    claim.output_index = tp->output_index;
    claim.tau = contract.tau;
  } else {
    const auto& ap = std::get<ArgmaxPredicate>(query.predicate);
    switch (ap.mode) {
      case ArgmaxMode::UniqueArgmax: claim.predicate_kind = "unique_argmax"; break;
      case ArgmaxMode::DenyQuery: claim.predicate_kind = "deny_query"; break;
      case ArgmaxMode::TopK: claim.predicate_kind = "top_k"; break;
    }
    claim.output_index = ap.candidate_index;
    claim.top_set.assign(ap.top_set.begin(), ap.top_set.end());
  }
  return claim;
}

}  // namespace

InterfaceOutput evaluate_interface(const DeploymentContract& contract, const NetworkModel& net,
                                   const GateQuery& query, const RecordStore& store,
                                   const ScopePolicy& scope_policy,
                                   const StandingPolicy& standing_policy) {
  // Configuration pinning before anything runs.
  if (contract.t_int.model_hash != net.model_hash)
    throw ConfigurationError("contract pins model " + contract.t_int.model_hash +
                             " but loaded network hashes to " + net.model_hash);
  if (contract.t_int.verifier_version != kVerifierVersion)
    throw ConfigurationError("contract pins verifier " + contract.t_int.verifier_version +
                             ", running " + kVerifierVersion);
  const std::string config_hash = canonical_hash(
      json{{"scope_policy", scope_policy_to_json(scope_policy)},
           {"standing_policy", standing_policy_to_json(standing_policy)}});
  if (contract.t_int.config_hash != config_hash)
    throw ConfigurationError("contract pins config " + contract.t_int.config_hash +
                             " but loaded policies hash to " + config_hash);
  if (contract.scope_policy_id != scope_policy.policy_id ||
      contract.standing_policy_id != standing_policy.policy_id)
    throw ConfigurationError("contract policy ids do not match loaded policies");

  InterfaceOutput out;
  out.query_id = query.query_id;
  out.contract_hash = contract.contract_hash;

  // 1. scope
  const ScopeResult scope = evaluate_scope(scope_policy, query.meta);
  if (!scope.pass) {
    out.status = Status::Undetermined;
    out.reason = classify_undetermined(true, false, false);
    out.detail.failed_checks.push_back("scope:" + scope.fail_reason);
    return out;
  }

  // 2. standing over the as-of record slice
  const auto slice = store.asof(contract.record_time);
  const StandingResult standing = evaluate_standing(standing_policy, slice);
  if (!standing.pass) {
    out.status = Status::Undetermined;
    out.reason = classify_undetermined(false, true, false);
    for (const auto& [cls, shortfall] : standing.missing)
      out.detail.failed_checks.push_back("standing:missing " + cls + " x" +
                                         std::to_string(shortfall));
    return out;
  }

  // 3. witness search over the featurized input box
  const std::vector<Rational> features = features_from_record(slice, query.feature_spec);
  const InputBox box = InputBox::widened(features, contract.input_radius);
  const DecideResult decided =
      budgeted_decide(net, box, query.predicate, contract.budget, contract.n_max);

  out.detail.last_bounds = decided.last_bounds;
  out.detail.stages_used = decided.stages_used;
  out.detail.cost_spent = decided.cost_spent;
  out.detail.exhausted = decided.exhausted;

  if (decided.status == Status::Undetermined) {
    out.status = Status::Undetermined;
    out.reason = classify_undetermined(false, false, decided.exhausted);
    return out;
  }

  out.status = decided.status;
  ClaimRef claim = claim_for(query, contract, net.output_arity);
  ScopeDescriptor scope_desc;
  scope_desc.jurisdiction = query.meta.jurisdiction;
  scope_desc.window_start = contract.record_time;
  scope_desc.window_end = contract.record_time;
  scope_desc.identity_rule_id = query.meta.identity_rule_id;
  std::vector<std::string> refs;
  refs.reserve(slice.size());
  for (const auto& item : slice) refs.push_back(item.content_hash);
  out.certificates.push_back(
      issue_certificate(contract, claim, *decided.witness, scope_desc, refs, store));
  return out;
}

std::string render_transcript(const InterfaceOutput& out, const DeploymentContract& contract) {
  std::ostringstream os;
  os << "Query " << out.query_id << "\n";
  os << "Contract " << out.contract_hash.substr(0, 16) << "... (standard '"
     << contract.standing_policy_id << "', threshold " << contract.tau.str()
     << ", record time " << contract.record_time.str() << ")\n";
  switch (out.status) {
    case Status::Asserted:
      os << "Status: ASSERTED\n";
      os << "As of record time " << contract.record_time.str() << ", under evidential standard '"
         << contract.standing_policy_id << "' and threshold " << contract.tau.str()
         << ", this deployment is entitled to assert the queried claim (certificate attached).\n";
      break;
    case Status::Denied:
      os << "Status: DENIED\n";
      os << "As of record time " << contract.record_time.str() << ", under evidential standard '"
         << contract.standing_policy_id << "' and threshold " << contract.tau.str()
         << ", this deployment is entitled to deny the queried claim (certificate attached).\n";
      break;
    case Status::Undetermined:
      os << "Status: UNDETERMINED (" << reason_class_name(*out.reason) << ")\n";
      os << "As of record time " << contract.record_time.str() << ", under evidential standard '"
         << contract.standing_policy_id << "' and threshold " << contract.tau.str()
         << ", this deployment is entitled neither to assert nor to deny the queried claim.\n";
      break;
  }
  if (out.status != Status::Undetermined) {
    const auto& w = out.certificates.front().witness;
    if (w.kind == ForcingWitness::Kind::Bound) {
      os << "Witness: certified score bounds [" << w.bound.lo.str() << ", " << w.bound.hi.str()
         << "] at refinement stage " << w.stage << ".\n";
    } else {
      os << "Witness: " << w.pairs.size() << " forced separation(s) at refinement stage "
         << w.stage << ".\n";
    }
    os << "Certificates attached: " << out.certificates.size() << "\n";
    for (const auto& t : out.certificates) os << "  sha256 " << t.cert_hash << "\n";
  } else {
    if (out.detail.last_bounds) {
      os << "Last certified bounds: [" << out.detail.last_bounds->lo.str() << ", "
         << out.detail.last_bounds->hi.str() << "] after " << out.detail.stages_used
         << " stage(s), " << out.detail.cost_spent << " leaf propagation(s)";
      os << (out.detail.exhausted ? "; budget exhausted.\n" : ".\n");
    }
    for (const auto& check : out.detail.failed_checks) os << "Failed check: " << check << "\n";
  }
  return os.str();
}

Decider::Decider(BinaryOracle oracle, DeploymentContract contract, const RecordStore* store,
                 const ScopePolicy* scope_policy, const StandingPolicy* standing_policy,
                 Predicate predicate)
    : oracle_(std::move(oracle)),
      contract_(std::move(contract)),
      store_(store),
      scope_policy_(scope_policy),
      standing_policy_(standing_policy),
      predicate_(std::move(predicate)) {}

Decider::Decision Decider::decide(const std::vector<Rational>& x) const {
  OracleAnswer answer = oracle_(x);
  if (answer.status == Status::Undetermined)
    throw SoundnessViolation("oracle is not total on the declared scope");
  const CheckResult check =
      check_certificate(contract_, answer.token_json, *store_, *scope_policy_, *standing_policy_);
  if (!check.accepted)
    throw SoundnessViolation("oracle certificate failed independent re-verification (" +
                             std::string(check.failures.empty()
                                             ? "no detail"
                                             : failure_code_name(check.failures.front().code)) +
                             ")");
  const CertificateToken token = token_from_json(answer.token_json);
  const ForcesOutcome fo = forces(token, predicate_);
  if ((answer.status == Status::Asserted && fo != ForcesOutcome::Asserts) ||
      (answer.status == Status::Denied && fo != ForcesOutcome::Denies))
    throw SoundnessViolation("oracle certificate does not force the reported disjunct");
  return Decision{answer.status, std::move(answer.token_json)};
}

Decider derive_decider(BinaryOracle oracle, const DeploymentContract& contract,
                       const RecordStore& store, const ScopePolicy& scope_policy,
                       const StandingPolicy& standing_policy, const Predicate& predicate) {
  return Decider(std::move(oracle), contract, &store, &scope_policy, &standing_policy, predicate);
}

}  // namespace certigate
