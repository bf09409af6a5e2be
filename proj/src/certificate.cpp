#include "certigate/certificate.hpp"

#include <fstream>
#include <sstream>

#include "certigate/errors.hpp"
#include "certigate/version.hpp"

namespace certigate {

const char* cert_type_name(CertType t) {
  switch (t) {
    case CertType::Formal: return "formal";
    case CertType::Institutional: return "institutional";
    case CertType::Mixed: return "mixed";
  }
  return "formal";
}

CertType cert_type_from_name(const std::string& name) {
  if (name == "formal") return CertType::Formal;
  if (name == "institutional") return CertType::Institutional;
  if (name == "mixed") return CertType::Mixed;
  throw ParseError("unknown certificate type '" + name + "'");
}

const char* failure_code_name(FailureCode c) {
  switch (c) {
    case FailureCode::WitnessInvalid: return "WITNESS_INVALID";
    case FailureCode::ScopeMismatch: return "SCOPE_MISMATCH";
    case FailureCode::StandingFail: return "STANDING_FAIL";
    case FailureCode::ProvenanceFail: return "PROVENANCE_FAIL";
    case FailureCode::FieldMissing: return "FIELD_MISSING";
    case FailureCode::HashMismatch: return "HASH_MISMATCH";
  }
  return "WITNESS_INVALID";
}

bool CheckResult::has_code(FailureCode c) const {
  for (const auto& f : failures)
    if (f.code == c) return true;
  return false;
}

// --- contract serialization ---

namespace {

json regime_to_json(const RegimeDescriptor& r) {
  json j;
  j["activations"] = r.activations;
  j["precision_bits"] = r.precision_bits;
  j["refinement"] = r.refinement;
  j["arithmetic"] = r.arithmetic;
  return j;
}

RegimeDescriptor regime_from_json(const json& j) {
  RegimeDescriptor r;
  r.activations = j.at("activations").get<std::vector<std::string>>();
  r.precision_bits = j.at("precision_bits").get<unsigned>();
  r.refinement = j.at("refinement").get<std::string>();
  r.arithmetic = j.at("arithmetic").get<std::string>();
  return r;
}

json config_ref_to_json(const ConfigRef& c) {
  json j;
  j["timestamp"] = c.timestamp.str();
  j["model_hash"] = c.model_hash;
  j["verifier_version"] = c.verifier_version;
  j["config_hash"] = c.config_hash;
  return j;
}

ConfigRef config_ref_from_json(const json& j) {
  ConfigRef c;
  c.timestamp = Rational::from_string(j.at("timestamp").get<std::string>());
  c.model_hash = j.at("model_hash").get<std::string>();
  c.verifier_version = j.at("verifier_version").get<std::string>();
  c.config_hash = j.at("config_hash").get<std::string>();
  return c;
}

}  // namespace

json contract_to_json(const DeploymentContract& c) {
  json j;
  j["scope_policy_id"] = c.scope_policy_id;
  j["regime"] = regime_to_json(c.regime);
  j["t_int"] = config_ref_to_json(c.t_int);
  j["budget"] = c.budget;
  j["n_max"] = c.n_max;
  j["standing_policy_id"] = c.standing_policy_id;
  j["tau"] = c.tau.str();
  j["record_time"] = c.record_time.str();
  j["input_radius"] = c.input_radius.str();
  j["contract_hash"] = c.contract_hash;
  return j;
}

void seal_contract(DeploymentContract& c) {
  c.contract_hash = payload_hash(contract_to_json(c), "contract_hash");
}

DeploymentContract contract_from_json(const json& j) {
  DeploymentContract c;
  try {
    c.scope_policy_id = j.at("scope_policy_id").get<std::string>();
    c.regime = regime_from_json(j.at("regime"));
    c.t_int = config_ref_from_json(j.at("t_int"));
    c.budget = j.at("budget").get<long>();
    c.n_max = j.at("n_max").get<int>();
    c.standing_policy_id = j.at("standing_policy_id").get<std::string>();
    c.tau = Rational::from_string(j.at("tau").get<std::string>());
    c.record_time = Rational::from_string(j.at("record_time").get<std::string>());
    c.input_radius = Rational::from_string(j.at("input_radius").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed contract: ") + e.what());
  }
  if (c.budget < 0 || c.n_max < 0) throw ParseError("contract budget and n_max must be >= 0");
  seal_contract(c);
  if (j.contains("contract_hash")) {
    const std::string embedded = j.at("contract_hash").get<std::string>();
    if (embedded != c.contract_hash)
      throw HashMismatch("contract hash " + embedded + " != recomputed " + c.contract_hash);
  }
  return c;
}

DeploymentContract contract_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open contract '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return contract_from_json(json::parse(ss.str()));
  } catch (const json::parse_error& e) {
    throw ParseError("contract '" + path + "' is not valid JSON: " + e.what());
  }
}

// --- claims ---

Predicate claim_predicate(const ClaimRef& claim) {
  if (claim.predicate_kind == "threshold")
    return ThresholdPredicate{claim.output_index, claim.tau};
  ArgmaxPredicate p;
  p.num_outputs = claim.num_outputs;
  if (claim.predicate_kind == "unique_argmax") {
    p.mode = ArgmaxMode::UniqueArgmax;
    p.candidate_index = claim.output_index;
  } else if (claim.predicate_kind == "deny_query") {
    p.mode = ArgmaxMode::DenyQuery;
    p.candidate_index = claim.output_index;
  } else if (claim.predicate_kind == "top_k") {
    p.mode = ArgmaxMode::TopK;
    p.top_set.insert(claim.top_set.begin(), claim.top_set.end());
  } else {
    throw ParseError("unknown predicate kind '" + claim.predicate_kind + "'");
  }
  return p;
}

namespace {

json claim_to_json(const ClaimRef& c) {
  json j;
  j["predicate_kind"] = c.predicate_kind;
  j["query_id"] = c.query_id;
  j["num_outputs"] = c.num_outputs;
  if (c.predicate_kind == "threshold") {
    j["output_index"] = c.output_index;
    j["tau"] = c.tau.str();
  } else if (c.predicate_kind == "top_k") {
    j["top_set"] = c.top_set;
  } else {
    j["candidate_index"] = c.output_index;
  }
  return j;
}

ClaimRef claim_from_json(const json& j) {
  ClaimRef c;
  c.predicate_kind = j.at("predicate_kind").get<std::string>();
  c.query_id = j.at("query_id").get<std::string>();
  c.num_outputs = j.at("num_outputs").get<size_t>();
  if (c.predicate_kind == "threshold") {
    c.output_index = j.at("output_index").get<size_t>();
    c.tau = Rational::from_string(j.at("tau").get<std::string>());
  } else if (c.predicate_kind == "top_k") {
    c.top_set = j.at("top_set").get<std::vector<size_t>>();
  } else {
    c.output_index = j.at("candidate_index").get<size_t>();
  }
  return c;
}

json witness_to_json(const ForcingWitness& w) {
  json j;
  j["stage"] = w.stage;
  if (w.kind == ForcingWitness::Kind::Bound) {
    j["kind"] = "bound";
    j["interval"] = {w.bound.lo.str(), w.bound.hi.str()};
  } else {
    j["kind"] = "separation";
    json pairs = json::array();
    for (const auto& p : w.pairs)
      pairs.push_back({{"winner", p.winner},
                       {"loser", p.loser},
                       {"winner_lo", p.winner_lo.str()},
                       {"loser_hi", p.loser_hi.str()}});
    j["pairs"] = std::move(pairs);
  }
  return j;
}

ForcingWitness witness_from_json(const json& j) {
  ForcingWitness w;
  w.stage = j.at("stage").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bound") {
    w.kind = ForcingWitness::Kind::Bound;
    const auto& iv = j.at("interval");
    w.bound = Interval::make(Rational::from_string(iv.at(0).get<std::string>()),
                             Rational::from_string(iv.at(1).get<std::string>()));
  } else if (kind == "separation") {
    w.kind = ForcingWitness::Kind::Separation;
    for (const auto& p : j.at("pairs")) {
      SeparationPair pair;
      pair.winner = p.at("winner").get<size_t>();
      pair.loser = p.at("loser").get<size_t>();
      pair.winner_lo = Rational::from_string(p.at("winner_lo").get<std::string>());
      pair.loser_hi = Rational::from_string(p.at("loser_hi").get<std::string>());
      w.pairs.push_back(std::move(pair));
    }
  } else {
    throw ParseError("unknown witness kind '" + kind + "'");
  }
  return w;
}

json scope_descriptor_to_json(const ScopeDescriptor& s) {
  json j;
  j["jurisdiction"] = s.jurisdiction;
  j["window_start"] = s.window_start.str();
  j["window_end"] = s.window_end.str();
  j["identity_rule_id"] = s.identity_rule_id;
  return j;
}

ScopeDescriptor scope_descriptor_from_json(const json& j) {
  ScopeDescriptor s;
  s.jurisdiction = j.at("jurisdiction").get<std::string>();
  s.window_start = Rational::from_string(j.at("window_start").get<std::string>());
  s.window_end = Rational::from_string(j.at("window_end").get<std::string>());
  s.identity_rule_id = j.at("identity_rule_id").get<std::string>();
  return s;
}

json provenance_to_json(const Provenance& p) {
  json j;
  j["model_hash"] = p.model_hash;
  j["verifier_version"] = p.verifier_version;
  j["config_hash"] = p.config_hash;
  j["record_item_hashes"] = p.record_item_hashes;
  j["replay_seed"] = p.replay_seed;
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.model_hash = j.at("model_hash").get<std::string>();
  p.verifier_version = j.at("verifier_version").get<std::string>();
  p.config_hash = j.at("config_hash").get<std::string>();
  p.record_item_hashes = j.at("record_item_hashes").get<std::vector<std::string>>();
  p.replay_seed = j.at("replay_seed").get<std::uint64_t>();
  return p;
}

const std::vector<std::string>& mandatory_token_fields() {
  static const std::vector<std::string> fields = {
      "cert_type", "claim",  "witness", "assumptions", "scope",
      "record_time", "t_int", "provenance", "cert_hash"};
  return fields;
}

}  // namespace

json token_to_json(const CertificateToken& token) {
  json j;
  j["cert_type"] = cert_type_name(token.cert_type);
  j["claim"] = claim_to_json(token.claim);
  j["witness"] = witness_to_json(token.witness);
  j["assumptions"] = token.assumptions;
  j["scope"] = scope_descriptor_to_json(token.scope);
  j["record_time"] = token.record_time.str();
  j["t_int"] = config_ref_to_json(token.t_int);
  j["provenance"] = provenance_to_json(token.provenance);
  j["cert_hash"] = token.cert_hash;
  return j;
}

CertificateToken token_from_json(const json& j) {
  CertificateToken t;
  try {
    t.cert_type = cert_type_from_name(j.at("cert_type").get<std::string>());
    t.claim = claim_from_json(j.at("claim"));
    t.witness = witness_from_json(j.at("witness"));
    t.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    t.scope = scope_descriptor_from_json(j.at("scope"));
    t.record_time = Rational::from_string(j.at("record_time").get<std::string>());
    t.t_int = config_ref_from_json(j.at("t_int"));
    t.provenance = provenance_from_json(j.at("provenance"));
    t.cert_hash = j.value("cert_hash", std::string());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate token: ") + e.what());
  }
  return t;
}

CertificateToken issue_certificate(const DeploymentContract& contract, const ClaimRef& claim,
                                   const ForcingWitness& witness, const ScopeDescriptor& scope,
                                   const std::vector<std::string>& record_refs,
                                   const RecordStore& store) {
  const Predicate pred = claim_predicate(claim);
  const bool asserts = witness_check(witness, pred, Status::Asserted);
  const bool denies = witness_check(witness, pred, Status::Denied);
  if (!asserts && !denies)
    throw WitnessRejected("witness does not force the claim for query '" + claim.query_id + "'");

  for (const auto& ref : record_refs)
    if (!store.resolves(ref, contract.record_time))
      throw UnresolvedRecordRef("record reference " + ref + " not in the record as of " +
                                contract.record_time.str());

  CertificateToken token;
  token.cert_type = record_refs.empty() ? CertType::Formal : CertType::Mixed;
  token.claim = claim;
  token.witness = witness;
  token.assumptions = {
      "exact rational interval arithmetic; monotone activations outward-rounded at "
      "declared precision_bits",
      "input box is the featurized record slice widened by the contract input_radius",
      "record slice taken as of the contract record_time",
  };
  token.scope = scope;
  token.record_time = contract.record_time;
  token.t_int = contract.t_int;
  token.provenance.model_hash = contract.t_int.model_hash;
  token.provenance.verifier_version = contract.t_int.verifier_version;
  token.provenance.config_hash = contract.t_int.config_hash;
  token.provenance.record_item_hashes = record_refs;
  token.provenance.replay_seed = 0;
  token.cert_hash = payload_hash(token_to_json(token), "cert_hash");
  return token;
}

namespace {

void add_failure(CheckResult& r, const std::string& field, FailureCode code) {
  r.failures.push_back(CheckFailure{field, code});
}

}  // namespace

CheckResult check_certificate(const DeploymentContract& contract, const json& token_json,
                              const RecordStore& store, const ScopePolicy& scope_policy,
                              const StandingPolicy& standing_policy) {
  CheckResult result;

  // 1. completeness
  if (!token_json.is_object()) {
    add_failure(result, "token", FailureCode::FieldMissing);
    return result;
  }
  for (const auto& field : mandatory_token_fields())
    if (!token_json.contains(field)) add_failure(result, field, FailureCode::FieldMissing);
  if (!result.failures.empty()) return result;

  CertificateToken token;
  try {
    token = token_from_json(token_json);
  } catch (const Error&) {
    add_failure(result, "token", FailureCode::FieldMissing);
    return result;
  }

  // 2. digest integrity
  const std::string recomputed = payload_hash(token_json, "cert_hash");
  if (token.cert_hash != recomputed) {
    add_failure(result, "cert_hash", FailureCode::HashMismatch);
    return result;
  }

  // 3. witness validity (re-derived under the forcing rules)
  if (token.cert_type != CertType::Institutional) {
    bool witness_ok = false;
    try {
      const Predicate pred = claim_predicate(token.claim);
      witness_ok = witness_check(token.witness, pred, Status::Asserted) ||
                   witness_check(token.witness, pred, Status::Denied);
    } catch (const Error&) {
      witness_ok = false;
    }
    if (!witness_ok) {
      add_failure(result, "witness", FailureCode::WitnessInvalid);
      return result;
    }
  }

  // 4. scope admissibility: Sigma_kappa within Sigma
  const bool scope_ok = scope_policy.jurisdictions.count(token.scope.jurisdiction) &&
                        token.scope.window_start >= scope_policy.window_start &&
                        token.scope.window_end <= scope_policy.window_end &&
                        token.scope.window_start <= token.scope.window_end &&
                        token.scope.identity_rule_id == scope_policy.identity_rule_id;
  if (!scope_ok) {
    add_failure(result, "scope", FailureCode::ScopeMismatch);
    return result;
  }

  // 5. provenance pinning and resolvability
  bool prov_ok = token.t_int.model_hash == contract.t_int.model_hash &&
                 token.t_int.verifier_version == contract.t_int.verifier_version &&
                 token.t_int.config_hash == contract.t_int.config_hash &&
                 token.t_int.timestamp == contract.t_int.timestamp &&
                 token.provenance.model_hash == contract.t_int.model_hash &&
                 token.provenance.verifier_version == contract.t_int.verifier_version &&
                 token.provenance.config_hash == contract.t_int.config_hash;
  if (prov_ok) {
    const bool refs_expected = token.cert_type != CertType::Formal;
    if (refs_expected && token.provenance.record_item_hashes.empty()) prov_ok = false;
    if (token.cert_type == CertType::Formal && !token.provenance.record_item_hashes.empty())
      prov_ok = false;
    for (const auto& ref : token.provenance.record_item_hashes)
      if (!store.resolves(ref, token.record_time)) prov_ok = false;
  }
  if (!prov_ok) {
    add_failure(result, "provenance", FailureCode::ProvenanceFail);
    return result;
  }

  // 6. standing under <S, tau, t>
  bool standing_ok = token.record_time == contract.record_time;
  if (token.claim.predicate_kind == "threshold" && token.claim.tau != contract.tau)
    standing_ok = false;
  if (standing_ok) {
    const auto slice = store.asof(token.record_time);
    standing_ok = evaluate_standing(standing_policy, slice).pass;
  }
  if (!standing_ok) {
    add_failure(result, "standing", FailureCode::StandingFail);
    return result;
  }

  result.accepted = true;
  return result;
}

bool adequacy(const DeploymentContract& contract, const json& token_json, const RecordStore& store,
              const ScopePolicy& scope_policy, const StandingPolicy& standing_policy) {
  return check_certificate(contract, token_json, store, scope_policy, standing_policy).accepted;
}

ForcesOutcome forces(const CertificateToken& token, const Predicate& pred) {
  if (witness_check(token.witness, pred, Status::Asserted)) return ForcesOutcome::Asserts;
  if (witness_check(token.witness, pred, Status::Denied)) return ForcesOutcome::Denies;
  return ForcesOutcome::Neither;
}

}  // namespace certigate
