// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for the full suite or with a criterion number
// (1..13). Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "certigate/errors.hpp"
#include "certigate/scenario.hpp"
#include "certigate/version.hpp"
#include "oracles.hpp"

using namespace certigate;
namespace fs = std::filesystem;

namespace {

Rational rat(const char* s) { return Rational::from_string(s); }
Interval iv(const char* lo, const char* hi) { return Interval::make(rat(lo), rat(hi)); }

const fs::path kFixtures = fs::path(CERTIGATE_FIXTURES_DIR) / "tooth_social";

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("certigate_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Shared small deployment for certificate-level criteria.
struct World {
  DeploymentContract contract;
  RecordStore store;
  ScopePolicy scope_policy;
  StandingPolicy standing_policy;
  ScopeDescriptor scope;
  std::vector<std::string> refs;
};

RecordItem make_item(const std::string& id, const char* cls, const char* ts) {
  RecordItem it;
  it.item_id = id;
  it.content_hash = sha256_hex("acceptance:" + id);
  it.evidence_class = cls;
  it.timestamp = rat(ts);
  it.provenance.source_id = "src";
  it.provenance.custody_chain = {"origin", "archive"};
  it.provenance.authenticated = true;
  return it;
}

World make_world(const std::string& model_hash) {
  World w;
  w.scope_policy.policy_id = "scope-us-v1";
  w.scope_policy.jurisdictions = {"US"};
  w.scope_policy.window_start = rat("0");
  w.scope_policy.window_end = rat("100");
  w.scope_policy.identity_rule_id = "exact-name-match-v1";

  w.standing_policy.policy_id = "standing-press-v1";
  w.standing_policy.required_classes = {{"press_report", 1}};
  w.standing_policy.require_authenticated = true;

  w.store.append(make_item("p1", "press_report", "1/4"));
  w.store.append(make_item("p2", "press_report", "1/2"));
  w.store.append(make_item("q1", "inquiry_report", "3/2"));

  w.contract.scope_policy_id = w.scope_policy.policy_id;
  w.contract.regime = RegimeDescriptor{};
  w.contract.t_int.timestamp = rat("0");
  w.contract.t_int.model_hash = model_hash;
  w.contract.t_int.verifier_version = kVerifierVersion;
  w.contract.t_int.config_hash = canonical_hash(
      json{{"scope_policy", scope_policy_to_json(w.scope_policy)},
           {"standing_policy", standing_policy_to_json(w.standing_policy)}});
  w.contract.budget = 64;
  w.contract.n_max = 5;
  w.contract.standing_policy_id = w.standing_policy.policy_id;
  w.contract.tau = rat("7/10");
  w.contract.record_time = rat("2");
  w.contract.input_radius = rat("0");
  seal_contract(w.contract);

  w.scope.jurisdiction = "US";
  w.scope.window_start = w.contract.record_time;
  w.scope.window_end = w.contract.record_time;
  w.scope.identity_rule_id = "exact-name-match-v1";
  for (const auto& it : w.store.items()) w.refs.push_back(it.content_hash);
  return w;
}

CertificateToken issue_stage2_token(const World& w) {
  ClaimRef claim;
  claim.predicate_kind = "threshold";
  claim.query_id = "q-stage2";
  claim.output_index = 0;
  claim.tau = w.contract.tau;
  claim.num_outputs = 1;
  ForcingWitness witness;
  witness.kind = ForcingWitness::Kind::Bound;
  witness.bound = iv("0.76", "0.84");
  witness.stage = 5;
  return issue_certificate(w.contract, claim, witness, w.scope, w.refs, w.store);
}

// ---------------------------------------------------------------- C1

void c1_case_study_golden_run() {
  const auto t0 = std::chrono::steady_clock::now();

  const Scenario main_sc = load_scenario(kFixtures / "tooth_social.scenario.json");
  const ScenarioRunResult main_run = run_scenario(main_sc, fresh_dir("c1_main"));
  require(main_run.exit_code == 0, "main scenario expectation mismatch");
  require(main_run.rows.size() == 2, "main scenario must evaluate two queries");

  const QueryRow& s1 = main_run.rows[0];
  require(s1.status == Status::Undetermined, "stage 1 must be U");
  require(s1.reason == "U-MODEL", "stage 1 reason must be U-MODEL, got " + s1.reason);
  require(s1.bounds && *s1.bounds == iv("21/50", "81/100"),
          "stage 1 last bounds must be exactly [21/50, 81/100]");

  const QueryRow& s2 = main_run.rows[1];
  require(s2.status == Status::Asserted, "stage 2 must be A");
  require(s2.bounds && *s2.bounds == iv("19/25", "21/25"),
          "stage 2 witness bound must be exactly [19/25, 21/25]");

  const Scenario exon_sc = load_scenario(kFixtures / "tooth_social_exoneration.scenario.json");
  const ScenarioRunResult exon_run = run_scenario(exon_sc, fresh_dir("c1_exon"));
  require(exon_run.exit_code == 0, "exoneration scenario expectation mismatch");
  const QueryRow& s3 = exon_run.rows[1];
  require(s3.status == Status::Denied, "exoneration variant must be D");
  require(s3.bounds && *s3.bounds == iv("3/25", "29/100"),
          "exoneration bounds must be exactly [3/25, 29/100]");

  // tau pinned at 7/10 by the bundled contract.
  const DeploymentContract contract = contract_from_file((kFixtures / "contract.json").string());
  require(contract.tau == rat("7/10"), "bundled contract must pin tau = 7/10");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 1.0, "golden run took " + std::to_string(elapsed) + "s, limit 1s");
}

// ---------------------------------------------------------------- C2

void c2_boundary_convention() {
  require(threshold_status_at_stage(iv("0.6", "0.7"), rat("0.7")) == Status::Undetermined,
          "[0.6, 0.7] vs tau 0.7 must be U");
  require(threshold_status_at_stage(iv("0.7", "0.7"), rat("0.7")) == Status::Asserted,
          "[0.7, 0.7] vs tau 0.7 must be A (inclusive assert)");
}

// ---------------------------------------------------------------- C3/C4

std::vector<Interval> random_monotonized_history(testing::Rng& rng) {
  for (;;) {
    std::uniform_int_distribution<size_t> len(1, 8);
    std::vector<Interval> raw;
    for (size_t i = 0, n = len(rng); i < n; ++i) raw.push_back(testing::rand_interval(rng, 12));
    try {
      return monotonize(raw);
    } catch (const InconsistentHistory&) {
    }
  }
}

void c3_monotonicity_suite() {
  testing::Rng rng(31);
  long violations = 0;
  for (int n = 0; n < 10000; ++n) {
    const auto mono = random_monotonized_history(rng);
    const Rational tau = testing::rand_rational(rng, 12);
    Status forced = Status::Undetermined;
    for (const auto& stage : mono) {
      const Status s = threshold_status_at_stage(stage, tau);
      if (forced != Status::Undetermined && s != forced) ++violations;
      if (s != Status::Undetermined && forced == Status::Undetermined) forced = s;
    }
  }
  require(violations == 0, std::to_string(violations) + " revocations over 10^4 histories");
}

void c4_soundness_suite() {
  testing::Rng rng(41);
  int forcing_histories = 0;
  long violations = 0;
  while (forcing_histories < 200) {
    const auto mono = random_monotonized_history(rng);
    const Rational tau = testing::rand_rational(rng, 12);
    Status forced = Status::Undetermined;
    for (const auto& stage : mono) {
      const Status s = threshold_status_at_stage(stage, tau);
      if (s != Status::Undetermined) {
        forced = s;
        break;
      }
    }
    if (forced == Status::Undetermined) continue;
    ++forcing_histories;
    const Interval& last = mono.back();
    for (int k = 0; k < 1000; ++k) {
      const Rational v = last.lo + last.width() * Rational(k, 999);
      if (forced == Status::Asserted && !(v >= tau)) ++violations;
      if (forced == Status::Denied && !(v < tau)) ++violations;
    }
  }
  require(violations == 0,
          std::to_string(violations) + " soundness violations over forcing histories");
}

// ---------------------------------------------------------------- C5

NetworkModel c5_network(testing::Rng& rng) {
  // Up to 3 layers, up to 4 units per layer, relu/sigmoid activations.
  std::uniform_int_distribution<size_t> arity(1, 4);
  std::uniform_int_distribution<int> shape(0, 4);
  NetworkModel net;
  net.name = "c5";
  net.input_arity = arity(rng);
  size_t cur = net.input_arity;
  const int s = shape(rng);

  auto push_affine = [&](size_t out) {
    net.layers.push_back(testing::rand_affine(rng, cur, out));
    cur = out;
  };
  auto push_act = [&](bool sigmoid) {
    Layer act;
    if (sigmoid) {
      act.kind = LayerKind::Monotone;
      act.fn = MonotoneFn::Sigmoid;
      act.precision_bits = 32;
    } else {
      act.kind = LayerKind::Relu;
    }
    net.layers.push_back(act);
  };

  switch (s) {
    case 0: push_affine(arity(rng)); break;
    case 1: push_affine(arity(rng)); push_act(false); break;
    case 2: push_affine(arity(rng)); push_act(true); break;
    case 3: push_affine(arity(rng)); push_act(false); push_affine(arity(rng)); break;
    default: push_affine(arity(rng)); push_act(true); push_affine(arity(rng)); break;
  }
  net.output_arity = cur;
  net.model_hash = payload_hash(network_to_json(net), "model_hash");
  return net;
}

void c5_propagation_containment() {
  const auto t0 = std::chrono::steady_clock::now();
  testing::Rng rng(51);
  long violations = 0;
  for (int n = 0; n < 100; ++n) {
    const NetworkModel net = c5_network(rng);
    const InputBox box = testing::rand_box(rng, net.input_arity, 2);

    const long per_dim = std::max<long>(
        2, static_cast<long>(
               std::ceil(std::pow(10000.0, 1.0 / static_cast<double>(net.input_arity)))));
    std::vector<std::vector<Interval>> grid_outputs;
    for (const auto& x : testing::grid_points(box, per_dim))
      grid_outputs.push_back(evaluate_point(net, x));

    RefinementState state = init_refinement(net, box);
    for (int stage = 0;; ++stage) {
      const EnclosureVector bounds = state.current_bounds();
      for (const auto& out : grid_outputs)
        if (!testing::enclosed(out, bounds)) ++violations;
      if (stage == 3) break;
      const int before = state.stage;
      state = refine(std::move(state), net, 1L << 30);
      if (state.stage == before) break;
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(violations == 0, std::to_string(violations) + " containment violations");
  require(elapsed < 60.0, "containment suite took " + std::to_string(elapsed) + "s, limit 60s");
}

// ---------------------------------------------------------------- C6

void c6_relu_rule_table() {
  require(propagate_relu({iv("-1", "2")})[0] == iv("0", "2"), "relu([-1,2]) must be [0,2]");
  require(propagate_relu({iv("1", "3")})[0] == iv("1", "3"), "relu([1,3]) must be [1,3]");
  require(propagate_relu({iv("-3", "-1")})[0] == iv("0", "0"), "relu([-3,-1]) must be [0,0]");
}

// ---------------------------------------------------------------- C7

void c7_argmax_vs_oracle() {
  testing::Rng rng(71);
  int instances = 0, attempts = 0;
  long violations = 0;
  while (instances < 100) {
    require(++attempts < 20000, "argmax generator starved");
    NetworkModel net = testing::rand_network(rng, false);
    if (net.output_arity < 2) continue;
    const InputBox box = testing::rand_box(rng, net.input_arity, 2);
    std::uniform_int_distribution<size_t> pick(0, net.output_arity - 1);
    ArgmaxPredicate pred;
    pred.mode = ArgmaxMode::UniqueArgmax;
    pred.candidate_index = pick(rng);
    pred.num_outputs = net.output_arity;

    const auto decided = budgeted_decide(net, box, pred, 64, 3);
    if (decided.status == Status::Undetermined) continue;
    ++instances;

    const long per_dim = std::max<long>(
        2, static_cast<long>(
               std::ceil(std::pow(1000.0, 1.0 / static_cast<double>(net.input_arity)))));
    for (const auto& x : testing::grid_points(box, per_dim)) {
      const auto out = evaluate_point(net, x);  // exact for affine/relu nets
      bool strict_max = true;
      for (size_t j = 0; j < out.size(); ++j) {
        if (j == pred.candidate_index) continue;
        if (!(out[pred.candidate_index].lo > out[j].lo)) strict_max = false;
      }
      if (decided.status == Status::Asserted && !strict_max) ++violations;
      if (decided.status == Status::Denied && strict_max) ++violations;
    }
  }
  require(violations == 0, std::to_string(violations) + " grid points disagreed with argmax");
}

// ---------------------------------------------------------------- C8

void c8_linear_spec_overapprox() {
  testing::Rng rng(81);
  long violations = 0;
  for (int n = 0; n < 200; ++n) {
    std::uniform_int_distribution<size_t> arity(1, 4);
    const size_t k = arity(rng);
    std::vector<Rational> c;
    for (size_t i = 0; i < k; ++i) c.push_back(testing::rand_rational(rng));
    const Rational d = testing::rand_rational(rng);
    const InputBox box = testing::rand_box(rng, k);
    const Rational ub = bound_linear_spec(c, d, box.dims);
    const long per_dim = std::max<long>(
        2, static_cast<long>(std::ceil(std::pow(2000.0, 1.0 / static_cast<double>(k)))));
    for (const auto& z : testing::grid_points(box, per_dim)) {
      Rational value = d;
      for (size_t i = 0; i < k; ++i) value += c[i] * z[i];
      if (!(value <= ub)) ++violations;
    }
  }
  require(violations == 0, std::to_string(violations) + " UB violations");
}

// ---------------------------------------------------------------- C9

void c9_certificate_tamper_suite() {
  const World w = make_world(sha256_hex("model"));
  const json valid = token_to_json(issue_stage2_token(w));
  auto check = [&](const json& t) {
    return check_certificate(w.contract, t, w.store, w.scope_policy, w.standing_policy);
  };
  require(check(valid).accepted, "untampered token must be accepted");

  auto reseal = [](json t) {
    t["cert_hash"] = payload_hash(t, "cert_hash");
    return t;
  };

  struct Mutation {
    std::string name;
    FailureCode expected;
    std::function<json(json)> apply;
  };
  const std::vector<Mutation> mutations = {
      {"remove assumptions", FailureCode::FieldMissing,
       [](json t) { t.erase("assumptions"); return t; }},
      {"remove witness", FailureCode::FieldMissing,
       [](json t) { t.erase("witness"); return t; }},
      {"remove provenance", FailureCode::FieldMissing,
       [](json t) { t.erase("provenance"); return t; }},
      {"flip cert_hash digit", FailureCode::HashMismatch,
       [](json t) {
         std::string h = t["cert_hash"];
         h[0] = h[0] == 'a' ? 'b' : 'a';
         t["cert_hash"] = h;
         return t;
       }},
      {"edit without resealing", FailureCode::HashMismatch,
       [](json t) { t["record_time"] = "3/1"; return t; }},
      {"non-forcing witness (resealed)", FailureCode::WitnessInvalid,
       [&](json t) { t["witness"]["interval"] = {"21/50", "81/100"}; return reseal(t); }},
      {"claim tau inside bound (resealed)", FailureCode::WitnessInvalid,
       [&](json t) { t["claim"]["tau"] = "4/5"; return reseal(t); }},
      {"foreign jurisdiction (resealed)", FailureCode::ScopeMismatch,
       [&](json t) { t["scope"]["jurisdiction"] = "XX"; return reseal(t); }},
      {"scope window outside policy (resealed)", FailureCode::ScopeMismatch,
       [&](json t) { t["scope"]["window_end"] = "200/1"; return reseal(t); }},
      {"swapped record ref (resealed)", FailureCode::ProvenanceFail,
       [&](json t) {
         t["provenance"]["record_item_hashes"][0] = sha256_hex("swapped");
         return reseal(t);
       }},
      {"wrong model hash (resealed)", FailureCode::ProvenanceFail,
       [&](json t) {
         t["provenance"]["model_hash"] = sha256_hex("other");
         return reseal(t);
       }},
      {"wrong verifier version (resealed)", FailureCode::ProvenanceFail,
       [&](json t) { t["t_int"]["verifier_version"] = "certigate-9.9.9"; return reseal(t); }},
      {"shifted record time (resealed)", FailureCode::StandingFail,
       [&](json t) { t["record_time"] = "3/1"; return reseal(t); }},
      {"off-contract tau, still forcing (resealed)", FailureCode::StandingFail,
       [&](json t) { t["claim"]["tau"] = "3/4"; return reseal(t); }},
      {"formal type with record refs (resealed)", FailureCode::ProvenanceFail,
       [&](json t) { t["cert_type"] = "formal"; return reseal(t); }},
  };
  require(mutations.size() >= 10, "need at least 10 mutations");

  for (const auto& m : mutations) {
    const CheckResult r = check(m.apply(valid));
    require(!r.accepted, "mutation '" + m.name + "' was accepted");
    require(!r.failures.empty() && r.failures.front().code == m.expected,
            "mutation '" + m.name + "' reported " +
                (r.failures.empty() ? "nothing" : failure_code_name(r.failures.front().code)) +
                ", expected " + failure_code_name(m.expected));
  }
}

// ---------------------------------------------------------------- C10

void c10_proposition_one() {
  // 1-D score model; scope points filtered so the stage-0 bound clears tau
  // by at least 1/20 either way.
  NetworkModel net;
  net.name = "decider-net";
  net.input_arity = 1;
  Layer l;
  l.kind = LayerKind::Affine;
  l.weights = {{rat("1")}};
  l.bias = {rat("0")};
  net.layers = {l};
  net.output_arity = 1;
  net.model_hash = payload_hash(network_to_json(net), "model_hash");

  World w = make_world(net.model_hash);
  const Rational tau = w.contract.tau;
  const Rational margin = rat("1/20");
  const Predicate pred = ThresholdPredicate{0, tau};

  std::vector<std::vector<Rational>> low_side, high_side;
  for (int k = 0; k < 400 && (low_side.size() < 25 || high_side.size() < 25); ++k) {
    const Rational v(k, 100);
    const auto bound = propagate_box(net, InputBox::point({v}))[0];
    if (bound.hi <= tau - margin && low_side.size() < 25) low_side.push_back({v});
    if (bound.lo >= tau + margin && high_side.size() < 25) high_side.push_back({v});
  }
  require(low_side.size() == 25 && high_side.size() == 25, "scope generator starved");
  std::vector<std::vector<Rational>> sigma = low_side;
  sigma.insert(sigma.end(), high_side.begin(), high_side.end());

  auto oracle = [&](const std::vector<Rational>& x) -> OracleAnswer {
    const auto decided = budgeted_decide(net, InputBox::point(x), pred, w.contract.budget,
                                         w.contract.n_max);
    require(decided.status != Status::Undetermined && decided.witness.has_value(),
            "oracle failed to force on a margin-cleared point");
    ClaimRef claim;
    claim.predicate_kind = "threshold";
    claim.query_id = "sigma-point";
    claim.output_index = 0;
    claim.tau = tau;
    claim.num_outputs = 1;
    const CertificateToken token =
        issue_certificate(w.contract, claim, *decided.witness, w.scope, {}, w.store);
    return OracleAnswer{decided.status, token_to_json(token)};
  };

  const Decider decider =
      derive_decider(oracle, w.contract, w.store, w.scope_policy, w.standing_policy, pred);
  int asserted = 0, denied = 0;
  for (const auto& x : sigma) {
    const auto decision = decider.decide(x);  // throws on any soundness breach
    require(adequacy(w.contract, decision.token_json, w.store, w.scope_policy, w.standing_policy),
            "decider emitted a certificate that fails independent re-verification");
    (decision.status == Status::Asserted ? asserted : denied) += 1;
    const bool expected_assert = x[0] >= tau;
    require((decision.status == Status::Asserted) == expected_assert,
            "decider disagreed with ground truth at " + x[0].str());
  }
  require(asserted > 0 && denied > 0, "scope must exercise both disjuncts");

  // A corrupted oracle is exposed by the re-verification step.
  auto corrupted = [&](const std::vector<Rational>& x) -> OracleAnswer {
    OracleAnswer a = oracle(x);
    a.token_json["witness"]["interval"] = {"21/50", "81/100"};
    a.token_json["cert_hash"] = payload_hash(a.token_json, "cert_hash");
    return a;
  };
  const Decider bad =
      derive_decider(corrupted, w.contract, w.store, w.scope_policy, w.standing_policy, pred);
  bool threw = false;
  try {
    bad.decide(sigma.front());
  } catch (const SoundnessViolation&) {
    threw = true;
  }
  require(threw, "corrupted oracle must raise SoundnessViolation");
}

// ---------------------------------------------------------------- C11

void c11_reason_class_truth_table() {
  using R = ReasonClass;
  const struct {
    bool scope_fail, standing_fail, exhausted;
    R expected;
  } rows[8] = {
      {false, false, false, R::UModel},   {false, false, true, R::UCompute},
      {false, true, false, R::UEvidence}, {false, true, true, R::UEvidence},
      {true, false, false, R::UScope},    {true, false, true, R::UScope},
      {true, true, false, R::UScope},     {true, true, true, R::UScope},
  };
  for (const auto& row : rows)
    require(classify_undetermined(row.scope_fail, row.standing_fail, row.exhausted) ==
                row.expected,
            "precedence violated for a truth-table row");
}

// ---------------------------------------------------------------- C12

void c12_contestability_replay() {
  World w = make_world(sha256_hex("model"));
  const CertificateToken token = issue_stage2_token(w);
  CertificateRegistry registry;
  registry[token.cert_hash] = token_to_json(token);

  EntitlementLog log;
  HistoryEntry issued;
  issued.event = LogEvent::Issued;
  issued.query_id = "q-stage2";
  issued.cert_hash = token.cert_hash;
  issued.new_status = "A";
  log.append(std::move(issued));

  Challenge challenge;
  challenge.challenge_id = "acceptance-ch";
  challenge.role = ChallengerRole::Auditor;
  challenge.target_cert_hash = token.cert_hash;
  challenge.ground = ChallengeGround::ProvenanceDefect;
  challenge.submitted_at = rat("3");
  submit_challenge(log, registry, challenge);

  RecordStore purged;  // custody defect: the first press item no longer resolves
  for (const auto& it : w.store.items())
    if (it.item_id != "p1") purged.append(it);
  const RecheckOutcome outcome =
      recheck(w.contract, challenge, registry, purged, w.scope_policy, w.standing_policy, log);
  require(outcome.upheld, "provenance challenge must be upheld against the purged store");
  revise_status(log, outcome.query_id, outcome, w.contract.contract_hash);

  const std::string text = log.to_jsonl();
  require(replay_verify(text).valid, "untampered route log must replay as valid");
  require(log.entries().size() == 4, "route must produce 4 entries");
  // The superseding status is current; the original verdict stays at seq 0.
  require(log.current_status("q-stage2") == std::optional<std::string>("U"),
          "current status must reflect the revision");
  require(log.entries()[0].event == LogEvent::Issued && log.entries()[0].new_status == "A",
          "original verdict must remain retrievable by seq");

  // Single-byte mutations: invalid at exactly the mutated line's seq.
  testing::Rng rng(121);
  std::uniform_int_distribution<size_t> pos_dist(0, text.size() - 1);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  int mutations = 0;
  while (mutations < 120) {
    const size_t pos = pos_dist(rng);
    const char replacement = static_cast<char>(byte_dist(rng));
    if (replacement == text[pos]) continue;
    ++mutations;
    std::string tampered = text;
    tampered[pos] = replacement;
    const long expected_seq = static_cast<long>(std::count(text.begin(), text.begin() + pos, '\n'));
    const ReplayResult r = replay_verify(tampered);
    require(!r.valid, "mutation at byte " + std::to_string(pos) + " went undetected");
    require(r.bad_seq == expected_seq,
            "mutation at byte " + std::to_string(pos) + " flagged seq " +
                std::to_string(r.bad_seq) + ", expected " + std::to_string(expected_seq));
  }

  // Deleting any non-final entry invalidates the chain at the gap.
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  for (size_t drop = 0; drop + 1 < lines.size(); ++drop) {
    std::string rebuilt;
    for (size_t i = 0; i < lines.size(); ++i)
      if (i != drop) rebuilt += lines[i] + "\n";
    const ReplayResult r = replay_verify(rebuilt);
    require(!r.valid, "deleting entry " + std::to_string(drop) + " went undetected");
    require(r.bad_seq == static_cast<long>(drop),
            "deletion of entry " + std::to_string(drop) + " flagged seq " +
                std::to_string(r.bad_seq));
  }
}

// ---------------------------------------------------------------- C13

void c13_determinism() {
  const fs::path out1 = fresh_dir("c13_run1");
  const fs::path out2 = fresh_dir("c13_run2");
  const std::string scenario = (kFixtures / "tooth_social.scenario.json").string();
  for (const fs::path& out : {out1, out2}) {
    const std::string cmd = std::string(CERTIGATE_CLI_PATH) + " scenario --scenario " + scenario +
                            " --out " + out.string() + " > " + (out / "stdout.txt").string();
    require(std::system(cmd.c_str()) == 0, "scenario command failed");
  }

  size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(out1)) {
    const fs::path rel = entry.path().filename();
    require(fs::exists(out2 / rel), "missing file in second run: " + rel.string());
    std::ifstream a(entry.path(), std::ios::binary);
    std::ifstream b(out2 / rel, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    require(sa.str() == sb.str(), "file differs between runs: " + rel.string());
    ++compared;
  }
  for (const auto& entry : fs::directory_iterator(out2))
    require(fs::exists(out1 / entry.path().filename()),
            "extra file in second run: " + entry.path().filename().string());
  require(compared >= 9, "expected verdicts, certificates, contracts, log and report");
}

struct Criterion {
  int number;
  const char* title;
  std::function<void()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "case-study golden run (exact case-study bounds, <1s)", c1_case_study_golden_run},
    {2, "threshold boundary convention", c2_boundary_convention},
    {3, "monotonicity over 10^4 random histories", c3_monotonicity_suite},
    {4, "soundness of forced statuses over sampled completions", c4_soundness_suite},
    {5, "propagation containment on random networks (<60s)", c5_propagation_containment},
    {6, "relu rule table", c6_relu_rule_table},
    {7, "argmax forcing against the grid oracle", c7_argmax_vs_oracle},
    {8, "linear-spec upper bound over-approximates", c8_linear_spec_overapprox},
    {9, "certificate tamper suite with matching failure codes", c9_certificate_tamper_suite},
    {10, "proposition-1 decider construction", c10_proposition_one},
    {11, "reason-class truth table", c11_reason_class_truth_table},
    {12, "contestability replay and mutation detection", c12_contestability_replay},
    {13, "byte-identical scenario reruns", c13_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  if (argc == 2) selected = std::atoi(argv[1]);
  if (argc > 2 || (argc == 2 && (selected < 1 || selected > 13))) {
    std::cerr << "usage: certigate_acceptance [1..13]\n";
    return 64;
  }

  int failures = 0;
  for (const auto& criterion : kCriteria) {
    if (selected != 0 && criterion.number != selected) continue;
    try {
      criterion.run();
      std::cout << "[PASS] C" << criterion.number << ": " << criterion.title << "\n";
    } catch (const std::exception& e) {
      std::cout << "[FAIL] C" << criterion.number << ": " << criterion.title << " -- " << e.what()
                << "\n";
      ++failures;
    }
  }
  return failures;
}
