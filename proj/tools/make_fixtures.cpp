// Regenerates the bundled tooth_social fixtures. The committed files under
// fixtures/tooth_social/ are the source of truth for tests; this tool exists
// so the embedded hashes can be recomputed after an intentional change:
//
//   make_fixtures <output-dir>
//
// Scoring network (exact rationals; one output in [0,1]-ish score space):
//
//   u0 = relu(p - q - e - 7/20)      press support, muted once official
//                                    findings enter the record
//   u1 = relu(q - 21/40)             incriminating official findings
//   u2 = relu(e - 9/10)              strong exculpatory findings
//   u3 = relu(e - 9/20)              weak exculpatory findings
//   s  = 21/50 + 13/10 u0 + 4/5 u1 - 8/5 u2 - 1/10 u3
//
// Features: (press_report sat 4, inquiry_report sat 1, exculpatory_finding
// sat 1), input radius 1/20. With two press items the stage box propagates
// to exactly [21/50, 81/100]; adding the inquiry report gives [19/25, 21/25]
// (forcing assert at tau = 7/10); the exculpatory variant gives
// [3/25, 29/100] (forcing deny).

#include <filesystem>
#include <fstream>
#include <iostream>

#include "certigate/scenario.hpp"
#include "certigate/version.hpp"

namespace fs = std::filesystem;
using namespace certigate;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

Rational rat(const char* s) { return Rational::from_string(s); }

NetworkModel build_network() {
  NetworkModel net;
  net.name = "tooth-social-scorer-v1";
  net.input_arity = 3;

  Layer l1;
  l1.kind = LayerKind::Affine;
  l1.weights = {
      {rat("1"), rat("-1"), rat("-1")},
      {rat("0"), rat("1"), rat("0")},
      {rat("0"), rat("0"), rat("1")},
      {rat("0"), rat("0"), rat("1")},
  };
  l1.bias = {rat("-7/20"), rat("-21/40"), rat("-9/10"), rat("-9/20")};

  Layer l2;
  l2.kind = LayerKind::Relu;

  Layer l3;
  l3.kind = LayerKind::Affine;
  l3.weights = {{rat("13/10"), rat("4/5"), rat("-8/5"), rat("-1/10")}};
  l3.bias = {rat("21/50")};

  net.layers = {l1, l2, l3};
  net.output_arity = 1;
  net.model_hash = payload_hash(network_to_json(net), "model_hash");
  return net;
}

RecordItem make_item(const char* id, const char* cls, const char* ts, const char* source,
                     std::vector<std::string> custody) {
  RecordItem item;
  item.item_id = id;
  item.content_hash = sha256_hex(std::string("record-content:") + id);
  item.evidence_class = cls;
  item.timestamp = rat(ts);
  item.provenance.source_id = source;
  item.provenance.custody_chain = std::move(custody);
  item.provenance.authenticated = true;
  return item;
}

json make_query(const char* id, const char* at) {
  json q;
  q["query_id"] = id;
  q["query_meta"] = {{"jurisdiction", "US"},
                     {"query_time", std::string(at)},
                     {"identity_rule_id", "exact-name-match-v1"}};
  q["predicate"] = {{"kind", "threshold"}, {"output_index", 0}};
  q["feature_spec"] = {
      {"dims", json::array({
                   json{{"evidence_class", "press_report"}, {"saturation", 4}},
                   json{{"evidence_class", "inquiry_report"}, {"saturation", 1}},
                   json{{"evidence_class", "exculpatory_finding"}, {"saturation", 1}},
               })}};
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 64;
  }
  const fs::path out = argv[1];
  fs::create_directories(out);

  const NetworkModel net = build_network();
  write_file(out / "net.json", serialize_network(net));

  ScopePolicy scope;
  scope.policy_id = "scope-us-v1";
  scope.jurisdictions = {"US"};
  scope.window_start = rat("0");
  scope.window_end = rat("100");
  scope.identity_rule_id = "exact-name-match-v1";

  StandingPolicy standing;
  standing.policy_id = "standing-press-v1";
  standing.required_classes = {{"press_report", 1}};
  standing.require_authenticated = true;

  const json policies = {{"scope_policy", scope_policy_to_json(scope)},
                         {"standing_policy", standing_policy_to_json(standing)}};
  write_file(out / "policies.json", canonical_dump(policies));

  DeploymentContract contract;
  contract.scope_policy_id = scope.policy_id;
  contract.regime = RegimeDescriptor{};
  contract.t_int.timestamp = rat("0");
  contract.t_int.model_hash = net.model_hash;
  contract.t_int.verifier_version = kVerifierVersion;
  contract.t_int.config_hash = canonical_hash(policies);
  contract.budget = 16;
  contract.n_max = 5;
  contract.standing_policy_id = standing.policy_id;
  contract.tau = rat("7/10");
  contract.record_time = rat("1");
  contract.input_radius = rat("1/20");
  seal_contract(contract);
  write_file(out / "contract.json", canonical_dump(contract_to_json(contract)));

  const RecordItem press1 = make_item("ts-press-001", "press_report", "1/4", "csm-monitor",
                                      {"csm-newsroom", "national-archive"});
  const RecordItem press2 = make_item("ts-press-002", "press_report", "1/2", "csm-monitor",
                                      {"csm-newsroom", "national-archive"});
  const RecordItem inquiry = make_item("ts-inquiry-001", "inquiry_report", "3/2",
                                       "congressional-committee",
                                       {"committee-clerk", "national-archive"});
  const RecordItem excul = make_item("ts-excul-001", "exculpatory_finding", "3/2",
                                     "district-court", {"court-clerk", "national-archive"});

  {
    json sc;
    sc["name"] = "tooth_social";
    sc["contract"] = "contract.json";
    sc["net"] = "net.json";
    sc["policies"] = "policies.json";
    sc["record_timeline"] = json::array(
        {record_item_to_json(press1), record_item_to_json(press2), record_item_to_json(inquiry)});
    sc["queries"] = json::array({
        json{{"at", "1/1"}, {"expected_status", "U"}, {"query", make_query("q-stage1", "1/1")}},
        json{{"at", "2/1"}, {"expected_status", "A"}, {"query", make_query("q-stage2", "2/1")}},
    });
    write_file(out / "tooth_social.scenario.json", canonical_dump(sc));
  }
  {
    json sc;
    sc["name"] = "tooth_social_exoneration";
    sc["contract"] = "contract.json";
    sc["net"] = "net.json";
    sc["policies"] = "policies.json";
    sc["record_timeline"] = json::array(
        {record_item_to_json(press1), record_item_to_json(press2), record_item_to_json(excul)});
    sc["queries"] = json::array({
        json{{"at", "1/1"}, {"expected_status", "U"}, {"query", make_query("q-stage1", "1/1")}},
        json{{"at", "2/1"}, {"expected_status", "D"}, {"query", make_query("q-exoner", "2/1")}},
    });
    write_file(out / "tooth_social_exoneration.scenario.json", canonical_dump(sc));
  }

  // Same architecture under a different name: self-consistent file whose
  // model hash is not the one the contract pins (configuration-error case).
  {
    NetworkModel other = net;
    other.name = "tooth-social-scorer-v1b";
    other.model_hash = payload_hash(network_to_json(other), "model_hash");
    write_file(out / "net.wrong_hash.json", serialize_network(other));
  }

  // Standalone records file for the evaluate/check/challenge commands.
  {
    RecordStore store;
    store.append(press1);
    store.append(press2);
    store.append(inquiry);
    write_file(out / "records.jsonl", store.to_jsonl());
  }
  // A stage-2 contract (record_time 2) for direct evaluate/check runs.
  {
    DeploymentContract c2 = contract;
    c2.record_time = rat("2");
    seal_contract(c2);
    write_file(out / "contract.stage2.json", canonical_dump(contract_to_json(c2)));
    write_file(out / "query.stage2.json", canonical_dump(make_query("q-stage2", "2/1")));
  }

  std::cout << "fixtures written to " << out.string() << "\n";
  std::cout << "model_hash " << net.model_hash << "\n";
  return 0;
}
