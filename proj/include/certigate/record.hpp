#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "certigate/canonical.hpp"
#include "certigate/rational.hpp"

namespace certigate {

struct RecordProvenance {
  std::string source_id;
  std::vector<std::string> custody_chain;
  bool authenticated = false;
};

struct RecordItem {
  std::string item_id;
  std::string content_hash;
  std::string evidence_class;
  Rational timestamp;
  RecordProvenance provenance;
};

json record_item_to_json(const RecordItem& item);
RecordItem record_item_from_json(const json& j);

// Append-only, time-indexed store. Items are never mutated; as-of queries
// are snapshots ordered by (timestamp, arrival), so a late-arriving item
// with an earlier timestamp still lands in every slice that covers it.
class RecordStore {
 public:
  void append(RecordItem item);

  std::vector<RecordItem> asof(const Rational& t) const;
  bool resolves(const std::string& content_hash, const Rational& t) const;

  const std::vector<RecordItem>& items() const { return items_; }

  // Registry-completeness attestation stub. Nothing in the gate consumes it
  // yet; a "no record implies denial" rule would have to require it.
  bool completeness_attested = false;

  static RecordStore from_jsonl(const std::string& text);
  static RecordStore from_jsonl_file(const std::string& path);
  std::string to_jsonl() const;

 private:
  std::vector<RecordItem> items_;
};

// Declarative evidential standard: minimum item counts per evidence class,
// optionally restricted to authenticated items.
struct StandingPolicy {
  std::string policy_id;
  std::map<std::string, int> required_classes;
  bool require_authenticated = false;
};

struct StandingResult {
  bool pass = false;
  std::map<std::string, int> missing;  // class -> shortfall
};

StandingResult evaluate_standing(const StandingPolicy& policy,
                                 const std::vector<RecordItem>& items);

struct ScopePolicy {
  std::string policy_id;
  std::set<std::string> jurisdictions;
  Rational window_start;
  Rational window_end;
  std::string identity_rule_id;
};

struct QueryMeta {
  std::string jurisdiction;
  Rational query_time;
  std::string identity_rule_id;
};

struct ScopeResult {
  bool pass = false;
  std::string fail_reason;  // "jurisdiction" | "time_window" | "identity_rule"
};

ScopeResult evaluate_scope(const ScopePolicy& policy, const QueryMeta& meta);

json scope_policy_to_json(const ScopePolicy& p);
ScopePolicy scope_policy_from_json(const json& j);
json standing_policy_to_json(const StandingPolicy& p);
StandingPolicy standing_policy_from_json(const json& j);

// Record-to-score bridge: dimension value = min(count of class, saturation)
// / saturation, an exact rational in [0,1].
struct FeatureDim {
  std::string evidence_class;
  int saturation = 1;
};

struct FeatureSpec {
  std::vector<FeatureDim> dims;
};

FeatureSpec feature_spec_from_json(const json& j);
json feature_spec_to_json(const FeatureSpec& spec);

std::vector<Rational> features_from_record(const std::vector<RecordItem>& items,
                                           const FeatureSpec& spec);

// Evidence classes the featurizer understands; naming anything else in a
// feature spec raises UnknownClass.
const std::set<std::string>& known_evidence_classes();

}  // namespace certigate
