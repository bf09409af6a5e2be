#pragma once

#include <filesystem>

#include "certigate/contestability.hpp"

namespace certigate {

// A replayable timeline: base artifacts, record items in arrival order, and
// queries evaluated as of their own timestamps.
struct ScenarioQuery {
  Rational at;
  json query_json;
  std::optional<Status> expected;
};

struct Scenario {
  std::string name;
  std::filesystem::path contract_path;
  std::filesystem::path net_path;
  std::filesystem::path policies_path;
  std::vector<RecordItem> timeline;
  std::vector<ScenarioQuery> queries;
};

Scenario load_scenario(const std::filesystem::path& path);

struct PolicyBundle {
  ScopePolicy scope;
  StandingPolicy standing;
};

PolicyBundle load_policies(const std::filesystem::path& path);

struct QueryRow {
  std::string query_id;
  Rational at;
  Status status = Status::Undetermined;
  std::string reason;  // empty for A/D
  std::optional<Interval> bounds;
  int stages_used = 0;
  long cost_spent = 0;
  std::optional<Status> expected;
  bool matched = true;
};

struct ScenarioRunResult {
  int exit_code = 0;  // 0 ok, 1 expectation mismatch
  std::vector<QueryRow> rows;
  std::string report;  // stage-by-stage table
};

// Replays the timeline. The record time is a contract component, so each
// query runs under a per-query contract instance (record_time bumped to the
// query timestamp, re-sealed); the effective contract is written next to the
// verdict so certificates re-verify against exactly what issued them.
//
// Writes, per query: <query_id>.verdict.json, <query_id>.transcript.txt,
// <query_id>.contract.json; plus <cert_hash>.cert.json per certificate,
// records.jsonl, and entitlement.log.jsonl. Deterministic byte-for-byte.
ScenarioRunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

}  // namespace certigate
