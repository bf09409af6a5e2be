#include "certigate/decision.hpp"

#include "certigate/errors.hpp"

namespace certigate {

char status_letter(Status s) {
  switch (s) {
    case Status::Asserted: return 'A';
    case Status::Denied: return 'D';
    case Status::Undetermined: return 'U';
  }
  return 'U';
}

Status status_from_letter(char c) {
  switch (c) {
    case 'A': return Status::Asserted;
    case 'D': return Status::Denied;
    case 'U': return Status::Undetermined;
  }
  throw ParseError(std::string("unknown status letter '") + c + "'");
}

Status threshold_status_at_stage(const Interval& bounds, const Rational& tau) {
  if (bounds.lo >= tau) return Status::Asserted;
  if (bounds.hi < tau) return Status::Denied;
  return Status::Undetermined;
}

namespace {

void check_argmax_indices(const ArgmaxPredicate& pred, size_t arity) {
  if (pred.mode == ArgmaxMode::TopK) {
    if (pred.top_set.empty() || pred.top_set.size() >= arity)
      throw IndexOutOfRange("top_k set must be a nonempty proper subset of outputs");
    for (size_t i : pred.top_set)
      if (i >= arity) throw IndexOutOfRange("top_k index " + std::to_string(i) + " out of range");
  } else {
    if (pred.candidate_index >= arity)
      throw IndexOutOfRange("candidate index " + std::to_string(pred.candidate_index) +
                            " out of range for arity " + std::to_string(arity));
  }
}

}  // namespace

Status argmax_status_at_stage(const EnclosureVector& bounds, const ArgmaxPredicate& pred) {
  check_argmax_indices(pred, bounds.size());

  if (pred.mode == ArgmaxMode::TopK) {
    for (size_t i : pred.top_set)
      for (size_t j = 0; j < bounds.size(); ++j) {
        if (pred.top_set.count(j)) continue;
        if (!(bounds[i].lo > bounds[j].hi)) return Status::Undetermined;
      }
    return Status::Asserted;
  }

  const size_t i = pred.candidate_index;
  bool all_separated = true;
  for (size_t j = 0; j < bounds.size(); ++j) {
    if (j == i) continue;
    if (!(bounds[i].lo > bounds[j].hi)) all_separated = false;
    if (bounds[i].hi < bounds[j].lo) return Status::Denied;
  }
  return all_separated ? Status::Asserted : Status::Undetermined;
}

namespace {

ForcingWitness make_threshold_witness(const Interval& bounds, int stage) {
  ForcingWitness w;
  w.kind = ForcingWitness::Kind::Bound;
  w.bound = bounds;
  w.stage = stage;
  return w;
}

ForcingWitness make_argmax_witness(const EnclosureVector& bounds, const ArgmaxPredicate& pred,
                                   Status status, int stage) {
  ForcingWitness w;
  w.kind = ForcingWitness::Kind::Separation;
  w.stage = stage;
  if (pred.mode == ArgmaxMode::TopK) {
    for (size_t i : pred.top_set)
      for (size_t j = 0; j < bounds.size(); ++j) {
        if (pred.top_set.count(j)) continue;
        w.pairs.push_back(SeparationPair{i, j, bounds[i].lo, bounds[j].hi});
      }
    return w;
  }
  const size_t i = pred.candidate_index;
  if (status == Status::Asserted) {
    for (size_t j = 0; j < bounds.size(); ++j) {
      if (j == i) continue;
      w.pairs.push_back(SeparationPair{i, j, bounds[i].lo, bounds[j].hi});
    }
  } else {
    for (size_t j = 0; j < bounds.size(); ++j) {
      if (j == i) continue;
      if (bounds[i].hi < bounds[j].lo) {
        w.pairs.push_back(SeparationPair{j, i, bounds[j].lo, bounds[i].hi});
        break;  // one excluding competitor suffices
      }
    }
  }
  return w;
}

struct StageView {
  Status status;
  std::optional<Interval> focus;
};

StageView stage_status(const EnclosureVector& bounds, const Predicate& pred) {
  if (const auto* tp = std::get_if<ThresholdPredicate>(&pred)) {
    if (tp->output_index >= bounds.size())
      throw IndexOutOfRange("threshold output index " + std::to_string(tp->output_index) +
                            " out of range");
    const Interval& iv = bounds[tp->output_index];
    return StageView{threshold_status_at_stage(iv, tp->tau), iv};
  }
  const auto& ap = std::get<ArgmaxPredicate>(pred);
  Status st = argmax_status_at_stage(bounds, ap);
  std::optional<Interval> focus;
  if (ap.mode != ArgmaxMode::TopK) focus = bounds[ap.candidate_index];
  return StageView{st, std::move(focus)};
}

}  // namespace

DecideResult budgeted_decide(const NetworkModel& net, const InputBox& box, const Predicate& pred,
                             long budget, int n_max) {
  if (budget < 0 || n_max < 0)
    throw ConfigurationError("budget and n_max must be non-negative");

  DecideResult result;
  if (budget < 1) {
    result.exhausted = true;
    return result;
  }

  RefinementState state = init_refinement(net, box);
  for (;;) {
    EnclosureVector bounds = state.current_bounds();
    StageView view = stage_status(bounds, pred);
    result.stages_used = state.stage;
    result.cost_spent = state.cost_spent;
    result.last_bounds = view.focus;
    result.last_vector = bounds;

    if (view.status != Status::Undetermined) {
      result.status = view.status;
      if (std::holds_alternative<ThresholdPredicate>(pred)) {
        result.witness = make_threshold_witness(*view.focus, state.stage);
      } else {
        result.witness = make_argmax_witness(bounds, std::get<ArgmaxPredicate>(pred), view.status,
                                             state.stage);
      }
      return result;
    }
    if (state.stage >= n_max) return result;

    const int before = state.stage;
    state = refine(std::move(state), net, budget - state.cost_spent);
    if (state.exhausted) {
      result.exhausted = true;
      return result;
    }
    if (state.stage == before) return result;  // fixed point, nothing left to split
  }
}

namespace {

bool separation_covers(const std::vector<SeparationPair>& pairs, size_t winner, size_t loser) {
  for (const auto& p : pairs)
    if (p.winner == winner && p.loser == loser && p.winner_lo > p.loser_hi) return true;
  return false;
}

bool pairs_well_formed(const std::vector<SeparationPair>& pairs, size_t arity) {
  for (const auto& p : pairs)
    if (p.winner >= arity || p.loser >= arity || p.winner == p.loser) return false;
  return true;
}

}  // namespace

bool witness_check(const ForcingWitness& witness, const Predicate& pred, Status claimed) {
  if (claimed == Status::Undetermined) return false;

  if (const auto* tp = std::get_if<ThresholdPredicate>(&pred)) {
    if (witness.kind != ForcingWitness::Kind::Bound) return false;
    if (witness.bound.lo > witness.bound.hi) return false;
    if (claimed == Status::Asserted) return witness.bound.lo >= tp->tau;
    return witness.bound.hi < tp->tau;
  }

  const auto& ap = std::get<ArgmaxPredicate>(pred);
  if (witness.kind != ForcingWitness::Kind::Separation) return false;
  if (ap.num_outputs < 2) return false;
  if (!pairs_well_formed(witness.pairs, ap.num_outputs)) return false;

  if (ap.mode == ArgmaxMode::TopK) {
    if (claimed != Status::Asserted) return false;
    if (ap.top_set.empty() || ap.top_set.size() >= ap.num_outputs) return false;
    for (size_t i : ap.top_set) {
      if (i >= ap.num_outputs) return false;
      for (size_t j = 0; j < ap.num_outputs; ++j) {
        if (ap.top_set.count(j)) continue;
        if (!separation_covers(witness.pairs, i, j)) return false;
      }
    }
    return true;
  }

  const size_t i = ap.candidate_index;
  if (i >= ap.num_outputs) return false;
  if (claimed == Status::Asserted) {
    for (size_t j = 0; j < ap.num_outputs; ++j) {
      if (j == i) continue;
      if (!separation_covers(witness.pairs, i, j)) return false;
    }
    return true;
  }
  // Denied: some competitor provably beats the candidate.
  for (size_t j = 0; j < ap.num_outputs; ++j) {
    if (j == i) continue;
    if (separation_covers(witness.pairs, j, i)) return true;
  }
  return false;
}

}  // namespace certigate
