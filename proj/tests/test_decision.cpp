#include <doctest.h>

#include <cmath>
#include <sstream>

#include "certigate/decision.hpp"
#include "certigate/errors.hpp"
#include "oracles.hpp"

using namespace certigate;

namespace {

Rational rat(const char* s) { return Rational::from_string(s); }
Interval iv(const char* lo, const char* hi) { return Interval::make(rat(lo), rat(hi)); }

NetworkModel identity_net() {
  NetworkModel net;
  net.name = "id";
  net.input_arity = 1;
  Layer l;
  l.kind = LayerKind::Affine;
  l.weights = {{rat("1")}};
  l.bias = {rat("0")};
  net.layers = {l};
  net.output_arity = 1;
  return net;
}

NetworkModel relu_net() {
  NetworkModel net = identity_net();
  Layer relu;
  relu.kind = LayerKind::Relu;
  net.layers.push_back(relu);
  return net;
}

InputBox box1(const char* lo, const char* hi) {
  InputBox b;
  b.dims = {iv(lo, hi)};
  return b;
}

ArgmaxPredicate unique(size_t i, size_t n) {
  ArgmaxPredicate p;
  p.mode = ArgmaxMode::UniqueArgmax;
  p.candidate_index = i;
  p.num_outputs = n;
  return p;
}

}  // namespace

TEST_CASE("threshold status table") {
  const Rational tau = rat("0.7");
  CHECK(threshold_status_at_stage(iv("0.42", "0.81"), tau) == Status::Undetermined);
  CHECK(threshold_status_at_stage(iv("0.76", "0.84"), tau) == Status::Asserted);
  CHECK(threshold_status_at_stage(iv("0.12", "0.29"), tau) == Status::Denied);
  // Boundary: upper bound exactly at tau stays undetermined; lower bound at
  // tau asserts (inclusive assert, strict deny).
  CHECK(threshold_status_at_stage(iv("0.6", "0.7"), tau) == Status::Undetermined);
  CHECK(threshold_status_at_stage(iv("0.7", "0.7"), tau) == Status::Asserted);
}

TEST_CASE("argmax status table") {
  CHECK(argmax_status_at_stage({iv("2", "3"), iv("0", "1")}, unique(0, 2)) == Status::Asserted);
  CHECK(argmax_status_at_stage({iv("0", "2"), iv("1", "3")}, unique(0, 2)) ==
        Status::Undetermined);
  CHECK(argmax_status_at_stage({iv("0", "1"), iv("2", "3")}, unique(0, 2)) == Status::Denied);

  ArgmaxPredicate topk;
  topk.mode = ArgmaxMode::TopK;
  topk.top_set = {0, 1};
  topk.num_outputs = 3;
  CHECK(argmax_status_at_stage({iv("5", "6"), iv("4", "4.5"), iv("0", "1")}, topk) ==
        Status::Asserted);
  // Set mode never denies.
  CHECK(argmax_status_at_stage({iv("0", "1"), iv("0", "1"), iv("5", "6")}, topk) ==
        Status::Undetermined);

  CHECK_THROWS_AS(argmax_status_at_stage({iv("0", "1")}, unique(3, 1)), IndexOutOfRange);
}

TEST_CASE("budgeted_decide forces at stage 0 on a clear bound") {
  auto r = budgeted_decide(identity_net(), box1("0.76", "0.84"),
                           ThresholdPredicate{0, rat("0.7")}, 10, 5);
  CHECK(r.status == Status::Asserted);
  REQUIRE(r.witness);
  CHECK(r.witness->kind == ForcingWitness::Kind::Bound);
  CHECK(r.witness->bound == iv("0.76", "0.84"));
  CHECK(r.witness->stage == 0);
  CHECK(r.stages_used == 0);
  CHECK(r.cost_spent == 1);
  CHECK_FALSE(r.exhausted);
}

TEST_CASE("budgeted_decide denies when the whole enclosure sits below tau") {
  auto r = budgeted_decide(relu_net(), box1("-1", "1"), ThresholdPredicate{0, rat("2")}, 10, 5);
  CHECK(r.status == Status::Denied);
  REQUIRE(r.witness);
  CHECK(r.witness->bound == iv("0", "1"));
  CHECK(r.witness->stage == 0);
}

TEST_CASE("budgeted_decide with zero budget is exhausted immediately") {
  auto r = budgeted_decide(identity_net(), box1("0.6", "0.8"), ThresholdPredicate{0, rat("0.7")},
                           0, 5);
  CHECK(r.status == Status::Undetermined);
  CHECK_FALSE(r.witness);
  CHECK(r.stages_used == 0);
  CHECK(r.cost_spent == 0);
  CHECK(r.exhausted);
}

TEST_CASE("budgeted_decide stops refining a point box without exhaustion") {
  auto r = budgeted_decide(identity_net(), box1("0.65", "0.65"),
                           ThresholdPredicate{0, rat("0.7")}, 100, 5);
  CHECK(r.status == Status::Denied);  // 0.65 < 0.7 forces denial at stage 0

  auto straddle = budgeted_decide(identity_net(), box1("0.7", "0.7"),
                                  ThresholdPredicate{0, rat("0.7")}, 100, 5);
  CHECK(straddle.status == Status::Asserted);  // inclusive boundary

  // A tied argmax on a point box can never force; refinement is a fixed
  // point, so the search stops early and is not compute-limited.
  NetworkModel twin;
  twin.name = "twin";
  twin.input_arity = 1;
  Layer l;
  l.kind = LayerKind::Affine;
  l.weights = {{rat("1")}, {rat("1")}};
  l.bias = {rat("0"), rat("0")};
  twin.layers = {l};
  twin.output_arity = 2;
  ArgmaxPredicate pred;
  pred.mode = ArgmaxMode::UniqueArgmax;
  pred.candidate_index = 0;
  pred.num_outputs = 2;
  auto tied = budgeted_decide(twin, box1("0.5", "0.5"), pred, 100, 5);
  CHECK(tied.status == Status::Undetermined);
  CHECK(tied.stages_used == 0);
  CHECK_FALSE(tied.exhausted);
  CHECK(tied.cost_spent == 1);
}

TEST_CASE("budgeted_decide reaches n_max without forcing") {
  auto r = budgeted_decide(identity_net(), box1("0.6", "0.8"), ThresholdPredicate{0, rat("0.7")},
                           1000, 3);
  CHECK(r.status == Status::Undetermined);
  CHECK(r.stages_used == 3);
  CHECK_FALSE(r.exhausted);  // budget was ample; the model does not force
  CHECK(r.last_bounds);
}

TEST_CASE("witness_check re-derives forcing") {
  const ThresholdPredicate tp{0, rat("0.7")};
  ForcingWitness good;
  good.kind = ForcingWitness::Kind::Bound;
  good.bound = iv("0.76", "0.84");
  good.stage = 5;
  CHECK(witness_check(good, tp, Status::Asserted));
  CHECK_FALSE(witness_check(good, tp, Status::Denied));
  CHECK_FALSE(witness_check(good, tp, Status::Undetermined));

  ForcingWitness straddling = good;
  straddling.bound = iv("0.42", "0.81");
  CHECK_FALSE(witness_check(straddling, tp, Status::Asserted));

  ForcingWitness sep;
  sep.kind = ForcingWitness::Kind::Separation;
  sep.pairs = {SeparationPair{0, 1, rat("2"), rat("1")}};
  sep.stage = 0;
  CHECK(witness_check(sep, unique(0, 2), Status::Asserted));
  CHECK_FALSE(witness_check(sep, unique(0, 3), Status::Asserted));  // class 2 unexcluded
  CHECK(witness_check(sep, unique(1, 2), Status::Denied));
  CHECK_FALSE(witness_check(sep, tp, Status::Asserted));  // kind mismatch
}

TEST_CASE("producer-checker closure and boundary perturbation") {
  testing::Rng rng(0xC105);
  int forced = 0;
  for (int n = 0; n < 120 || forced < 20; ++n) {
    REQUIRE(n < 4000);
    NetworkModel net = testing::rand_network(rng, false);
    InputBox box = testing::rand_box(rng, net.input_arity);
    Predicate pred;
    if (net.output_arity >= 2 && n % 2 == 0) {
      std::uniform_int_distribution<size_t> pick(0, net.output_arity - 1);
      pred = unique(pick(rng), net.output_arity);
    } else {
      pred = ThresholdPredicate{0, testing::rand_rational(rng)};
    }
    auto r = budgeted_decide(net, box, pred, 50, 4);
    if (r.status == Status::Undetermined) continue;
    ++forced;
    REQUIRE(r.witness);
    CHECK(witness_check(*r.witness, pred, r.status));

    // Push one recorded endpoint across the forcing boundary: rejected.
    ForcingWitness bad = *r.witness;
    if (bad.kind == ForcingWitness::Kind::Bound) {
      const auto& tp = std::get<ThresholdPredicate>(pred);
      if (r.status == Status::Asserted) {
        bad.bound.lo = tp.tau - rat("1/1000");
      } else {
        bad.bound.hi = tp.tau;
      }
      if (bad.bound.lo > bad.bound.hi) bad.bound.hi = bad.bound.lo;
    } else {
      REQUIRE_FALSE(bad.pairs.empty());
      bad.pairs[0].winner_lo = bad.pairs[0].loser_hi - rat("1/1000");
    }
    CHECK_FALSE(witness_check(bad, pred, r.status));
  }
}

TEST_CASE("statuses are never revoked along monotonized histories") {
  testing::Rng rng(0xA11);
  const Rational tau = rat("1/3");
  int checked = 0;
  while (checked < 500) {
    std::vector<Interval> raw;
    std::uniform_int_distribution<size_t> len(1, 6);
    for (size_t i = 0, n = len(rng); i < n; ++i) raw.push_back(testing::rand_interval(rng));
    IntervalSequence mono;
    try {
      mono = monotonize(raw);
    } catch (const InconsistentHistory&) {
      continue;
    }
    ++checked;
    Status seen = Status::Undetermined;
    for (const auto& stage : mono) {
      Status s = threshold_status_at_stage(stage, tau);
      if (seen != Status::Undetermined) CHECK(s == seen);
      if (s != Status::Undetermined) seen = s;
    }
    // Soundness: a forced status holds for sampled compatible completions.
    if (seen != Status::Undetermined) {
      const Interval& last = mono.back();
      for (int k = 0; k < 50; ++k) {
        Rational v = last.lo + last.width() * Rational(k, 49);
        if (seen == Status::Asserted) CHECK(v >= tau);
        if (seen == Status::Denied) CHECK(v < tau);
      }
    }
  }
}
