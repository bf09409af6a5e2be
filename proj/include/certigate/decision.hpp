#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "certigate/propagation.hpp"

namespace certigate {

// Entitlement status of a warrant-claim. Categorical values require a
// forcing witness; Undetermined is the mandatory fallback.
enum class Status { Asserted, Denied, Undetermined };

char status_letter(Status s);
Status status_from_letter(char c);

// score(output_index) >= tau, inclusive. Denial is strict (hi < tau); the
// hi == tau boundary stays Undetermined.
struct ThresholdPredicate {
  size_t output_index = 0;
  Rational tau;
};

enum class ArgmaxMode { UniqueArgmax, DenyQuery, TopK };

// unique_argmax / deny_query ask about one candidate class; they share the
// forcing rules and differ only in recorded intent. top_k certifies that the
// set dominates its complement; it has no Denied status.
struct ArgmaxPredicate {
  size_t candidate_index = 0;
  ArgmaxMode mode = ArgmaxMode::UniqueArgmax;
  std::set<size_t> top_set;  // TopK only; nonempty proper subset
  size_t num_outputs = 0;
};

using Predicate = std::variant<ThresholdPredicate, ArgmaxPredicate>;

// One forced strict inequality z_winner > z_loser, recorded as the bound
// endpoints that witnessed it (winner_lo > loser_hi). The equivalent margin
// form z_i - z_j >= m with m > 0 is expressible through bound_linear_spec
// (c = e_j - e_i, UB <= -m); the endpoint encoding is the one carried in
// certificates.
struct SeparationPair {
  size_t winner = 0;
  size_t loser = 0;
  Rational winner_lo;
  Rational loser_hi;
};

struct ForcingWitness {
  enum class Kind { Bound, Separation };
  Kind kind = Kind::Bound;
  Interval bound;                     // Bound
  std::vector<SeparationPair> pairs;  // Separation
  int stage = 0;
};

// A at stage n iff lo >= tau; D iff hi < tau; U otherwise.
Status threshold_status_at_stage(const Interval& bounds, const Rational& tau);

// unique_argmax/deny_query: A iff the candidate's lower bound beats every
// competitor's upper bound; D iff some competitor's lower bound beats the
// candidate's upper bound. top_k: A iff every member separates from every
// non-member; never D.
Status argmax_status_at_stage(const EnclosureVector& bounds, const ArgmaxPredicate& pred);

struct DecideResult {
  Status status = Status::Undetermined;
  std::optional<ForcingWitness> witness;
  int stages_used = 0;
  long cost_spent = 0;
  bool exhausted = false;
  // Monotonized bounds of the queried output (threshold) or candidate
  // (argmax) when any propagation ran; the full vector alongside.
  std::optional<Interval> last_bounds;
  EnclosureVector last_vector;
};

// Searches stages 0..n_max for the first forcing stage within the leaf
// propagation budget. Monotonicity of the monotonized history makes the
// earliest exit safe; later stages cannot revoke a forced status. exhausted
// is set only when the budget ran out before n_max was reached.
DecideResult budgeted_decide(const NetworkModel& net, const InputBox& box, const Predicate& pred,
                             long budget, int n_max);

// Independent re-derivation: does the witness's recorded inequality set
// entail the claimed status under the forcing rules? Never inspects how the
// witness was produced.
bool witness_check(const ForcingWitness& witness, const Predicate& pred, Status claimed);

}  // namespace certigate
