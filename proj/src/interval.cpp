#include "certigate/interval.hpp"

#include "certigate/errors.hpp"

namespace certigate {

Interval Interval::make(Rational lo, Rational hi) {
  if (lo > hi)
    throw InvalidInterval("lo " + lo.str() + " exceeds hi " + hi.str());
  return Interval{std::move(lo), std::move(hi)};
}

Interval tighten(const Interval& prev, const Interval& raw, int stage) {
  Rational lo = max(prev.lo, raw.lo);
  Rational hi = min(prev.hi, raw.hi);
  if (lo > hi)
    throw InconsistentHistory("empty intersection at stage " + std::to_string(stage) +
                              " (lo " + lo.str() + " > hi " + hi.str() + ")");
  return Interval{std::move(lo), std::move(hi)};
}

IntervalSequence monotonize(const std::vector<Interval>& raw) {
  IntervalSequence out;
  out.reserve(raw.size());
  for (size_t n = 0; n < raw.size(); ++n) {
    if (out.empty()) {
      out.push_back(raw[n]);
    } else {
      out.push_back(tighten(out.back(), raw[n], static_cast<int>(n)));
    }
  }
  return out;
}

}  // namespace certigate
