#ifndef BG_INTERVAL_SET_HPP
#define BG_INTERVAL_SET_HPP

#include <vector>

namespace bg {

struct Interval {
  double lo;
  double hi;
};

/// Finite union of intervals, kept sorted and merged. Endpoint closedness is
/// not tracked; every quantity computed from it is measure-theoretic.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);
  static IntervalSet single(double lo, double hi) { return IntervalSet({{lo, hi}}); }

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  double measure() const;
  /// Point membership for t strictly inside one of the intervals.
  bool contains_interior(double t) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;

 private:
  std::vector<Interval> pieces_;
};

}  // namespace bg

#endif  // BG_INTERVAL_SET_HPP
