#include "bg/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace bg {

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  for (const auto& p : pieces) {
    if (!(p.lo <= p.hi)) throw std::invalid_argument("interval with lo > hi");
  }
  std::erase_if(pieces, [](const Interval& p) { return p.hi <= p.lo; });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(p);
    }
  }
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.hi - p.lo;
  return m;
}

bool IntervalSet::contains_interior(double t) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double v, const Interval& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  --it;
  return t > it->lo && t < it->hi;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const double lo = std::max(pieces_[i].lo, other.pieces_[j].lo);
    const double hi = std::min(pieces_[i].hi, other.pieces_[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (pieces_[i].hi < other.pieces_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalSet(std::move(all));
}

}  // namespace bg
