#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varalpha/errors.hpp"
#include "varalpha/rational.hpp"

namespace varalpha {

/// Infinite sequence t(1), t(2), ... given by a finite prefix followed by a
/// repeating nonempty cycle.
///
/// Stored in normal form: the cycle is primitive (no shorter period divides
/// it) and the prefix is as short as possible. Two sequences are therefore
/// equal as infinite sequences iff they compare equal with `==`.
template <typename T>
class EventuallyPeriodicSeq {
public:
  EventuallyPeriodicSeq(std::vector<T> prefix, std::vector<T> cycle)
      : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw domain_error("eventually periodic sequence needs a nonempty cycle");
    normalize();
  }

  static EventuallyPeriodicSeq constant(T value) { return EventuallyPeriodicSeq({}, {std::move(value)}); }

  const std::vector<T>& prefix() const noexcept { return prefix_; }
  const std::vector<T>& cycle() const noexcept { return cycle_; }

  using const_reference = typename std::vector<T>::const_reference;

  /// term(n), 1-based.
  const_reference term_at(std::size_t n) const {
    if (n == 0) throw domain_error("sequence positions start at 1");
    if (n <= prefix_.size()) return prefix_[n - 1];
    return cycle_[(n - prefix_.size() - 1) % cycle_.size()];
  }
  const_reference operator[](std::size_t n) const { return term_at(n); }

  bool is_constant() const noexcept { return prefix_.empty() && cycle_.size() == 1; }

  /// Sequence with term m deleted: result(n) = this(n) for n < m, this(n+1) for n >= m.
  EventuallyPeriodicSeq removed(std::size_t m) const {
    if (m == 0) throw domain_error("sequence positions start at 1");
    const std::size_t p = std::max(m - 1, prefix_.size());
    auto at = [&](std::size_t n) -> const_reference { return n < m ? term_at(n) : term_at(n + 1); };
    std::vector<T> pre, cyc;
    for (std::size_t n = 1; n <= p; ++n) pre.push_back(at(n));
    for (std::size_t n = p + 1; n <= p + cycle_.size(); ++n) cyc.push_back(at(n));
    return {std::move(pre), std::move(cyc)};
  }

  /// Sequence with the first m terms dropped: result(n) = this(n + m).
  EventuallyPeriodicSeq shifted(std::size_t m) const {
    const std::size_t p = prefix_.size() > m ? prefix_.size() - m : 0;
    std::vector<T> pre, cyc;
    for (std::size_t n = 1; n <= p; ++n) pre.push_back(term_at(n + m));
    for (std::size_t n = p + 1; n <= p + cycle_.size(); ++n) cyc.push_back(term_at(n + m));
    return {std::move(pre), std::move(cyc)};
  }

  friend bool operator==(const EventuallyPeriodicSeq&, const EventuallyPeriodicSeq&) = default;

private:
  void normalize() {
    const std::size_t len = cycle_.size();
    for (std::size_t d = 1; d < len; ++d) {
      if (len % d != 0) continue;
      bool periodic = true;
      for (std::size_t i = d; i < len && periodic; ++i) periodic = cycle_[i] == cycle_[i - d];
      if (periodic) {
        cycle_.erase(cycle_.begin() + static_cast<std::ptrdiff_t>(d), cycle_.end());
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
      std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
      prefix_.pop_back();
    }
  }

  std::vector<T> prefix_;
  std::vector<T> cycle_;
};

/// term(n) of an eventually periodic sequence; total for n >= 1.
template <typename T>
typename EventuallyPeriodicSeq<T>::const_reference term_at(const EventuallyPeriodicSeq<T>& seq, std::size_t n) {
  return seq.term_at(n);
}

/// Sum of block_sum * ratio^k over k >= 0, i.e. block_sum / (1 - ratio).
inline Rational geometric_block_sum(const Rational& block_sum, const Rational& ratio) {
  if (ratio.sign() < 0 || ratio >= Rational(1))
    throw domain_error("geometric ratio " + ratio.str() + " outside [0, 1): series diverges or is invalid");
  return block_sum / (Rational(1) - ratio);
}

/// Exact value of the tail sum over positions start, start+1, ... when the
/// weight at start + k*period + j equals (weight at start + j) * ratio^k.
inline Rational periodic_tail_sum(const std::function<Rational(std::size_t)>& term_fn, std::size_t start,
                                  std::size_t period, const Rational& ratio) {
  if (start == 0 || period == 0) throw domain_error("tail sum needs start >= 1 and period >= 1");
  Rational block;
  for (std::size_t j = 0; j < period; ++j) block += term_fn(start + j);
  return geometric_block_sum(block, ratio);
}

/// Same, with the contraction ratio read off the terms themselves: the ratio
/// between the first nonzero term of one period and its counterpart one
/// period later. Every nonzero term of the period must agree on it.
inline Rational periodic_tail_sum(const std::function<Rational(std::size_t)>& term_fn, std::size_t start,
                                  std::size_t period) {
  if (start == 0 || period == 0) throw domain_error("tail sum needs start >= 1 and period >= 1");
  Rational block;
  std::optional<Rational> ratio;
  for (std::size_t j = 0; j < period; ++j) {
    Rational now = term_fn(start + j);
    Rational next = term_fn(start + j + period);
    block += now;
    if (now.is_zero()) {
      if (!next.is_zero()) throw domain_error("tail weights are not geometric across periods");
      continue;
    }
    Rational r = next / now;
    if (ratio && *ratio != r) throw domain_error("tail weights are not geometric across periods");
    ratio = r;
  }
  if (!ratio) return Rational(0);
  return geometric_block_sum(block, *ratio);
}

inline std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

} // namespace varalpha
