#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "varalpha/errors.hpp"
#include "varalpha/exact_series.hpp"
#include "varalpha/interval.hpp"
#include "varalpha/rational.hpp"

namespace varalpha {

using Digit = int;
using Base = long;

/// The set N_B of negatively signed positions, as an eventually periodic
/// membership sequence. rho(n) is 1 on members and 2 elsewhere, so the sign
/// factor (-1)^rho(n) is -1 exactly on N_B.
class SignPattern {
public:
  explicit SignPattern(EventuallyPeriodicSeq<bool> membership) : membership_(std::move(membership)) {}

  static SignPattern none() { return SignPattern(EventuallyPeriodicSeq<bool>::constant(false)); }
  static SignPattern all() { return SignPattern(EventuallyPeriodicSeq<bool>::constant(true)); }
  static SignPattern odd() { return SignPattern(EventuallyPeriodicSeq<bool>({}, {true, false})); }
  static SignPattern even() { return SignPattern(EventuallyPeriodicSeq<bool>({}, {false, true})); }

  const EventuallyPeriodicSeq<bool>& membership() const noexcept { return membership_; }

  bool is_member(std::size_t n) const { return membership_.term_at(n); }
  int rho(std::size_t n) const { return is_member(n) ? 1 : 2; }
  int sign_factor(std::size_t n) const { return is_member(n) ? -1 : 1; }

  bool is_empty() const { return *this == none(); }
  bool is_odd() const { return *this == odd(); }

  /// b_1 < b_2 < ... : the members of N_B that are <= limit.
  std::vector<std::size_t> members_up_to(std::size_t limit) const {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= limit; ++n)
      if (is_member(n)) out.push_back(n);
    return out;
  }

  SignPattern removed(std::size_t m) const { return SignPattern(membership_.removed(m)); }
  SignPattern shifted(std::size_t m) const { return SignPattern(membership_.shifted(m)); }

  std::size_t prefix_length() const { return membership_.prefix().size(); }
  std::size_t period() const { return membership_.cycle().size(); }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

private:
  EventuallyPeriodicSeq<bool> membership_;
};

inline int rho(const SignPattern& signs, std::size_t n) { return signs.rho(n); }

/// One column q_{0,n}, ..., q_{m_n,n} of a Q-tilde matrix.
class QTildeColumn {
public:
  explicit QTildeColumn(std::vector<Rational> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw domain_error("Q-tilde column must have at least one entry");
    cumulative_.reserve(entries_.size() + 1);
    cumulative_.emplace_back(0);
    for (const auto& e : entries_) cumulative_.push_back(cumulative_.back() + e);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  const Rational& entry(Digit i) const {
    check(i);
    return entries_[static_cast<std::size_t>(i)];
  }

  /// a_i = q_0 + ... + q_{i-1}; a_0 = 0.
  const Rational& cumulative(Digit i) const {
    check(i);
    return cumulative_[static_cast<std::size_t>(i)];
  }

  const Rational& total() const noexcept { return cumulative_.back(); }

  Rational max_entry() const {
    Rational best = entries_.front();
    for (const auto& e : entries_) best = max(best, e);
    return best;
  }

  friend bool operator==(const QTildeColumn& a, const QTildeColumn& b) { return a.entries_ == b.entries_; }

private:
  void check(Digit i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= entries_.size())
      throw digit_range_error("digit " + std::to_string(i) + " outside column alphabet {0.." +
                              std::to_string(entries_.size() - 1) + "}");
  }

  std::vector<Rational> entries_;
  std::vector<Rational> cumulative_;
};

inline Rational column_cumulative(const QTildeColumn& column, Digit i) { return column.cumulative(i); }

enum class SystemKind { cantor, qtilde };

/// A numeral system with a (possibly) variable alphabet: per-position digit
/// weights plus a sign pattern.
///
/// For a Cantor system position n has alphabet {0..q_n-1}, weight 1/q_n for
/// every digit, and offset i/q_n. For a Q-tilde system digit i at position n
/// has weight q_{i,n} and offset a_{i,n}. The value of a digit stream is
///   sum_n sign(n) * offset(n, i_n) * prod_{j<n} weight(j, i_j)
/// which specializes to every expansion handled by the library.
class NumeralSystem {
public:
  static NumeralSystem cantor(EventuallyPeriodicSeq<Base> base, SignPattern signs) {
    return NumeralSystem(Layout(std::in_place_index<0>, std::move(base)), std::move(signs));
  }
  static NumeralSystem qtilde(EventuallyPeriodicSeq<QTildeColumn> columns, SignPattern signs) {
    return NumeralSystem(Layout(std::in_place_index<1>, std::move(columns)), std::move(signs));
  }

  SystemKind kind() const noexcept { return layout_.index() == 0 ? SystemKind::cantor : SystemKind::qtilde; }
  bool is_cantor() const noexcept { return kind() == SystemKind::cantor; }
  bool is_qtilde() const noexcept { return kind() == SystemKind::qtilde; }

  const SignPattern& signs() const noexcept { return signs_; }

  const EventuallyPeriodicSeq<Base>& base() const {
    if (!is_cantor()) throw domain_error("not a Cantor system");
    return std::get<0>(layout_);
  }
  const EventuallyPeriodicSeq<QTildeColumn>& columns() const {
    if (!is_qtilde()) throw domain_error("not a Q-tilde system");
    return std::get<1>(layout_);
  }

  Base base_at(std::size_t n) const { return base().term_at(n); }
  const QTildeColumn& column_at(std::size_t n) const { return columns().term_at(n); }

  std::size_t alphabet_size(std::size_t n) const {
    if (is_cantor()) return static_cast<std::size_t>(base_at(n));
    return column_at(n).size();
  }
  Digit max_digit(std::size_t n) const { return static_cast<Digit>(alphabet_size(n)) - 1; }
  bool in_alphabet(std::size_t n, Digit d) const {
    return d >= 0 && static_cast<std::size_t>(d) < alphabet_size(n);
  }

  /// Multiplicative factor contributed by digit d at position n.
  Rational weight(std::size_t n, Digit d) const {
    check_digit(n, d);
    if (is_cantor()) return Rational(1L, base_at(n));
    return column_at(n).entry(d);
  }

  /// Unsigned additive coefficient of digit d at position n (i/q_n or a_{i,n}).
  Rational offset(std::size_t n, Digit d) const {
    check_digit(n, d);
    if (is_cantor()) return Rational(static_cast<long>(d), base_at(n));
    return column_at(n).cumulative(d);
  }

  int sign_factor(std::size_t n) const { return signs_.sign_factor(n); }
  int rho(std::size_t n) const { return signs_.rho(n); }
  bool is_member(std::size_t n) const { return signs_.is_member(n); }

  bool is_positive() const { return signs_.is_empty(); }
  bool is_alternating() const { return signs_.is_odd(); }

  /// Positions beyond prefix_length() repeat with period period(), for
  /// alphabets, weights and signs jointly.
  std::size_t prefix_length() const { return std::max(layout_prefix(), signs_.prefix_length()); }
  std::size_t period() const { return std::lcm(layout_period(), signs_.period()); }

  /// True when every position carries the same alphabet and the same sign.
  bool has_constant_alphabet_and_sign() const {
    bool layout_const = std::visit([](const auto& s) { return s.is_constant(); }, layout_);
    return layout_const && signs_.membership().is_constant();
  }

  NumeralSystem removed(std::size_t m) const {
    return NumeralSystem(std::visit([m](const auto& s) { return Layout(s.removed(m)); }, layout_),
                         signs_.removed(m));
  }
  NumeralSystem shifted(std::size_t m) const {
    return NumeralSystem(std::visit([m](const auto& s) { return Layout(s.shifted(m)); }, layout_),
                         signs_.shifted(m));
  }
  NumeralSystem with_signs(SignPattern signs) const { return NumeralSystem(layout_, std::move(signs)); }

  /// Same alphabets and weights (ignoring signs).
  bool same_layout(const NumeralSystem& o) const { return layout_ == o.layout_; }

  friend bool operator==(const NumeralSystem&, const NumeralSystem&) = default;

private:
  using Layout = std::variant<EventuallyPeriodicSeq<Base>, EventuallyPeriodicSeq<QTildeColumn>>;

  NumeralSystem(Layout layout, SignPattern signs) : layout_(std::move(layout)), signs_(std::move(signs)) {}

  std::size_t layout_prefix() const {
    return std::visit([](const auto& s) { return s.prefix().size(); }, layout_);
  }
  std::size_t layout_period() const {
    return std::visit([](const auto& s) { return s.cycle().size(); }, layout_);
  }

  void check_digit(std::size_t n, Digit d) const {
    if (!in_alphabet(n, d))
      throw digit_range_error("digit " + std::to_string(d) + " outside alphabet {0.." +
                              std::to_string(max_digit(n)) + "} at position " + std::to_string(n));
  }

  Layout layout_;
  SignPattern signs_;
};

struct Violation {
  std::string path;
  std::string message;

  std::string str() const { return message + " at " + path; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const {
    if (ok()) return "OK";
    std::string s;
    for (const auto& v : violations) s += (s.empty() ? "" : "; ") + v.str();
    return s;
  }
};

namespace detail {

inline std::optional<std::string> check_base_entry(Base q) {
  if (q < 2) return "q_n ≥ 2 required";
  return std::nullopt;
}

inline void check_column(const QTildeColumn& col, const std::string& path, std::vector<Violation>& out) {
  for (std::size_t j = 0; j < col.size(); ++j) {
    const Rational& e = col.entries()[j];
    if (e.sign() <= 0 || e >= Rational(1))
      out.push_back({path + "[" + std::to_string(j) + "]", "entry ∉ (0,1)"});
  }
  if (col.total() != Rational(1)) out.push_back({path, "column sum ≠ 1"});
}

} // namespace detail

/// Every violated invariant of the system, or an empty report.
inline ValidationReport validate(const NumeralSystem& system) {
  ValidationReport report;
  auto& out = report.violations;
  if (system.is_cantor()) {
    const auto& base = system.base();
    for (std::size_t i = 0; i < base.prefix().size(); ++i)
      if (auto msg = detail::check_base_entry(base.prefix()[i])) out.push_back({"$.base.prefix[" + std::to_string(i) + "]", *msg});
    for (std::size_t i = 0; i < base.cycle().size(); ++i)
      if (auto msg = detail::check_base_entry(base.cycle()[i])) out.push_back({"$.base.cycle[" + std::to_string(i) + "]", *msg});
    return report;
  }
  const auto& cols = system.columns();
  for (std::size_t i = 0; i < cols.prefix().size(); ++i)
    detail::check_column(cols.prefix()[i], "$.columns.prefix[" + std::to_string(i) + "]", out);
  for (std::size_t i = 0; i < cols.cycle().size(); ++i)
    detail::check_column(cols.cycle()[i], "$.columns.cycle[" + std::to_string(i) + "]", out);
  // Finitary proxy for "every infinite product of chosen weights vanishes".
  Rational product(1);
  for (const auto& col : cols.cycle()) product *= col.max_entry();
  if (product >= Rational(1)) out.push_back({"$.columns.cycle", "cycle max-product ≥ 1"});
  return report;
}

inline void require_valid(const NumeralSystem& system) {
  auto report = validate(system);
  if (!report.ok()) throw validation_error(report.violations.front().str());
}

inline NumeralSystem remove_index(const NumeralSystem& system, std::size_t m) {
  if (m == 0) throw domain_error("index to remove must be >= 1");
  return system.removed(m);
}

inline NumeralSystem shift_system(const NumeralSystem& system, std::size_t m) { return system.shifted(m); }

/// Digit of the most negative contribution at position n (beta_n); gamma_n
/// is its mirror. Beta tails realize the infimum of a Cantor system's
/// range, gamma tails the supremum.
inline Digit beta_digit(const NumeralSystem& s, std::size_t n) { return s.is_member(n) ? s.max_digit(n) : 0; }
inline Digit gamma_digit(const NumeralSystem& s, std::size_t n) { return s.is_member(n) ? 0 : s.max_digit(n); }

/// Exact infimum and supremum of the values representable by the digits from
/// position n onward, expressed in the scale of shift_system(S, n - 1).
///
/// Each extremum satisfies V_n = opt_d (sign(n) * offset(n, d) + weight(n, d) * V_{n+1}).
/// On the periodic part this is solved by policy iteration (each policy
/// evaluation is a geometric tail sum), then unrolled backward through the
/// prefix. For Cantor systems the optimal policies are the beta and gamma
/// tails; Q-tilde systems with signs need the general search.
class TailExtremes {
public:
  explicit TailExtremes(const NumeralSystem& system)
      : prefix_(system.prefix_length()), period_(system.period()) {
    lo_ = solve(system, /*minimize=*/true);
    hi_ = solve(system, /*minimize=*/false);
  }

  Interval at(std::size_t n) const {
    if (n == 0) throw domain_error("positions start at 1");
    std::size_t idx = n <= prefix_ ? n - 1 : prefix_ + (n - prefix_ - 1) % period_;
    return {lo_[idx], hi_[idx]};
  }

private:
  std::vector<Rational> solve(const NumeralSystem& s, bool minimize) const {
    auto better = [minimize](const Rational& a, const Rational& b) { return minimize ? a < b : a > b; };
    auto value = [&](std::size_t pos, Digit d, const Rational& next) {
      Rational v = s.offset(pos, d);
      if (s.sign_factor(pos) < 0) v = -v;
      return v + s.weight(pos, d) * next;
    };

    const std::size_t start = prefix_ + 1;
    std::vector<Digit> policy(period_);
    for (std::size_t j = 0; j < period_; ++j)
      policy[j] = minimize ? beta_digit(s, start + j) : gamma_digit(s, start + j);

    std::vector<Rational> cyc(period_);
    for (;;) {
      Rational ratio(1);
      auto term = [&](std::size_t pos) {
        std::size_t j = (pos - start) % period_;
        Rational prod(1);
        for (std::size_t k = 0; k < j; ++k) prod *= s.weight(start + k, policy[k]);
        Rational t = s.offset(pos, policy[j]) * prod;
        return s.sign_factor(pos) < 0 ? -t : t;
      };
      for (std::size_t j = 0; j < period_; ++j) ratio *= s.weight(start + j, policy[j]);
      cyc[0] = periodic_tail_sum(term, start, period_, ratio);
      for (std::size_t j = period_; j-- > 1;)
        cyc[j] = value(start + j, policy[j], cyc[(j + 1) % period_]);

      bool changed = false;
      for (std::size_t j = 0; j < period_; ++j) {
        const Rational& next = cyc[(j + 1) % period_];
        Rational best = value(start + j, policy[j], next);
        for (Digit d = 0; d <= s.max_digit(start + j); ++d) {
          Rational v = value(start + j, d, next);
          if (better(v, best)) {
            best = v;
            policy[j] = d;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::vector<Rational> out(prefix_ + period_);
    for (std::size_t j = 0; j < period_; ++j) out[prefix_ + j] = cyc[j];
    for (std::size_t n = prefix_; n >= 1; --n) {
      const Rational& next = out[n]; // position n + 1
      Rational best = value(n, 0, next);
      for (Digit d = 1; d <= s.max_digit(n); ++d) {
        Rational v = value(n, d, next);
        if (better(v, best)) best = v;
      }
      out[n - 1] = best;
    }
    return out;
  }

  std::size_t prefix_;
  std::size_t period_;
  std::vector<Rational> lo_;
  std::vector<Rational> hi_;
};

/// [a', a'']: exact infimum and supremum of all values the system represents.
inline Interval base_interval(const NumeralSystem& system) { return TailExtremes(system).at(1); }

} // namespace varalpha
