#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "varalpha/errors.hpp"
#include "varalpha/interval.hpp"
#include "varalpha/numbers.hpp"
#include "varalpha/rational.hpp"
#include "varalpha/systems.hpp"

namespace varalpha {

/// How surviving digits are signed after a generalized shift.
///
/// digit_signed: every digit keeps its own sign factor (the sign pattern
/// loses index m along with the base).
/// position_signed: signs are re-read from the new positions; defined only
/// for alternating Cantor series (N_B = odd positions).
enum class ShiftVariant { digit_signed, position_signed };

inline const char* to_string(ShiftVariant v) { return v == ShiftVariant::digit_signed ? "digit" : "position"; }

inline void require_admissible(const NumeralSystem& s, ShiftVariant v) {
  if (v == ShiftVariant::position_signed && !(s.is_cantor() && s.is_alternating()))
    throw variant_error("position-signed shift requires an alternating Cantor system (N_B = odd positions)");
}

/// sigma^m: drops the first m digits together with their positions.
inline RepresentedNumber iterate_shift(const RepresentedNumber& num, std::size_t m) {
  if (m == 0) return num;
  const NumeralSystem target = shift_system(num.system(), m);
  const std::size_t p = num.aligned_prefix().size();
  auto digit = [&](std::size_t n) { return num.digit_at(n + m); };
  return from_digit_function(target, digit, p + 1 > m ? p + 1 - m : 1, num.aligned_cycle().size());
}

/// sigma = sigma_1 = sigma^1.
inline RepresentedNumber shift(const RepresentedNumber& num) { return iterate_shift(num, 1); }

/// sigma_m: deletes digit m and position m, keeping every other digit.
inline RepresentedNumber generalized_shift(const RepresentedNumber& num, std::size_t m,
                                           ShiftVariant variant = ShiftVariant::digit_signed) {
  if (m == 0) throw domain_error("generalized shift index must be >= 1");
  require_admissible(num.system(), variant);
  NumeralSystem target = remove_index(num.system(), m);
  if (variant == ShiftVariant::position_signed) target = target.with_signs(num.system().signs());
  const std::size_t p = num.aligned_prefix().size();
  auto digit = [&](std::size_t n) { return n < m ? num.digit_at(n) : num.digit_at(n + 1); };
  return from_digit_function(target, digit, std::max(m, p), num.aligned_cycle().size());
}

/// sigma_m restricted to the rank-m cylinder Delta_{c_1...c_m}, as the affine
/// map x -> slope * x + intercept given by the system's closed form:
///   unsigned Cantor         q_m x - (q_m - 1) G - c_m / (q_1...q_{m-1})
///   alternating, position   -q_m x + (1 + q_m) G + (-1)^m c_m / (q_1...q_{m-1})
///   signed Cantor, digit    q_m x + (1 - q_m) G - (-1)^rho_m c_m / (q_1...q_{m-1})
///   Q-tilde                 x / q_{c_m,m} - (-1)^rho_m a_{c_m,m} prod_{j<m} q_{c_j,j} / q_{c_m,m}
///                             + (1 - 1 / q_{c_m,m}) G
/// where G is the signed value of c_1...c_{m-1} (0 when m = 1).
inline AffineMap closed_form_map(const NumeralSystem& s, std::span<const Digit> prefix, ShiftVariant variant) {
  if (prefix.empty()) throw domain_error("closed form needs m >= 1 prefix digits");
  require_admissible(s, variant);
  const std::size_t m = prefix.size();
  for (std::size_t n = 1; n <= m; ++n)
    if (!s.in_alphabet(n, prefix[n - 1]))
      throw digit_range_error("digit " + std::to_string(prefix[n - 1]) + " outside alphabet at position " +
                              std::to_string(n));
  const Digit cm = prefix[m - 1];

  if (s.is_cantor()) {
    const Rational q(s.base_at(m));
    Rational head_product(1); // q_1 ... q_{m-1}
    for (std::size_t k = 1; k < m; ++k) head_product *= Rational(s.base_at(k));
    const Rational lead = Rational(static_cast<long>(cm)) / head_product;

    if (variant == ShiftVariant::position_signed) {
      Rational g, qk(1);
      for (std::size_t k = 1; k < m; ++k) {
        qk *= Rational(s.base_at(k));
        Rational t = Rational(static_cast<long>(prefix[k - 1])) / qk;
        g += (k % 2 == 1) ? -t : t;
      }
      return {-q, (Rational(1) + q) * g + ((m % 2 == 1) ? -lead : lead)};
    }

    Rational g, qk(1);
    for (std::size_t k = 1; k < m; ++k) {
      qk *= Rational(s.base_at(k));
      Rational t = Rational(static_cast<long>(prefix[k - 1])) / qk;
      g += s.sign_factor(k) < 0 ? -t : t;
    }
    if (s.is_positive()) return {q, -(q - Rational(1)) * g - lead};
    return {q, (Rational(1) - q) * g - (s.sign_factor(m) < 0 ? -lead : lead)};
  }

  // Q-tilde
  Rational g, w(1);
  for (std::size_t k = 1; k < m; ++k) {
    const QTildeColumn& col = s.column_at(k);
    Rational t = col.cumulative(prefix[k - 1]) * w;
    g += s.sign_factor(k) < 0 ? -t : t;
    w *= col.entry(prefix[k - 1]);
  }
  const QTildeColumn& col = s.column_at(m);
  const Rational qm = col.entry(cm);
  Rational am = col.cumulative(cm) * w / qm;
  if (s.sign_factor(m) < 0) am = -am;
  return {qm.reciprocal(), -am + (Rational(1) - qm.reciprocal()) * g};
}

/// Value of sigma_m(x) computed from x and the first m digits only.
inline Rational closed_form_value(const RepresentedNumber& num, std::size_t m,
                                  ShiftVariant variant = ShiftVariant::digit_signed) {
  if (m == 0) throw domain_error("generalized shift index must be >= 1");
  std::vector<Digit> prefix;
  for (std::size_t n = 1; n <= m; ++n) prefix.push_back(num.digit_at(n));
  return closed_form_map(num.system(), prefix, variant).apply(eval(num));
}

/// G = signed value of digits 1..m-1; zeta = the tail from m+1 re-weighted
/// as if position m were absent.
struct PrefixSums {
  Rational G;
  Rational zeta;
};

inline PrefixSums prefix_sums(const RepresentedNumber& num, std::size_t m) {
  if (m == 0) throw domain_error("prefix sums need m >= 1");
  std::vector<Digit> head;
  for (std::size_t n = 1; n < m; ++n) head.push_back(num.digit_at(n));
  PrefixValue pv = prefix_value(num.system(), head);
  return {pv.value, pv.weight * eval(iterate_shift(num, m))};
}

/// Applies generalized shifts at the given (strictly increasing, original)
/// indices, largest first, so each removal deletes the intended labeled digit.
inline RepresentedNumber compose_removals(const RepresentedNumber& num, std::span<const std::size_t> indices,
                                          ShiftVariant variant = ShiftVariant::digit_signed) {
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1]) throw domain_error("removal indices must be strictly increasing");
  RepresentedNumber out = num;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) out = generalized_shift(out, *it, variant);
  return out;
}

struct IdentityCheck {
  std::string name;
  bool holds;
  std::string detail;
};

struct TheoremReport {
  std::vector<IdentityCheck> checks;

  const IdentityCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct TheoremParams {
  std::size_t m = 1;                  // for sigma o sigma_2^m and the residual identity
  std::vector<std::size_t> indices;   // arbitrary strictly increasing removals
  std::size_t run_start = 1;          // consecutive run k_1 .. k_1 + run_length - 1
  std::size_t run_length = 1;
};

namespace theorem {
inline constexpr const char* shift_of_repeated_sigma2 = "sigma o sigma_2^m = sigma^(m+1)";
inline constexpr const char* removals = "sigma^(k_n-n) o removals = sigma^(k_n)";
inline constexpr const char* run_minus_one = "consecutive run: sigma^(k_1-1) o removals = sigma^(k_n)";
inline constexpr const char* run_plus_one = "consecutive run: sigma^(k_1+1) o removals = sigma^(k_n)";
inline constexpr const char* residual = "x - sigma_m(x) = i_m/(q_1..q_m) + sigma^m(x)(1-q_m)/(q_1..q_m)";
} // namespace theorem

/// Checks the shift identities for a number over an unsigned Cantor system.
/// Identities between operators are compared both as represented numbers
/// (system and digits) and as values.
inline TheoremReport verify_theorem_identities(const RepresentedNumber& num, const TheoremParams& params) {
  const NumeralSystem& s = num.system();
  if (!s.is_cantor() || !s.is_positive())
    throw domain_error("theorem identities are stated for unsigned Cantor systems");
  TheoremReport report;
  auto same = [](const RepresentedNumber& a, const RepresentedNumber& b) { return a == b && eval(a) == eval(b); };
  auto describe = [](const RepresentedNumber& a, const RepresentedNumber& b) {
    return "lhs " + eval(a).str() + ", rhs " + eval(b).str();
  };

  {
    RepresentedNumber lhs = num;
    for (std::size_t i = 0; i < params.m; ++i) lhs = generalized_shift(lhs, 2);
    lhs = shift(lhs);
    RepresentedNumber rhs = iterate_shift(num, params.m + 1);
    report.checks.push_back({theorem::shift_of_repeated_sigma2, same(lhs, rhs), describe(lhs, rhs)});
  }
  if (!params.indices.empty()) {
    const std::size_t n = params.indices.size(), kn = params.indices.back();
    RepresentedNumber lhs = iterate_shift(compose_removals(num, params.indices), kn - n);
    RepresentedNumber rhs = iterate_shift(num, kn);
    report.checks.push_back({theorem::removals, same(lhs, rhs), describe(lhs, rhs)});
  }
  if (params.run_length >= 1 && params.run_start >= 1) {
    std::vector<std::size_t> run(params.run_length);
    for (std::size_t i = 0; i < run.size(); ++i) run[i] = params.run_start + i;
    const RepresentedNumber removed = compose_removals(num, run);
    const RepresentedNumber rhs = iterate_shift(num, run.back());
    const RepresentedNumber minus_one = iterate_shift(removed, params.run_start - 1);
    const RepresentedNumber plus_one = iterate_shift(removed, params.run_start + 1);
    report.checks.push_back({theorem::run_minus_one, same(minus_one, rhs), describe(minus_one, rhs)});
    report.checks.push_back({theorem::run_plus_one, same(plus_one, rhs), describe(plus_one, rhs)});
  }
  {
    const std::size_t m = params.m;
    Rational qprod(1);
    for (std::size_t k = 1; k <= m; ++k) qprod *= Rational(s.base_at(k));
    const Rational x = eval(num);
    const Rational lhs = x - eval(generalized_shift(num, m));
    const Rational rhs = Rational(static_cast<long>(num.digit_at(m))) / qprod +
                         eval(iterate_shift(num, m)) * (Rational(1) - Rational(s.base_at(m))) / qprod;
    report.checks.push_back({theorem::residual, lhs == rhs, "lhs " + lhs.str() + ", rhs " + rhs.str()});
  }
  return report;
}

} // namespace varalpha
