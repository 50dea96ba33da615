#pragma once

#include <vector>

#include "varalpha/numbers.hpp"
#include "varalpha/systems.hpp"

namespace fixtures {

using namespace varalpha;

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline NumeralSystem dec() { return NumeralSystem::cantor(EventuallyPeriodicSeq<Base>::constant(10), SignPattern::none()); }
inline NumeralSystem neg() { return NumeralSystem::cantor(EventuallyPeriodicSeq<Base>::constant(10), SignPattern::odd()); }
inline NumeralSystem fact() {
  return NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({2, 3, 4}, {4}), SignPattern::none());
}
inline NumeralSystem alt() { return NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({2, 3}, {3}), SignPattern::odd()); }
inline QTildeColumn quarter_column() { return QTildeColumn({R(1, 4), R(3, 4)}); }
inline NumeralSystem qt(SignPattern signs = SignPattern::none()) {
  return NumeralSystem::qtilde(EventuallyPeriodicSeq<QTildeColumn>::constant(quarter_column()), std::move(signs));
}

inline RepresentedNumber zeros(const NumeralSystem& s, std::vector<Digit> digits) {
  return {s, DigitStream::zeros(std::move(digits))};
}
inline RepresentedNumber maxed(const NumeralSystem& s, std::vector<Digit> digits) {
  return {s, DigitStream::max_digits(std::move(digits))};
}
inline RepresentedNumber cyc(const NumeralSystem& s, std::vector<Digit> prefix, std::vector<Digit> cycle) {
  return {s, DigitStream::cycle(std::move(prefix), std::move(cycle))};
}

} // namespace fixtures
