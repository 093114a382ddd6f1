#pragma once

#include "doctest.h"
#include "expcurve/arith/ratfunc.hpp"

namespace doctest {
template <>
struct StringMaker<expcurve::Poly> {
  static String convert(const expcurve::Poly& p) { return expcurve::to_string(p).c_str(); }
};
template <>
struct StringMaker<expcurve::RationalFunction> {
  static String convert(const expcurve::RationalFunction& f) { return expcurve::to_string(f).c_str(); }
};
template <>
struct StringMaker<expcurve::Rational> {
  static String convert(const expcurve::Rational& q) { return q.get_str().c_str(); }
};
}  // namespace doctest
