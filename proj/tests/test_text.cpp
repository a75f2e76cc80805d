#include "text.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using copod::format_real17;
using copod::parse_real;

TEST_CASE("format_real17 round-trips doubles exactly") {
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int t = 0; t < 20000; ++t) {
    const double v = std::ldexp(mantissa(gen), exponent(gen));
    const auto parsed = parse_real(format_real17(v));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
  CHECK(*parse_real(format_real17(0.0)) == 0.0);
  CHECK(*parse_real(format_real17(-0.1)) == -0.1);
  CHECK(*parse_real(format_real17(std::numeric_limits<double>::max())) ==
        std::numeric_limits<double>::max());
}

TEST_CASE("parse_real is strict about trailing garbage") {
  CHECK(parse_real("1.5").value() == 1.5);
  CHECK(parse_real(" 2.5 ").value() == 2.5);
  CHECK(parse_real("+3").value() == 3.0);
  CHECK(parse_real("-1e3").value() == -1000.0);
  CHECK_FALSE(parse_real("").has_value());
  CHECK_FALSE(parse_real("abc").has_value());
  CHECK_FALSE(parse_real("1.5x").has_value());
  CHECK_FALSE(parse_real("1.5 2.5").has_value());
  // non-finite spellings parse; schema-level checks reject them downstream
  CHECK(std::isnan(parse_real("nan").value()));
  CHECK(std::isinf(parse_real("inf").value()));
}

TEST_CASE("split keeps empty fields") {
  const auto parts = copod::split("a,,b,", ',');
  REQUIRE(parts.size() == 4);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "");
  CHECK(parts[2] == "b");
  CHECK(parts[3] == "");
}

TEST_CASE("trim and to_lower") {
  CHECK(copod::trim("  x \t") == "x");
  CHECK(copod::trim("") == "");
  CHECK(copod::to_lower("@ATTRIBUTE Real") == "@attribute real");
}
