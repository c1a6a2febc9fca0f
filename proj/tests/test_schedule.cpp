#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilalg/errors.hpp"
#include "nilalg/schedule.hpp"
#include "nilalg/serialize.hpp"
#include "support.hpp"

using namespace nilalg;
using namespace testsupport;

namespace {

GeneralPoly P(const char* t) { return parse_poly(t); }

// Reference value of 2^i − a i − b ⌊log i⌋ − c by plain integer arithmetic.
BigInt naive_bound(std::uint64_t i, long a, long b, long c) {
  std::uint64_t lg = 0;
  while ((i >> (lg + 1)) != 0) ++lg;
  return pow2(i) - BigInt(a) * i - BigInt(b) * lg - c;
}

}  // namespace

TEST_CASE("index conditions: witness accepted, each clause mutation rejected") {
  const BigInt witness = pow2(46657);
  CHECK_FALSE(validate_real({{witness, P("x")}}).has_value());
  CHECK_FALSE(validate_real({}).has_value());

  auto small = validate_real({{BigInt(5), P("x")}});
  REQUIRE(small);
  CHECK(small->clause == "log-degree");
  CHECK(small->lhs.find("= 2") != std::string::npos);
  CHECK(small->rhs.find("46656") != std::string::npos);

  auto tiny = validate_real({{BigInt(4), P("x")}});
  REQUIRE(tiny);
  CHECK(tiny->clause == "i>=5");

  auto edge = validate_real({{pow2(46656), P("x")}});  // ⌊log i⌋ = 46656 is not > 6^6
  REQUIRE(edge);
  CHECK(edge->clause == "log-degree");

  auto degree = validate_real({{witness, P("xx")}});
  REQUIRE(degree);
  CHECK(degree->clause == "log-degree");

  auto gap = validate_real({{witness, P("x")}, {witness + 1, P("x")}});
  REQUIRE(gap);
  CHECK(gap->clause == "gap");
  CHECK(gap->index == 1);

  auto order = validate_real({{witness + 1, P("x")}, {witness, P("x")}});
  REQUIRE(order);
  CHECK(order->clause == "order");
}

TEST_CASE("real-mode schedules enforce the index conditions") {
  ScheduleEntry good{pow2(46657), P("x"), std::nullopt};
  Schedule s(Mode::real, {good});
  CHECK(s.conformant());
  CHECK(Schedule::default_real().conformant());
  CHECK_THROWS_AS(Schedule(Mode::real, {ScheduleEntry{BigInt(5), P("x"), std::nullopt}}), PreconditionError);
  CHECK_THROWS_AS(Schedule(Mode::real, {ScheduleEntry{pow2(46657), std::nullopt, std::nullopt}}), PreconditionError);
  CHECK_FALSE(toy_schedule(false).conformant());
  CHECK_THROWS_AS(Schedule(Mode::toy, {ScheduleEntry{BigInt(1), P("x"), std::nullopt}}), PreconditionError);
  CHECK_THROWS_AS(Schedule(Mode::toy, {ScheduleEntry{BigInt(3), P("x"), std::nullopt},
                                       ScheduleEntry{BigInt(2), P("x"), std::nullopt}}),
                  PreconditionError);
}

TEST_CASE("bound expressions compare exactly") {
  for (std::uint64_t i = 1; i <= 70; ++i)
    for (long a : {0L, 1L, 3L})
      for (long b : {0L, 1L})
        for (long c : {0L, 1L, 5L}) {
          BoundExpr e{BigInt(i), a, b, c};
          const BigInt ref = naive_bound(i, a, b, c);
          CHECK(e.value() == ref);
          for (const BigInt& n : std::vector<BigInt>{BigInt(ref - 1), ref, BigInt(ref + 1), BigInt(0), BigInt(1000)}) {
            const int expect = ref < n ? -1 : (ref > n ? 1 : 0);
            CHECK(compare(e, n) == expect);
          }
          BoundExpr f{BigInt(i), 0, 1, 1};
          const BigInt rf = naive_bound(i, 0, 1, 1);
          CHECK(compare(e, f) == (ref < rf ? -1 : (ref > rf ? 1 : 0)));
        }
  // Astronomical indices are never expanded.
  BoundExpr huge{pow2(46657), 1, 1, 0};
  CHECK_FALSE(huge.expandable());
  CHECK_THROWS_AS(huge.value(), BudgetExceeded);
  CHECK(compare(huge, BigInt(1000000)) == 1);
  CHECK(compare(huge, BoundExpr{pow2(46657), 0, 1, 1}) == -1);
  CHECK(compare(huge, BoundExpr{pow2(46657) + 1, 1, 1, 0}) == -1);
}

TEST_CASE("big index text") {
  CHECK(parse_index("12345678901234567890") == BigInt("12345678901234567890"));
  CHECK(parse_index("2^10") == 1024);
  CHECK(parse_index("2^10+3") == 1027);
  CHECK(parse_index("2^10-3") == 1021);
  CHECK(parse_index("2^46657") == pow2(46657));
  CHECK_THROWS_AS(parse_index("2^x"), ParseError);
  CHECK_THROWS_AS(parse_index("12a"), ParseError);
  CHECK_THROWS_AS(parse_index(""), ParseError);
}

TEST_CASE("binary decomposition") {
  CHECK(binary_decomposition(3) == std::vector<std::size_t>{0, 1});
  CHECK(binary_decomposition(8) == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(binary_decomposition(0), PreconditionError);
  for (std::uint64_t j = 1; j <= 5000; ++j) {
    std::uint64_t back = 0;
    auto bits = binary_decomposition(j);
    for (std::size_t k = 0; k < bits.size(); ++k) {
      back += std::uint64_t{1} << bits[k];
      if (k) CHECK(bits[k - 1] < bits[k]);
    }
    CHECK(back == j);
  }
  // The top bit of 2^i − ⌊log i⌋ − 1 is i − 1.
  for (std::uint64_t i = 4; i <= 30; ++i) {
    std::uint64_t lg = 0;
    while ((i >> (lg + 1)) != 0) ++lg;
    CHECK(binary_decomposition((std::uint64_t{1} << i) - lg - 1).back() == i - 1);
  }
}

TEST_CASE("interval membership and partition") {
  auto toy = toy_schedule(false);
  auto s1 = toy.in_S(1), s2 = toy.in_S(2);
  REQUIRE(s1);
  REQUIRE(s2);
  CHECK(s1->i == 2);
  CHECK(s1->j == 0);
  CHECK(s2->j == 1);
  CHECK_FALSE(toy.in_S(3));
  CHECK_FALSE(toy.in_S(0));
  CHECK(toy.T_of(0).has_value());
  CHECK(toy.T_of(3).has_value());
  CHECK_FALSE(toy.T_of(3)->m.has_value());
  CHECK(toy.T_of(0)->m == BigInt(2));

  auto real = Schedule::default_real();
  CHECK_FALSE(real.in_S(1000000));
  Schedule witness(Mode::real, {ScheduleEntry{pow2(46657), P("x"), std::nullopt}});
  CHECK_FALSE(witness.in_S(1000000));
  CHECK(witness.T_of(1000000)->m == pow2(46657));

  // Exactly one of in_S / T_of classifies each point; partitions sum back.
  for (const Schedule* s : {&toy, &real, &witness}) {
    for (std::uint64_t n = 0; n < 2000; ++n) CHECK(s->in_S(n).has_value() != s->T_of(n).has_value());
    for (std::uint64_t n = 1; n <= (std::uint64_t{1} << 20); n += 1 + n / 64) {
      auto pt = s->partition_terms(n);
      std::uint64_t total = 0;
      for (const auto& t : pt.s_terms) total += t.second;
      for (const auto& t : pt.t_terms) total += t.second;
      CHECK(total == n);
    }
  }
  auto one = real.partition_terms(1);
  CHECK(one.s_terms.empty());
  CHECK(one.t_terms.size() == 1);
  auto six = toy.partition_terms(6);
  // Both bit positions 1 and 2 lie in S_2 = [1, 2].
  REQUIRE(six.s_terms.size() == 1);
  CHECK(six.s_terms[0] == std::pair<BigInt, std::uint64_t>{2, 6});
  CHECK(six.t_terms.empty());
  auto nine = toy.partition_terms(9);  // positions 0 and 3 lie in the two T regions
  CHECK(nine.s_terms.empty());
  CHECK(nine.t_terms.size() == 2);
  CHECK(toy.partition_terms(1024).t_terms.size() + toy.partition_terms(1024).s_terms.size() == 1);
}

TEST_CASE("weights and F levels") {
  CHECK(Schedule::r(2) == 8);   // 2^(4 − 1)
  CHECK(Schedule::w(2) == 32);
  CHECK(Schedule::r(5) == pow2(30));
  CHECK_THROWS_AS(Schedule::r(pow2(46657)), BudgetExceeded);
  auto toy = toy_schedule(true);
  REQUIRE(toy.entry_for_F_level(3));
  CHECK(toy.entry_for_F_level(3)->i == 2);
  CHECK(toy.entry_for_F_level(2) == nullptr);
}

TEST_CASE("schedule JSON round trip") {
  auto toy = toy_schedule(true);
  auto j = schedule_to_json(toy);
  CHECK(j["entries"][0]["F"]["basis"].size() == 13);
  auto back = schedule_from_json(j, 2);
  CHECK(schedule_to_json(back) == j);
  Schedule witness(Mode::real, {ScheduleEntry{pow2(46657), P("x"), std::nullopt}});
  auto jw = schedule_to_json(witness);
  CHECK(jw["entries"][0]["i"] == "2^46657");
  CHECK(schedule_from_json(jw, 2).entries()[0].i == pow2(46657));
  auto decimal = schedule_from_json({{"mode", "toy"}, {"entries", {{{"i", "2"}, {"F", "null"}}}}}, 2);
  CHECK_FALSE(decimal.entries()[0].F_basis.has_value());
  CHECK_THROWS_AS(schedule_from_json({{"mode", "imaginary"}}, 2), ParseError);
  CHECK_THROWS_AS(schedule_from_json({{"entries", nlohmann::json::array()}}, 2), ParseError);
}
