#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "nilalg/errors.hpp"
#include "nilalg/field.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/monomial.hpp"
#include "support.hpp"

using namespace nilalg;
using namespace testsupport;

namespace {

const std::uint32_t kPrimes[] = {2, 3, 5};

// Ambient degree small enough for explicit element sets.
std::size_t oracle_degree(std::uint32_t p) { return p == 2 ? 4 : 2; }

std::size_t dim_of(const Subspace& s) { return static_cast<std::size_t>(s.dim()); }

}  // namespace

TEST_CASE("field inverses and reduction") {
  for (auto p : kPrimes) {
    Field F(p);
    for (Scalar a = 1; a < p; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.reduce(-1) == p - 1);
    CHECK(F.add(F.neg(2 % p), 2 % p) == 0);
  }
  CHECK_THROWS(Field(4));
  CHECK_THROWS(Field(1));
}

TEST_CASE("monomial codes, text and ordering") {
  auto w = Monomial::parse("xyyx");
  CHECK(w.code() == 0b0110);
  CHECK(w.str() == "xyyx");
  CHECK(Monomial::from_code(4, 6) == w);
  CHECK(w.slice(1, 2).str() == "yy");
  CHECK((Monomial::parse("xy") * Monomial::parse("yx")) == w);
  CHECK(Monomial::parse("xx") < Monomial::parse("xy"));
  CHECK(Monomial::parse("").degree() == 0);
  CHECK_THROWS_AS(Monomial::parse("xz"), ParseError);
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.below(12);
    const auto c1 = rng.below(std::uint64_t{1} << d), c2 = rng.below(std::uint64_t{1} << d);
    const auto a = Monomial::from_code(d, c1), b = Monomial::from_code(d, c2);
    CHECK(Monomial::parse(a.str()) == a);
    CHECK((a < b) == (c1 < c2));
    CHECK((a < b) == (a.str() < b.str()));
  }
}

TEST_CASE("factors of words match substring enumeration") {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 3 + rng.below(6);
    auto words = random_words(d, rng, 0.1);
    oracle::WordSet ws;
    for (const auto& w : words) ws.insert(w.str());
    const std::size_t n = rng.below(d + 1);
    oracle::WordSet got;
    for (const auto& f : factors_of_length(words, n)) got.insert(f.str());
    CHECK(got == oracle::factors(ws, n));
  }
}

TEST_CASE("hex round trip") {
  Rng rng(13);
  for (auto p : kPrimes)
    for (int t = 0; t < 50; ++t) {
      const std::size_t d = rng.below(9);
      auto v = random_vector(d, p, rng);
      CHECK(DenseVector::from_hex(v.to_hex(), v.length(), p) == v);
    }
  CHECK(DenseVector::unit(3, 2, 0).to_hex() == "80");
  CHECK_THROWS_AS(DenseVector::from_hex("8", 8, 2), ParseError);
  CHECK_THROWS_AS(DenseVector::from_hex("0g", 8, 2), ParseError);
  CHECK_THROWS_AS(DenseVector::from_hex("01", 2, 2), ParseError);  // padding bit set
  CHECK_THROWS_AS(DenseVector::from_hex("03", 1, 3), ParseError);  // coordinate not reduced
}

TEST_CASE("sum and intersection agree with explicit element sets") {
  Rng rng(21);
  for (auto p : kPrimes) {
    const std::size_t d = oracle_degree(p);
    const std::size_t len = std::size_t{1} << d;
    for (int t = 0; t < 40; ++t) {
      auto ra = random_rows(d, p, rng, 4), rb = random_rows(d, p, rng, 4);
      auto A = Subspace::from_rows(d, p, ra), B = Subspace::from_rows(d, p, rb);
      auto oa = oracle::span_of(to_vecs(ra), len, p), ob = oracle::span_of(to_vecs(rb), len, p);
      CHECK(to_span(A) == oa);
      CHECK(to_span(sum(A, B)) == oracle::span_sum(oa, ob, len, p));
      CHECK(to_span(intersect(A, B)) == oracle::span_intersection(oa, ob));
      CHECK(dim_of(A) == oracle::span_dim(oa, p));
      CHECK(contains_space(A, B) == std::includes(oa.begin(), oa.end(), ob.begin(), ob.end()));
      const auto v = random_vector(d, p, rng);
      CHECK(contains(A, v) == (oa.count(to_vec(v)) == 1));
    }
  }
}

TEST_CASE("dimension formula and canonical form") {
  Rng rng(22);
  for (auto p : kPrimes) {
    const std::size_t d = p == 2 ? 7 : 4;
    for (int t = 0; t < 30; ++t) {
      auto A = random_subspace(d, p, rng, 30), B = random_subspace(d, p, rng, 30);
      CHECK(sum(A, B).dim() + intersect(A, B).dim() == A.dim() + B.dim());
      CHECK(A.dim() + A.codim() == A.ambient_dim());
      // Equal spans have identical stored forms whatever the generators.
      auto rows = A.basis();
      std::reverse(rows.begin(), rows.end());
      for (std::size_t k = 0; k + 1 < rows.size(); ++k) rows[k].add_scaled(rows[k + 1], 1);
      auto A2 = Subspace::from_rows(d, p, rows);
      CHECK(A2.repr() == A.repr());
      CHECK(A2.rows() == A.rows());
      CHECK(same_space(A, A2));
      CHECK(contains_space(sum(A, B), A));
      CHECK(contains_space(A, intersect(A, B)));
    }
  }
}

TEST_CASE("complement within an outer space") {
  Rng rng(23);
  for (auto p : kPrimes) {
    const std::size_t d = p == 2 ? 6 : 3;
    for (int t = 0; t < 30; ++t) {
      auto outer = random_subspace(d, p, rng, 20);
      auto inner = intersect(outer, random_subspace(d, p, rng, 20));
      auto C = complement_within(inner, outer);
      CHECK(C.dim() + inner.dim() == outer.dim());
      CHECK(intersect(C, inner).dim() == 0);
      CHECK(same_space(sum(C, inner), outer));
    }
    auto a = Subspace::from_rows(2, p, {DenseVector::unit(2, p, 0)});
    auto b = Subspace::from_rows(2, p, {DenseVector::unit(2, p, 1)});
    CHECK_THROWS_AS(complement_within(a, b), PreconditionError);
  }
}

TEST_CASE("annihilator and constraint solving") {
  Rng rng(24);
  for (auto p : kPrimes) {
    const std::size_t d = p == 2 ? 6 : 3;
    for (int t = 0; t < 30; ++t) {
      auto A = random_subspace(d, p, rng, 20);
      auto ann = A.annihilator();
      CHECK(ann.size() + dim_of(A) == (std::size_t{1} << d));
      for (const auto& b : A.basis())
        for (const auto& f : ann) CHECK(b.dot(f) == 0);
      CHECK(same_space(Subspace::from_functionals(d, p, ann), A));
      CHECK(same_space(solve_constraints(d, p, ann), A));
    }
  }
  // Kernel of explicit functionals against brute force.
  for (auto p : kPrimes) {
    const std::size_t d = oracle_degree(p), len = std::size_t{1} << d;
    for (int t = 0; t < 10; ++t) {
      auto fs = random_rows(d, p, rng, 3);
      auto K = Subspace::from_functionals(d, p, fs);
      auto all = oracle::span_of(to_vecs(Subspace::whole(d, p).to_dense().basis()), len, p);
      oracle::Span kernel;
      for (const auto& v : all) {
        bool ok = true;
        for (const auto& f : fs) {
          std::uint64_t s = 0;
          for (std::size_t i = 0; i < len; ++i) s += std::uint64_t{v[i]} * f.get(i);
          ok = ok && s % p == 0;
        }
        if (ok) kernel.insert(v);
      }
      CHECK(to_span(K) == kernel);
    }
  }
}

TEST_CASE("monomial representations agree with dense ones") {
  Rng rng(25);
  for (auto p : kPrimes) {
    const std::size_t d = p == 2 ? 6 : 3;
    for (int t = 0; t < 30; ++t) {
      auto A = rng.coin() ? Subspace::span_words(d, p, random_words(d, rng))
                          : Subspace::complement_words(d, p, random_words(d, rng));
      auto B = rng.coin() ? Subspace::span_words(d, p, random_words(d, rng))
                          : Subspace::complement_words(d, p, random_words(d, rng));
      CHECK(A.is_monomial());
      auto Ad = A.to_dense(), Bd = B.to_dense();
      CHECK(A.dim() == Ad.dim());
      auto s = sum(A, B), i = intersect(A, B);
      CHECK(s.is_monomial());
      CHECK(i.is_monomial());
      CHECK(same_space(s.to_dense(), sum(Ad, Bd)));
      CHECK(same_space(i.to_dense(), intersect(Ad, Bd)));
      CHECK(contains_space(A, B) == contains_space(Ad, Bd));
      auto back = Ad.to_monomial();
      REQUIRE(back.has_value());
      CHECK(same_space(*back, A));
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << d); ++c) {
        auto w = Monomial::from_code(d, c);
        CHECK(A.contains_word(w) == Ad.contains_word(w));
        CHECK(A.coordinate_null(w) == Ad.coordinate_null(w));
      }
    }
  }
  auto mixed = Subspace::from_rows(2, 2, {DenseVector::unit(2, 2, 0)});
  auto v = DenseVector::unit(2, 2, 0);
  v.set(3, 1);
  CHECK_FALSE(Subspace::from_rows(2, 2, {v}).to_monomial().has_value());
  CHECK(mixed.to_monomial().has_value());
  CHECK(Subspace::zero(3).dim() == 0);
  CHECK(Subspace::whole(3).dim() == 8);
}

TEST_CASE("operand mismatches and budgets raise") {
  CHECK_THROWS_AS(sum(Subspace::zero(2), Subspace::zero(3)), DegreeMismatch);
  CHECK_THROWS_AS(sum(Subspace::zero(2, 2), Subspace::zero(2, 3)), PreconditionError);
  CHECK_THROWS_AS(Subspace::whole(20).to_dense(), BudgetExceeded);
  CHECK_THROWS_AS(Subspace::span_words(3, 2, {Monomial::parse("xy")}), DegreeMismatch);
}

TEST_CASE("tensor product matches word concatenation") {
  Rng rng(26);
  for (int t = 0; t < 30; ++t) {
    auto a = random_vector(2, 3, rng), b = random_vector(3, 3, rng);
    auto k = kron(a, b);
    for (std::uint64_t i = 0; i < 4; ++i)
      for (std::uint64_t j = 0; j < 8; ++j) {
        auto w = Monomial::from_code(2, i) * Monomial::from_code(3, j);
        CHECK(k.get(w.code()) == (a.get(i) * b.get(j)) % 3);
      }
  }
}
