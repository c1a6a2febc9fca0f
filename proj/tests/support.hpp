#pragma once
// Fixed-seed generators and conversions shared by the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilalg/construction.hpp"
#include "nilalg/linear.hpp"
#include "nilalg/serialize.hpp"
#include "oracle.hpp"

namespace testsupport {

using namespace nilalg;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
};

inline DenseVector random_vector(std::size_t degree, std::uint32_t p, Rng& rng, double density = 0.5) {
  auto v = DenseVector::zeros(degree, p);
  for (std::uint64_t i = 0; i < v.length(); ++i)
    if (rng.coin(density)) v.set(i, static_cast<Scalar>(1 + rng.below(p - 1)));
  return v;
}

inline std::vector<DenseVector> random_rows(std::size_t degree, std::uint32_t p, Rng& rng, std::size_t max_rows) {
  std::vector<DenseVector> rows;
  const std::size_t k = rng.below(max_rows + 1);
  for (std::size_t r = 0; r < k; ++r) rows.push_back(random_vector(degree, p, rng, rng.coin() ? 0.5 : 0.2));
  return rows;
}

inline Subspace random_subspace(std::size_t degree, std::uint32_t p, Rng& rng, std::size_t max_rows) {
  return Subspace::from_rows(degree, p, random_rows(degree, p, rng, max_rows));
}

inline std::vector<Monomial> random_words(std::size_t degree, Rng& rng, double density = 0.4) {
  std::vector<Monomial> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << degree); ++c)
    if (rng.coin(density)) out.push_back(Monomial::from_code(degree, c));
  return out;
}

inline oracle::Vec to_vec(const DenseVector& v) {
  oracle::Vec out(v.length());
  for (std::uint64_t i = 0; i < v.length(); ++i) out[i] = v.get(i);
  return out;
}

inline std::vector<oracle::Vec> to_vecs(const std::vector<DenseVector>& rows) {
  std::vector<oracle::Vec> out;
  for (const auto& r : rows) out.push_back(to_vec(r));
  return out;
}

/// The explicit element set of a subspace (tiny degrees only).
inline oracle::Span to_span(const Subspace& s) {
  return oracle::span_of(to_vecs(s.basis()), std::size_t{1} << s.degree(), s.prime());
}

/// The words spanning a monomial subspace as strings.
inline oracle::WordSet word_set(const Subspace& s) {
  oracle::WordSet out;
  for (const auto& w : spanning_words(s)) out.insert(w.str());
  return out;
}

inline Subspace words_space(std::size_t degree, const oracle::WordSet& words, std::uint32_t p = 2) {
  std::vector<Monomial> ws;
  for (const auto& w : words) ws.push_back(Monomial::parse(w));
  return Subspace::span_words(degree, p, std::move(ws));
}

/// A 13-dimensional non-monomial F inside H(8): word k + word (255 − 3k), k = 0..12.
inline std::vector<std::string> toy_F_texts() {
  std::vector<std::string> out;
  for (std::uint64_t k = 0; k < 13; ++k)
    out.push_back(Monomial::from_code(8, k).str() + "+" + Monomial::from_code(8, 255 - 3 * k).str());
  return out;
}

/// Toy schedule Z = {2}; with an explicit F when requested.
inline Schedule toy_schedule(bool explicit_F, std::uint32_t p = 2) {
  nlohmann::json e = {{"i", 2}, {"f", "x"}};
  if (explicit_F) e["F"] = toy_F_texts();
  return schedule_from_json({{"mode", "toy"}, {"entries", nlohmann::json::array({e})}}, p);
}

inline Levels toy_levels(bool explicit_F, Engine engine, std::uint32_t p = 2) {
  auto sched = toy_schedule(explicit_F, p);
  auto oracle = FOracle::from_schedule(sched, p);
  return Levels(std::move(sched), std::move(oracle), p, engine);
}

}  // namespace testsupport
