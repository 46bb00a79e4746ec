#include "doctest.h"

#include "groupctl/error.hpp"
#include "groupctl/torus.hpp"
#include "support/corpus.hpp"
#include "support/naive.hpp"

using namespace groupctl;

namespace {

TorusSeqSubgroup example(std::size_t n) {
  TorusSeqSubgroup h{default_y(n), {}};
  for (std::size_t k = 0; k < n; ++k) h.gens.push_back({build_fk(h.y, k), "f_" + std::to_string(k)});
  h.gens.push_back({constant_sequence(qz(1, 2)), "c_1/2"});
  return h;
}

// Independent membership: closure of the y's inside Z/N.
bool naive_in_span(const QZ& x, const std::vector<QZ>& y) {
  std::int64_t n = x.den().get_si();
  for (auto& v : y) n = std::lcm(n, v.den().get_si());
  std::vector<testing::Tuple> gens;
  for (auto& v : y) gens.push_back({v.num().get_si() * (n / v.den().get_si())});
  return testing::closure(gens, {n}).count({x.num().get_si() * (n / x.den().get_si())}) > 0;
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("reduction and order") {
  CHECK(qz(5, 3) == qz(2, 3));
  CHECK(qz(5, 3).to_string() == "2/3");
  CHECK(qz(-1, 3).to_string() == "2/3");
  CHECK(qz(2, -4).to_string() == "1/2");
  CHECK(qz_order(qz(1, 3)) == 3);
  CHECK(qz_order(qz(0, 1)) == 1);
  CHECK(qz(0, 7).to_string() == "0/1");
  CHECK_THROWS_AS(qz(1, 0), ZeroDenominator);
  CHECK(QZ::parse("6/4") == qz(1, 2));
  CHECK_THROWS_AS(QZ::parse("x/2"), ParseError);
  CHECK(qz(1, 3) + qz(1, 5) == qz(8, 15));
}

TEST_CASE("span membership") {
  CHECK(in_span(QZ{}, {}));
  CHECK(in_span(qz(1, 15), {qz(1, 3), qz(1, 5)}));
  CHECK(qz(1, 3).scaled(2) + qz(1, 5).scaled(2) == qz(1, 15));
  CHECK_FALSE(in_span(qz(1, 2), {qz(1, 3), qz(1, 5), qz(1, 7)}));
  testing::Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<QZ> y;
    for (int i = testing::pick(rng, 0, 3); i > 0; --i) y.push_back(qz(testing::pick(rng, 0, 11), testing::pick(rng, 1, 12)));
    QZ x = qz(testing::pick(rng, 0, 11), testing::pick(rng, 1, 12));
    CHECK(in_span(x, y) == naive_in_span(x, y));
  }
}

TEST_CASE("f_k") {
  auto y = default_y(2);
  CHECK(build_fk({qz(1, 3)}, 0) == QZSequence{{qz(1, 3)}, QZ{}});
  CHECK(build_fk(y, 1) == QZSequence{{qz(1, 5), qz(1, 5)}, QZ{}});
  CHECK_THROWS_AS(build_fk(y, 2), PreconditionFailed);
  auto y6 = default_y(6);
  for (std::size_t k = 0; k < 6; ++k) {
    QZSequence f = build_fk(y6, k);
    CHECK(f.order() == qz_order(y6[k]));
    for (std::size_t i = 0; i < 10; ++i) CHECK(f.at(i).scaled(qz_order(y6[k])).is_zero());
  }
}

TEST_CASE("closure difference condition") {
  auto y = default_y(6);
  CHECK(closure_diff_check(constant_sequence(qz(1, 2)), y, 6).ok);
  for (std::size_t k = 0; k < 6; ++k) CHECK(closure_diff_check(build_fk(y, k), y, 6).ok);
  DiffCheck bad = closure_diff_check(QZSequence{{qz(1, 2)}, QZ{}}, y, 6);
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_failure == std::optional<std::size_t>(0));
  // Every element of <f_0..f_5> passes.
  TorusSeqSubgroup d{y, {}};
  for (std::size_t k = 0; k < 3; ++k) d.gens.push_back({build_fk(y, k), "f"});
  d.y.resize(3);
  ProductEmbedding e = to_product_subgroup(d);
  BruteForceOracle o(e.h);
  CHECK(o.size() == 105);
  for (const auto& s : o.elements()) {
    QZSequence q;
    for (std::size_t i = 0; i < s.prefix_length(); ++i) q.prefix.push_back(qz(s.at(i).coords()[0], 105));
    q.tail = qz(s.period()[0].coords()[0], 105);
    CHECK(closure_diff_check(q, y, 3).ok);
  }
}

TEST_CASE("approximating a constant") {
  auto y = default_y(4);
  auto a = approximate_constant(qz(1, 2), default_y(10), {0}, Rational(1, 10));
  REQUIRE(a);
  CHECK(a->k == 2);
  CHECK(a->m == 3);
  CHECK(a->distance == Rational(1, 14));
  CHECK_FALSE(approximate_constant(qz(1, 2), y, {0}, Rational(1, 1000)));
  auto far = approximate_constant(qz(1, 2), default_y(100), {0}, Rational(1, 1000));
  REQUIRE(far);
  CHECK(default_y(100)[far->k] == qz(1, 503));
  CHECK(far->distance < Rational(1, 1000));
  auto zero = approximate_constant(QZ{}, y, {1}, Rational(1, 10));
  REQUIRE(zero);
  CHECK(zero->m == 0);
  CHECK(zero->k == 1);
  // Shrinking epsilon never moves to an earlier y_k.
  std::size_t last = 0;
  for (int e = 2; e < 400; e *= 2) {
    auto r = approximate_constant(qz(1, 2), default_y(100), {0}, Rational(1, e));
    REQUIRE(r);
    CHECK(r->k >= last);
    CHECK(circle_distance(default_y(100)[r->k].scaled(r->m), qz(1, 2)) < Rational(1, e));
    last = r->k;
  }
}

TEST_CASE("witness of non-controllability") {
  for (std::size_t n = 1; n <= 6; ++n) {
    TorusSeqSubgroup h = example(n);
    Verdict v = noncontrollability_witness(h, qz(1, 2));
    CHECK_FALSE(v.holds);
    CHECK(verify_torus_witness(h, v));
    CHECK_FALSE(in_span(qz(1, 2), h.y));
  }
  // Soundness against enumeration: no finite-support element reads 1/2 at 0.
  for (std::size_t n = 1; n <= 4; ++n) {
    ProductEmbedding e = to_product_subgroup(example(n));
    BruteForceOracle o(e.h);
    const GroupElement half = e.embed(qz(1, 2));
    for (const auto& s : o.elements()) {
      if (s.has_finite_support()) CHECK_FALSE(s.at(0) == half);
      // parity: nonzero elements of the span of the f_k have odd order
      if (s.has_finite_support() && !s.is_zero()) CHECK(s.order() % 2 == 1);
    }
  }
  TorusSeqSubgroup h = example(2);
  h.gens.push_back({constant_sequence(qz(1, 3)), "c_1/3"});
  CHECK_THROWS_AS(noncontrollability_witness(h, qz(1, 3)), PreconditionFailed);
  CHECK_THROWS_AS(noncontrollability_witness(example(2), QZ{}), PreconditionFailed);
  CHECK_THROWS_AS(noncontrollability_witness(example(2), qz(1, 4)), PreconditionFailed);
}

}
