#include <doctest.h>

#include <algorithm>

#include "reconlab/instance.hpp"
#include "reconlab/rng.hpp"

using namespace reconlab;

TEST_CASE("make_instance derives every size") {
  const Instance inst = make_instance(2, {1, 2}, {2, 3});
  CHECK(inst.m_a == 2);
  CHECK(inst.m_b == 2);
  CHECK(inst.m_0 == 1);
  CHECK(inst.d_a == 1);
  CHECK(inst.d_b == 1);
  CHECK(inst.d() == 2);
  CHECK(inst.kappa == 2);
}

TEST_CASE("make_instance accepts empty sets") {
  const Instance inst = make_instance(2, {}, {});
  CHECK(inst.m_a == 0);
  CHECK(inst.m_b == 0);
  CHECK(inst.m_0 == 0);
  CHECK(inst.kappa == 0);
}

TEST_CASE("make_instance validation") {
  CHECK_THROWS_AS(make_instance(2, {1, 4}, {}), std::invalid_argument);  // 4 >= 2^2
  CHECK_THROWS_AS(make_instance(2, {1, 1}, {}), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(make_instance(0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance(65, {}, {}), std::invalid_argument);
}

TEST_CASE("make_instance sorts its input") {
  const Instance inst = make_instance(4, {9, 1, 4}, {});
  CHECK(inst.set_a == ElementSet{1, 4, 9});
}

TEST_CASE("n = 64 elements are accepted at the top of the range") {
  const Instance inst = make_instance(64, {0xffffffffffffffffULL}, {1});
  CHECK(inst.m_a == 1);
  CHECK(inst.d() == 2);
}

TEST_CASE("random_instance honors the requested sizes") {
  const Instance forced = random_instance(4, 3, 3, 3, 11);
  CHECK(forced.set_a == forced.set_b);
  CHECK(forced.d() == 0);

  const Instance saturated = random_instance(4, 16, 16, 16, 5);
  CHECK(saturated.m_a == 16);
  CHECK(saturated.set_a == saturated.set_b);

  const Instance mixed = random_instance(8, 10, 12, 4, 99);
  CHECK(mixed.d_a == 6);
  CHECK(mixed.d_b == 8);

  // Sparse-domain path.
  const Instance wide = random_instance(40, 10, 12, 4, 123);
  CHECK(wide.d_a == 6);
  CHECK(wide.d_b == 8);
}

TEST_CASE("random_instance is deterministic in the seed") {
  const Instance a = random_instance(10, 20, 30, 10, 77);
  const Instance b = random_instance(10, 20, 30, 10, 77);
  CHECK(a.set_a == b.set_a);
  CHECK(a.set_b == b.set_b);
  const Instance c = random_instance(10, 20, 30, 10, 78);
  CHECK((c.set_a != a.set_a || c.set_b != a.set_b));
}

TEST_CASE("random_instance rejects infeasible sizes") {
  CHECK_THROWS_AS(random_instance(2, 2, 2, 3, 0), std::invalid_argument);  // m_0 too big
  CHECK_THROWS_AS(random_instance(2, 4, 4, 0, 0), std::invalid_argument);  // 8 > 2^2
}

TEST_CASE("oracle values on the worked n = 2 instance") {
  const Instance inst = make_instance(2, {1, 2}, {2, 3});
  CHECK(std::get<Int>(oracle_value(inst, Func::Sum)) == 6);
  CHECK(std::get<Int>(oracle_value(inst, Func::Product)) == 6);
  CHECK(std::get<Int>(oracle_value(inst, Func::Max)) == 3);
  CHECK(std::get<Int>(oracle_value(inst, Func::Min)) == 1);
  CHECK(std::get<Int>(oracle_value(inst, Func::Disjointness)) == 0);
  CHECK(std::get<ElementSet>(oracle_value(inst, Func::Intersection)) == ElementSet{2});
  CHECK(std::get<ElementSet>(oracle_value(inst, Func::Union)) == ElementSet{1, 2, 3});
}

TEST_CASE("empty-union conventions") {
  const Instance inst = make_instance(2, {}, {});
  CHECK(std::get<Int>(oracle_value(inst, Func::Sum)) == 0);
  CHECK(std::get<Int>(oracle_value(inst, Func::Product)) == 1);
  CHECK_THROWS_AS(oracle_value(inst, Func::Max), std::domain_error);
  CHECK_THROWS_AS(oracle_value(inst, Func::Min), std::domain_error);
}

TEST_CASE("a zero element annihilates the product") {
  const Instance inst = make_instance(2, {0, 3}, {2});
  CHECK(std::get<Int>(oracle_value(inst, Func::Product)) == 0);
}

TEST_CASE("disjointness oracle") {
  CHECK(std::get<Int>(oracle_value(make_instance(2, {1}, {1}), Func::Disjointness)) == 0);
  CHECK(std::get<Int>(oracle_value(make_instance(2, {1, 2}, {3}), Func::Disjointness)) == 1);
}

TEST_CASE("oracles agree with a fold over the materialized union") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng.next_below(9));
    const std::size_t cap = std::min<std::size_t>(std::size_t(1) << n, 24);
    const std::size_t m0 = rng.next_below(cap / 2 + 1);
    const std::size_t ma = m0 + rng.next_below(cap / 2 + 1);
    const std::size_t mb = m0 + rng.next_below(cap / 2 + 1);
    const Instance inst = random_instance(n, ma, mb, m0, rng.next());

    const ElementSet u = union_of(inst);
    Int sum = 0, prod = 1;
    for (Element x : u) {
      sum += x;
      prod *= x;
    }
    CHECK(std::get<Int>(oracle_value(inst, Func::Sum)) == sum);
    CHECK(std::get<Int>(oracle_value(inst, Func::Product)) == prod);
    if (!u.empty()) {
      CHECK(std::get<Int>(oracle_value(inst, Func::Max)) == *std::max_element(u.begin(), u.end()));
      CHECK(std::get<Int>(oracle_value(inst, Func::Min)) == *std::min_element(u.begin(), u.end()));
    }
  }
}

TEST_CASE("party views carry the prior knowledge, not the other set") {
  const Instance inst = make_instance(8, {1, 2, 3}, {3, 4});
  const PartyView a = view_of(inst, Role::A, 5);
  const PartyView b = view_of(inst, Role::B, 5);
  CHECK(a.own_set == inst.set_a);
  CHECK(a.known_d_own == inst.d_a);
  CHECK(a.known_m0 == inst.m_0);
  CHECK(b.own_set == inst.set_b);
  CHECK(b.known_d_own == inst.d_b);
  CHECK(a.shared_seed == b.shared_seed);
  CHECK(a.private_seed != b.private_seed);
}
