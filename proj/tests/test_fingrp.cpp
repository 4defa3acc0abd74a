#include <catch_amalgamated.hpp>

#include <set>

#include "amalgsep/fingrp/catalog.hpp"
#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/isolation.hpp"
#include "amalgsep/fingrp/subgroups.hpp"
#include "support.hpp"

using namespace amalgsep;
using namespace testing_support;

namespace {

  ErrorKind kind_of(auto&& fn) {
    try {
      fn();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidInput;
  }

  std::vector<Elem> members(std::initializer_list<Elem> xs) {
    return xs;
  }

}  // namespace

TEST_CASE("construct_group validates tables", "[fingrp]") {
  auto z4 = construct_group(cyclic_table(4));
  CHECK(z4.order() == 4);
  CHECK(z4.inv(1) == 3);
  CHECK(z4.element_order(2) == 2);
  CHECK(z4.associativity_check() == AssociativityCheck::Exhaustive);

  auto trivial = construct_group(Table{{0}});
  CHECK(trivial.order() == 1);

  auto s3 = construct_group(s3_table());
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.exponent() == 6);

  SECTION("identity not first") {
    Table t{{1, 0}, {0, 1}};
    CHECK(kind_of([&] { construct_group(t); }) == ErrorKind::NoIdentity);
  }
  SECTION("no inverse") {
    Table t{{0, 1}, {1, 1}};
    CHECK(kind_of([&] { construct_group(t); }) == ErrorKind::NotInvertible);
  }
  SECTION("non-associative loop") {
    // A Latin square with identity 0 that is not a group (order 5 loop).
    Table t{{0, 1, 2, 3, 4},
            {1, 0, 3, 4, 2},
            {2, 4, 0, 1, 3},
            {3, 2, 4, 0, 1},
            {4, 3, 1, 2, 0}};
    try {
      construct_group(t);
      FAIL("accepted a non-associative table");
    } catch (Error const& e) {
      CHECK(e.kind() == ErrorKind::NotAssociative);
      CHECK(std::string(e.what()).find(")*") != std::string::npos);
    }
  }
  SECTION("shape errors") {
    CHECK(kind_of([] { construct_group(Table{{0, 1}, {1}}); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { construct_group(Table{{0, 2}, {1, 0}}); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { construct_group(Table{}); }) == ErrorKind::InvalidInput);
  }
  SECTION("names") {
    auto g = construct_group(cyclic_table(2), {"e", "a"});
    CHECK(g.find("a") == Elem{1});
    CHECK(g.find("1") == Elem{1});
    CHECK_FALSE(g.find("b"));
  }
}

TEST_CASE("subgroup_generated", "[fingrp]") {
  auto z4 = construct_group(cyclic_table(4));
  CHECK(subgroup_generated(z4, {2}).members() == members({0, 2}));
  CHECK(subgroup_generated(z4, std::span<Elem const>{}).is_trivial());

  auto s3 = construct_group(s3_table());
  // elements 1 = (0 1), 4 = (0 1 2)
  CHECK(subgroup_generated(s3, {1, 4}).is_whole());
  CHECK(subgroup_generated(s3, {4}).order() == 3);

  CHECK(kind_of([&] { Subgroup::from_members(z4, {0, 1}); }) == ErrorKind::NotSubgroup);
}

TEST_CASE("enumerate_normal_subgroups matches class-union oracle", "[fingrp]") {
  auto z4    = construct_group(cyclic_table(4));
  auto z4_ns = enumerate_normal_subgroups(z4);
  REQUIRE(z4_ns.size() == 3);
  CHECK(z4_ns[1].members() == members({0, 2}));

  auto s3_ns = enumerate_normal_subgroups(construct_group(s3_table()));
  REQUIRE(s3_ns.size() == 3);
  CHECK(s3_ns[1].order() == 3);

  CHECK(enumerate_normal_subgroups(FiniteGroup{}).size() == 1);

  std::size_t checked = 0;
  for (auto const& g : small_corpus(32)) {
    if (classes(g).size() > 16) {
      continue;
    }
    std::set<std::vector<Elem>> got;
    auto                        ns = enumerate_normal_subgroups(g);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      got.insert(ns[i].members());
      if (i > 0) {
        CHECK(ns[i - 1] < ns[i]);
      }
    }
    REQUIRE(got.size() == ns.size());
    CHECK(got == normal_subgroups_by_classes(g));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("quotient_with_projection", "[fingrp]") {
  auto z4 = construct_group(cyclic_table(4));
  auto q  = quotient_with_projection(z4, subgroup_generated(z4, {2}));
  CHECK(q.group.order() == 2);
  CHECK(q.projection(3) == 1);

  auto whole = quotient_with_projection(z4, Subgroup::whole(z4));
  CHECK(whole.group.order() == 1);
  CHECK(whole.projection(3) == 0);

  auto s3 = construct_group(s3_table());
  auto a3 = subgroup_generated(s3, {4});
  auto qs = quotient_with_projection(s3, a3);
  CHECK(qs.group.order() == 2);
  CHECK(qs.projection(1) == 1);

  CHECK(kind_of([&] { quotient_with_projection(s3, subgroup_generated(s3, {1})); })
        == ErrorKind::NotNormal);

  // Every projection is a homomorphism, checked on all pairs.
  for (auto const& g : small_corpus(48)) {
    for (auto const& n : enumerate_normal_subgroups(g)) {
      auto qq = quotient_with_projection(g, n);
      REQUIRE_NOTHROW(Homomorphism::checked(g, qq.group, qq.projection.map()));
      CHECK(qq.group.order() == n.index());
      CHECK(qq.projection.kernel() == n);
    }
  }
}

TEST_CASE("find_p_chain", "[fingrp]") {
  auto z4    = construct_group(cyclic_table(4));
  auto chain = find_p_chain(z4, Subgroup::trivial(z4), 2);
  REQUIRE(chain);
  REQUIRE(chain->links.size() == 3);
  CHECK(chain->links[1].members() == members({0, 2}));
  CHECK(chain->valid());

  auto top = find_p_chain(z4, Subgroup::whole(z4), 3);
  REQUIRE(top);
  CHECK(top->length() == 0);

  auto s3 = construct_group(s3_table());
  CHECK_FALSE(find_p_chain(s3, Subgroup::trivial(s3), 2));
  CHECK(kind_of([&] { find_p_chain(s3, subgroup_generated(s3, {1}), 2); })
        == ErrorKind::NotNormal);

  // Cross-check against reachability through index-p steps of normal subgroups.
  for (auto const& g : small_corpus(32)) {
    auto ns = enumerate_normal_subgroups(g);
    for (std::uint64_t p : {2, 3}) {
      for (auto const& r : ns) {
        std::set<std::vector<Elem>> reach{r.members()};
        std::vector<Subgroup>       frontier{r};
        while (!frontier.empty()) {
          auto cur = frontier.back();
          frontier.pop_back();
          for (auto const& n : ns) {
            if (n.order() == cur.order() * p && cur.is_subgroup_of(n)
                && reach.insert(n.members()).second) {
              frontier.push_back(n);
            }
          }
        }
        bool expected = reach.count(Subgroup::whole(g).members()) > 0;
        auto found    = find_p_chain(g, r, p, &ns);
        CHECK(found.has_value() == expected);
        if (found) {
          CHECK(found->valid());
          CHECK(found->links.front() == r);
        }
      }
    }
  }
}

TEST_CASE("is_p_prime_isolated_cyclic_finite", "[fingrp]") {
  auto z6 = construct_group(cyclic_table(6));
  CHECK_FALSE(is_p_prime_isolated_cyclic_finite(z6, subgroup_generated(z6, {2}), 3));
  auto z4 = construct_group(cyclic_table(4));
  CHECK(is_p_prime_isolated_cyclic_finite(z4, subgroup_generated(z4, {2}), 2));
  CHECK(is_p_prime_isolated_cyclic_finite(z4, Subgroup::whole(z4), 5));

  auto s3 = construct_group(s3_table());
  CHECK(kind_of([&] { is_p_prime_isolated_cyclic_finite(s3, Subgroup::whole(s3), 2); })
        == ErrorKind::NotCyclic);

  // Direct double loop over (y, q) with every prime q up to the group order.
  for (auto const& g : small_corpus(48)) {
    for (Elem x = 0; x < g.order(); ++x) {
      auto f = cyclic_subgroup(g, x);
      if (f.members().front() != 0 || cyclic_generator(f) != x) {
        continue;
      }
      for (std::uint64_t p : {2, 3}) {
        bool expected = true;
        for (Elem y = 0; y < g.order() && expected; ++y) {
          for (std::uint64_t q = 2; q <= g.order(); ++q) {
            if (q == p || !is_prime(q)) {
              continue;
            }
            Elem yq = 0;
            for (std::uint64_t i = 0; i < q; ++i) {
              yq = g.mul(yq, y);
            }
            if (f.contains(yq) && !f.contains(y)) {
              expected = false;
              break;
            }
          }
        }
        CHECK(is_p_prime_isolated_cyclic_finite(g, f, p) == expected);
      }
    }
  }
}

TEST_CASE("separating_core", "[fingrp]") {
  auto z4 = construct_group(cyclic_table(4));
  auto y  = subgroup_generated(z4, {2});

  SECTION("g outside FY gives Y") {
    auto z8 = construct_group(cyclic_table(8));
    auto y8 = subgroup_generated(z8, {2});
    auto n  = separating_core(z8, y8, Subgroup::trivial(z8), 1, 2);
    CHECK(n == y8);
  }
  SECTION("g inside Y") {
    auto n = separating_core(z4, y, Subgroup::trivial(z4), 2, 2);
    CHECK(is_normal(n));
    CHECK_FALSE(n.contains(2));
    CHECK(is_p_power(n.index(), 2));
  }
  SECTION("F = X") {
    CHECK(kind_of([&] { separating_core(z4, y, Subgroup::whole(z4), 1, 2); })
          == ErrorKind::PreconditionViolated);
  }
  SECTION("Y of non-p-power index") {
    auto z6 = construct_group(cyclic_table(6));
    CHECK(kind_of([&] {
            separating_core(z6, subgroup_generated(z6, {2}), Subgroup::trivial(z6), 1, 2);
          })
          == ErrorKind::PreconditionViolated);
  }
  SECTION("F not isolated") {
    auto z6 = construct_group(cyclic_table(6));
    CHECK(kind_of([&] {
            separating_core(z6, Subgroup::whole(z6), subgroup_generated(z6, {2}), 1, 3);
          })
          == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("catalog", "[fingrp]") {
  auto const& all = catalog_entries();
  REQUIRE(!all.empty());
  CHECK(all.front().label == "Z1");
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i - 1].order <= all[i].order);
  }
  std::set<std::string> labels;
  for (auto const& e : catalog_entries(64)) {
    CHECK(labels.insert(e.label).second);
    auto g = catalog_group(e);
    CHECK(g.order() == e.order);
    if (e.order <= 32) {
      CHECK_NOTHROW(construct_group(g.table()));
    }
  }
  // The order-21 group with y^-1 x y = x^2 and the order-64 2-group used by
  // the witness engine are both present.
  CHECK(labels.count("Z7x|2Z3"));
  CHECK(labels.count("Z32x|17Z2"));
  CHECK(construct_group(metacyclic_group(7, 2, 3).table()).order() == 21);
  auto m = metacyclic_group(32, 17, 2);
  CHECK(m.conj(1, 32) == 17);

  auto s4 = symmetric_group(4);
  CHECK(s4.order() == 24);
  CHECK(enumerate_normal_subgroups(s4).size() == 4);
  auto d4 = dihedral_group(4);
  CHECK(enumerate_normal_subgroups(d4).size() == 6);
}
