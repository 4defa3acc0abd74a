#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "amalgsep/amalgam/isolation.hpp"
#include "amalgsep/compat/compat.hpp"
#include "amalgsep/compat/quotient.hpp"
#include "fixtures.hpp"

using namespace amalgsep;
using namespace testing_support;

namespace {

  // All (R, S) with R, S unions of conjugacy classes closed under
  // multiplication, checked directly on member sets.
  std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> compatible_oracle(
      FiniteAmalgam const& g) {
    std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> out;
    auto const& h = g.a().subgroup().members();
    auto const& k = g.b().subgroup().members();
    for (auto const& r : normal_subgroups_by_classes(g.a().group())) {
      for (auto const& s : normal_subgroups_by_classes(g.b().group())) {
        std::set<Elem> lhs, rhs;
        for (Elem x : h) {
          if (std::binary_search(r.begin(), r.end(), x)) {
            lhs.insert(g.phi(x));
          }
        }
        for (Elem y : k) {
          if (std::binary_search(s.begin(), s.end(), y)) {
            rhs.insert(y);
          }
        }
        if (lhs == rhs) {
          out.insert({r, s});
        }
      }
    }
    return out;
  }

  bool chain_certificate_ok(FiniteAmalgam const& g, CompatiblePair const& pair) {
    if (!pair.certificate) {
      return false;
    }
    auto const& c = *pair.certificate;
    if (!c.chain_a.valid() || !c.chain_b.valid()) {
      return false;
    }
    if (!(c.chain_a.links.front() == pair.r) || !(c.chain_b.links.front() == pair.s)) {
      return false;
    }
    std::set<std::vector<Elem>> ia, ib;
    for (auto const& n : c.chain_a.links) {
      std::vector<Elem> m;
      auto const hn = intersect(n, g.a().subgroup());
      for (Elem x : hn.members()) {
        m.push_back(g.phi(x));
      }
      std::sort(m.begin(), m.end());
      ia.insert(m);
    }
    for (auto const& n : c.chain_b.links) {
      ib.insert(intersect(n, g.b().subgroup()).members());
    }
    return ia == ib;
  }

  GenImages cyclic_map(std::size_t n, Elem image) {
    return GenImages{1, cyclic_group(n), {image}};
  }

}  // namespace

TEST_CASE("compatible pairs agree with the direct check", "[compat]") {
  auto g     = z4_amalgam();
  auto pairs = enumerate_compatible_pairs(g, CompatMode::Plain);
  CHECK(pairs.size() == 5);

  for (auto const& amalgam : {z4_amalgam(), s3_amalgam(), cyclic_amalgam(8, 4),
                              cyclic_amalgam(9, 3), cyclic_amalgam(12, 6)}) {
    std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> got;
    for (auto const& p : enumerate_compatible_pairs(amalgam, CompatMode::Plain)) {
      got.insert({p.r.members(), p.s.members()});
    }
    CHECK(got == compatible_oracle(amalgam));
  }
}

TEST_CASE("p-compatibility", "[compat]") {
  auto g   = z4_amalgam();
  auto one = Subgroup::trivial(g.a().group());
  auto cert = is_p_compatible(g, one, Subgroup::trivial(g.b().group()), 2);
  REQUIRE(cert);
  CHECK(cert->chain_a.length() == 2);
  CHECK_FALSE(is_p_compatible(g, one, Subgroup::trivial(g.b().group()), 3));
  CHECK(is_residually_p(g, 2));
  CHECK_FALSE(is_residually_p(g, 3));
  CHECK_THROWS_AS(is_p_compatible(g, one, Subgroup::trivial(g.b().group()), 4), Error);

  // S3 has no normal 2-chain down to 1, and 3-chains end at A3 which misses H.
  auto s = s3_amalgam();
  CHECK_FALSE(is_residually_p(s, 2));
  CHECK_FALSE(is_residually_p(s, 3));

  // R must be normal.
  auto s3 = s.a().group();
  CHECK_THROWS_AS(is_compatible(s, subgroup_generated(s3, {1}), Subgroup::whole(s3)), Error);
}

TEST_CASE("p-mode pairs are compatible and carry valid chains", "[compat][property]") {
  for (auto const& g : {z4_amalgam(), s3_amalgam(), cyclic_amalgam(8, 2), cyclic_amalgam(8, 4),
                        cyclic_amalgam(9, 3), cyclic_amalgam(12, 2)}) {
    std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> plain;
    for (auto const& p : enumerate_compatible_pairs(g, CompatMode::Plain)) {
      plain.insert({p.r.members(), p.s.members()});
    }
    for (std::uint64_t p : {2, 3}) {
      for (auto const& pair : enumerate_compatible_pairs(g, CompatMode::P, p)) {
        CHECK(plain.count({pair.r.members(), pair.s.members()}));
        CHECK(chain_certificate_ok(g, pair));
        CHECK(is_p_power(pair.r.index(), p));
      }
    }
  }
}

TEST_CASE("cyclic factors: p-compatible pairs are the compatible p-power ones",
          "[compat][property]") {
  // In a cyclic p-group the normal subgroups form a chain, so any compatible
  // pair of p-power index is p-compatible.
  for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{
           {4, 2}, {8, 2}, {8, 4}, {9, 3}, {16, 4}, {27, 9}}) {
    auto          g = cyclic_amalgam(n, d);
    std::uint64_t p = n % 2 == 0 ? 2 : 3;
    std::size_t   expected = 0;
    for (auto const& pair : enumerate_compatible_pairs(g, CompatMode::Plain)) {
      if (is_p_power(pair.r.index(), p) && is_p_power(pair.s.index(), p)) {
        ++expected;
      }
    }
    CHECK(enumerate_compatible_pairs(g, CompatMode::P, p).size() == expected);
  }
}

TEST_CASE("induced isomorphism and quotient amalgam", "[compat]") {
  auto g  = z4_amalgam();
  auto z2 = subgroup_generated(g.a().group(), {2});
  auto iso = induced_iso(g, z2, subgroup_generated(g.b().group(), {2}));
  CHECK(iso.map.size() == 1);
  CHECK_THROWS_AS(induced_iso(g, Subgroup::trivial(g.a().group()), Subgroup::whole(g.b().group())),
                  Error);

  auto q = build_quotient_amalgam(g, Subgroup::trivial(g.a().group()),
                                  Subgroup::trivial(g.b().group()));
  CHECK(q.quotient.a().group().order() == 4);

  std::mt19937_64 rng(11);
  for (auto const& amalgam : {z4_amalgam(), s3_amalgam(), cyclic_amalgam(12, 6)}) {
    for (auto const& pair : enumerate_compatible_pairs(amalgam, CompatMode::Plain)) {
      auto qa = build_quotient_amalgam(amalgam, pair.r, pair.s);
      for (int t = 0; t < 500 / 5; ++t) {
        auto x = random_element(amalgam, rng, 6);
        auto y = random_element(amalgam, rng, 6);
        CHECK(qa.project(amalgam, amalgam.multiply(x, y)) ==
              qa.quotient.multiply(qa.project(amalgam, x), qa.project(amalgam, y)));
      }
    }
  }
}

TEST_CASE("free factors: compatibility through factor maps", "[compat]") {
  auto g = power_amalgam(2);
  CHECK(is_compatible(g, cyclic_map(4, 1), cyclic_map(4, 1)));
  CHECK(is_compatible(g, cyclic_map(4, 1), cyclic_map(4, 3)));
  CHECK_FALSE(is_compatible(g, cyclic_map(4, 1), cyclic_map(8, 1)));
  CHECK(is_compatible(g, cyclic_map(2, 1), cyclic_map(6, 3)));
  CHECK_THROWS_AS(is_compatible(g, GenImages{2, cyclic_group(2), {0, 1}}, cyclic_map(2, 1)),
                  Error);

  CHECK(is_p_compatible(g, cyclic_map(4, 1), cyclic_map(4, 1), 2));
  CHECK_FALSE(is_p_compatible(g, cyclic_map(4, 1), cyclic_map(4, 1), 3));
  CHECK(is_p_compatible(g, cyclic_map(2, 1), cyclic_map(6, 3), 2));
  CHECK(is_compatible(g, cyclic_map(6, 1), cyclic_map(6, 1)));
  CHECK_FALSE(is_p_compatible(g, cyclic_map(6, 1), cyclic_map(6, 1), 2));

  auto q = build_quotient_amalgam(g, cyclic_map(8, 1), cyclic_map(8, 3));
  CHECK(q.quotient.a().subgroup().order() == 4);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    auto x = random_element(g, rng, 6);
    auto y = random_element(g, rng, 6);
    CHECK(q.project(g, g.multiply(x, y)) ==
          q.quotient.multiply(q.project(g, x), q.project(g, y)));
  }
  CHECK_THROWS_AS(build_quotient_amalgam(g, cyclic_map(4, 1), cyclic_map(8, 1)), Error);
}

TEST_CASE("isolation of cyclic subgroups", "[compat][amalgam]") {
  auto g  = z4_amalgam();
  auto ab = g.multiply(g.letter(Side::A, 1), g.letter(Side::B, 1));

  CHECK(is_p_prime_isolated(g, ab, 2));
  CHECK(is_p_prime_isolated(g, g.power(ab, 2), 2));
  CHECK(is_p_prime_isolated(g, g.power(ab, 4), 2));
  auto obstruction = isolation_obstruction(g, g.power(ab, 3), 2);
  REQUIRE(obstruction);
  CHECK(obstruction->prime == 3);
  CHECK(g.power(obstruction->root, 3) == g.power(ab, 3));

  auto c = isolated_closure(g, g.power(ab, 6), 2);
  CHECK(c.index == 3);
  CHECK(g.power(c.generator, 3) == g.power(ab, 6));
  CHECK(isolated_closure(g, ab, 2).index == 1);

  CHECK_THROWS_AS(is_p_prime_isolated(g, g.letter(Side::A, 1), 2), Error);
  CHECK_THROWS_AS(is_p_prime_isolated(g, ab, 3), Error);
  auto s = s3_amalgam();
  CHECK_THROWS_AS(is_p_prime_isolated(s, s.multiply(s.letter(Side::A, 2), s.letter(Side::B, 2)), 2),
                  Error);
}
