#include <catch_amalgamated.hpp>

#include <random>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/amalgam/roots.hpp"
#include "fixtures.hpp"

using namespace amalgsep;
using namespace testing_support;

namespace {

  template <typename F>
  void check_normal_form_shape(Amalgam<F> const& g, typename Amalgam<F>::Element const& x) {
    CHECK(g.a().in_subgroup(x.core()));
    auto const& s = x.syllables();
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto const& f = g.factor(s[i].side);
      CHECK_FALSE(f.is_identity(s[i].value));
      CHECK(f.transversal(s[i].value) == s[i].value);
      if (i > 0) {
        CHECK(s[i].side != s[i - 1].side);
      }
    }
  }

  template <typename F>
  void run_properties(Amalgam<F> const& g, std::uint64_t seed, int cases) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < cases; ++t) {
      auto letters = random_letters(g, rng, 10);
      auto x       = g.normalize(letters);
      check_normal_form_shape(g, x);

      // Any bracketing of the letter sequence gives the same normal form.
      std::size_t cut = letters.empty() ? 0 : rng() % (letters.size() + 1);
      std::vector<typename Amalgam<F>::Letter> left(letters.begin(), letters.begin() + cut);
      std::vector<typename Amalgam<F>::Letter> right(letters.begin() + cut, letters.end());
      CHECK(g.multiply(g.normalize(left), g.normalize(right)) == x);
      auto y = random_element(g, rng, 6), z = random_element(g, rng, 6);
      CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
      CHECK(g.is_identity(g.multiply(x, g.invert(x))));
      CHECK(g.normalize(g.letters(x)) == x);

      // Cyclic reduction returns a conjugate with the conjugator.
      auto [cr, c] = g.cyclically_reduce(x);
      CHECK(g.multiply(g.multiply(c, cr), g.invert(c)) == x);
      CHECK(g.is_cyclically_reduced(cr));
      CHECK(cr.length() <= x.length());

      // Power-length law.
      if (cr.length() >= 2) {
        for (int k = -5; k <= 5; ++k) {
          if (k == 0) {
            continue;
          }
          auto pk = g.power(cr, k);
          CHECK(pk.length() == static_cast<std::size_t>(std::abs(k)) * cr.length());
          CHECK(g.is_cyclically_reduced(pk));
        }
      }

      // Powers are recognised as members with a valid exponent.
      for (int k = -3; k <= 3; ++k) {
        auto hk = g.power(x, k);
        auto m  = g.cyclic_member(hk, x);
        REQUIRE(m.member);
        CHECK(g.power(x, m.exponent) == hk);
      }
    }
  }

}  // namespace

TEST_CASE("build_amalgam", "[amalgam]") {
  auto g = z4_amalgam();
  CHECK(g.phi(2) == 2);
  CHECK(g.a().transversal(3) == 1);
  CHECK(g.a().subgroup_part(3) == 2);

  auto z4 = named_cyclic(4, "a");
  auto z2 = named_cyclic(2, "b");
  try {
    build_amalgam(z4, z4, subgroup_generated(z4, {2}), subgroup_generated(z4, {2}),
                  {{0, 0}, {2, 0}});
    FAIL("accepted a non-injective phi");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::NotIsomorphism);
  }
  CHECK_THROWS_AS(build_amalgam(z4, z2, subgroup_generated(z4, {2}), Subgroup::whole(z2),
                                {{0, 0}, {2, 0}}),
                  Error);

  // Full amalgamation along an isomorphism: every element lies in the core.
  auto full = build_amalgam(z4, z4, Subgroup::whole(z4), Subgroup::whole(z4),
                            {{0, 0}, {1, 3}, {2, 2}, {3, 1}});
  auto x    = full.normalize({{Side::A, 1}, {Side::B, 1}});
  CHECK(x.length() == 0);
  CHECK(full.is_identity(x));

  // Free amalgam bases must be free.
  CHECK_THROWS_AS(build_free_amalgam({"a"}, {FreeWord::generator(0), FreeWord::generator(0, 2)},
                                     {"b"}, {FreeWord::generator(0), FreeWord::generator(0)}),
                  Error);
}

TEST_CASE("normalize and arithmetic in Z4 *_Z2 Z4", "[amalgam]") {
  auto g  = z4_amalgam();
  auto a  = g.letter(Side::A, 1);
  auto b  = g.letter(Side::B, 1);
  auto a2 = g.normalize({{Side::A, 2}});
  CHECK(a2.length() == 0);
  CHECK(a2.core() == 2);
  CHECK(g.normalize({{Side::A, 1}, {Side::B, 1}}).length() == 2);
  CHECK(g.is_identity(g.normalize({{Side::A, 1}, {Side::A, 3}})));
  CHECK(g.is_identity(g.multiply(a, g.letter(Side::A, 3))));

  auto ab = g.multiply(a, b);
  CHECK(g.invert(ab) == g.normalize({{Side::B, 3}, {Side::A, 3}}));
  CHECK(g.power(ab, 3).length() == 6);
  CHECK(g.syllable_length(g.identity()) == 0);
  CHECK(g.syllable_length(a) == 1);
  CHECK(g.syllable_length(ab) == 2);
  // a^2 = b^2 is central.
  CHECK(g.multiply(a2, b) == g.multiply(b, a2));
  CHECK(g.letter(Side::B, 2) == a2);

  auto other = z4_amalgam();
  CHECK_THROWS_AS(g.multiply(a, other.letter(Side::A, 1)), Error);
}

TEST_CASE("cyclic reduction, order, membership", "[amalgam]") {
  auto g  = z4_amalgam();
  auto a  = g.letter(Side::A, 1);
  auto b  = g.letter(Side::B, 1);
  auto ab = g.multiply(a, b);
  auto ba = g.multiply(b, a);

  auto r1 = g.cyclically_reduce(ab);
  CHECK(r1.reduced == ab);
  CHECK(g.is_identity(r1.conjugator));

  auto bab = g.multiply(ba, b);
  auto r2  = g.cyclically_reduce(bab);
  CHECK(r2.reduced == g.letter(Side::A, 3));
  CHECK(r2.conjugator == b);
  CHECK(g.multiply(g.multiply(b, g.letter(Side::A, 3)), g.invert(b)) == bab);

  auto a2 = g.letter(Side::A, 2);
  CHECK(g.cyclically_reduce(a2).reduced == a2);

  CHECK_FALSE(g.element_order(ab));
  CHECK(g.element_order(bab) == 4u);
  CHECK(g.element_order(g.identity()) == 1u);

  auto m = g.cyclic_member(g.power(ab, 4), g.power(ab, 2));
  CHECK(m.member);
  CHECK(m.exponent == 2);

  // ba = b a and (ab)^-1 = b^3 a^3 = b a (a^2 = b^2 central of order 2).
  auto inv = g.cyclic_member(ba, ab);
  CHECK(inv.member);
  CHECK(inv.exponent == -1);

  CHECK_FALSE(g.cyclic_member(a2, ab).member);
  CHECK_FALSE(g.cyclic_member(a, ab).member);
  CHECK(g.cyclic_member(g.identity(), ab).member);
  CHECK(g.cyclic_member(a2, a).exponent == 2);
}

TEST_CASE("extract_root", "[amalgam]") {
  auto g  = z4_amalgam();
  auto a  = g.letter(Side::A, 1);
  auto b  = g.letter(Side::B, 1);
  auto ab = g.multiply(a, b);

  auto r3 = extract_root(g, g.power(ab, 3), 3);
  REQUIRE(r3);
  CHECK(g.power(*r3, 3) == g.power(ab, 3));
  CHECK_FALSE(extract_root(g, ab, 2));
  auto r2 = extract_root(g, g.power(ab, 2), 2);
  REQUIRE(r2);
  CHECK(g.power(*r2, 2) == g.power(ab, 2));

  // Roots in a factor.
  auto ra = extract_root(g, g.letter(Side::A, 2), 2);
  REQUIRE(ra);
  CHECK(g.power(*ra, 2) == g.letter(Side::A, 2));
  CHECK_FALSE(extract_root(g, a, 2));

  // Completeness against brute force over all elements of the right length.
  for (std::size_t n = 2; n <= 6; ++n) {
    for (auto const& x : elements_of_length(g, n)) {
      if (!g.is_cyclically_reduced(x)) {
        continue;
      }
      for (std::uint64_t q : {2, 3}) {
        bool brute = false;
        if (n % q == 0) {
          for (auto const& h : elements_of_length(g, n / q)) {
            brute = brute || g.power(h, static_cast<std::int64_t>(q)) == x;
          }
        }
        auto r = extract_root(g, x, q);
        CHECK(r.has_value() == brute);
        if (r) {
          CHECK(g.power(*r, static_cast<std::int64_t>(q)) == x);
        }
      }
    }
  }
}

TEST_CASE("roots of constructed powers", "[amalgam][property]") {
  std::mt19937_64 rng(77);
  for (auto const& g : {z4_amalgam(), s3_amalgam(), cyclic_amalgam(9, 3)}) {
    for (int t = 0; t < 200; ++t) {
      auto h = random_element(g, rng, 4);
      if (h.length() > 2) {
        continue;
      }
      for (std::uint64_t q : {2, 3}) {
        auto x = g.power(h, static_cast<std::int64_t>(q));
        auto r = extract_root(g, x, q);
        REQUIRE(r);
        CHECK(g.power(*r, static_cast<std::int64_t>(q)) == x);
      }
    }
  }
}

TEST_CASE("normal form properties", "[amalgam][property]") {
  run_properties(z4_amalgam(), 1, 300);
  run_properties(s3_amalgam(), 2, 300);
  run_properties(cyclic_amalgam(8, 4), 3, 200);
  run_properties(power_amalgam(2), 4, 300);
  run_properties(power_amalgam(3), 5, 200);
}

TEST_CASE("free amalgam <a, b; a^2 = b^2>", "[amalgam]") {
  auto g  = power_amalgam(2);
  auto a  = g.letter(Side::A, FreeWord::generator(0));
  auto b  = g.letter(Side::B, FreeWord::generator(0));
  auto a2 = g.letter(Side::A, FreeWord::generator(0, 1).power(2));
  CHECK(a2.length() == 0);
  CHECK(g.letter(Side::B, FreeWord::generator(0).power(2)) == a2);
  auto ab = g.multiply(a, b);
  CHECK_FALSE(g.element_order(ab));
  CHECK_FALSE(g.element_order(a));
  CHECK(g.cyclic_member(g.power(a, 6), a2).exponent == 3);
  CHECK_FALSE(g.cyclic_member(a, a2).member);
  CHECK(g.cyclic_member(g.power(a, -5), a).exponent == -5);
  // b a^2 b^-1 = a^2
  CHECK(g.conjugate(a2, b) == a2);
  // b a b^-1 reduces to a.
  auto bab = g.multiply(g.multiply(b, a), g.invert(b));
  CHECK(bab.length() == 3);
  CHECK(g.cyclically_reduce(bab).reduced.length() == 1);
  CHECK(g.to_string(g.multiply(ab, a2)) == "A:a^2 A:a B:b");
}
