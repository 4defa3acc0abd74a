#pragma once

// Amalgams used across the test suites.

#include <map>
#include <random>
#include <vector>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/engine/case_studies.hpp"
#include "amalgsep/fingrp/catalog.hpp"
#include "support.hpp"

namespace testing_support {

  using namespace amalgsep;

  inline FiniteGroup named_cyclic(std::size_t n, std::string const& g) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(i == 0 ? "e" : i == 1 ? g : g + std::to_string(i));
    }
    return construct_group(cyclic_table(n), names);
  }

  // Z_n *_{Z_d} Z_n with a^(n/d) = b^(n/d); n = 4, d = 2 is the basic example.
  inline FiniteAmalgam cyclic_amalgam(std::size_t n, std::size_t d) {
    auto                 a = named_cyclic(n, "a");
    auto                 b = named_cyclic(n, "b");
    auto                 s = static_cast<Elem>(n / d);
    std::map<Elem, Elem> phi;
    for (Elem i = 0; i < n; i += s) {
      phi[i] = i;
    }
    return build_amalgam(a, b, subgroup_generated(a, {s}), subgroup_generated(b, {s}), phi);
  }

  inline FiniteAmalgam z4_amalgam() {
    return cyclic_amalgam(4, 2);
  }

  // S3 *_{Z2} S3 over the subgroup generated by a transposition.
  inline FiniteAmalgam s3_amalgam() {
    auto s3 = construct_group(s3_table());
    return build_amalgam(s3, s3, subgroup_generated(s3, {1}), subgroup_generated(s3, {1}),
                         {{0, 0}, {1, 1}});
  }

  template <typename F>
  std::vector<Tagged<typename F::Element>> random_letters(Amalgam<F> const& g,
                                                          std::mt19937_64&  rng,
                                                          std::size_t       max_len);

  template <>
  inline std::vector<Tagged<Elem>> random_letters(FiniteAmalgam const& g,
                                                  std::mt19937_64&     rng,
                                                  std::size_t          max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::vector<Tagged<Elem>>                  out;
    for (std::size_t i = len(rng); i > 0; --i) {
      Side s = rng() % 2 ? Side::A : Side::B;
      auto n = g.factor(s).group().order();
      out.push_back({s, static_cast<Elem>(rng() % n)});
    }
    return out;
  }

  template <>
  inline std::vector<Tagged<FreeWord>> random_letters(FreeAmalgam const& g,
                                                      std::mt19937_64&   rng,
                                                      std::size_t        max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::vector<Tagged<FreeWord>>              out;
    for (std::size_t i = len(rng); i > 0; --i) {
      Side s    = rng() % 2 ? Side::A : Side::B;
      auto rank = g.factor(s).rank();
      auto gen  = static_cast<std::uint32_t>(rng() % rank);
      int  e    = static_cast<int>(rng() % 7) - 3;
      out.push_back({s, FreeWord::generator(gen).power(e)});
    }
    return out;
  }

  template <typename F>
  typename Amalgam<F>::Element random_element(Amalgam<F> const& g,
                                              std::mt19937_64&  rng,
                                              std::size_t       max_len) {
    return g.normalize(random_letters(g, rng, max_len));
  }

  // All elements of a finite-factor amalgam with exactly n syllables.
  inline std::vector<FiniteAmalgam::Element> elements_of_length(FiniteAmalgam const& g,
                                                                std::size_t          n) {
    std::vector<FiniteAmalgam::Element> out;
    std::vector<std::vector<Elem>>      reps(2);
    for (Side s : {Side::A, Side::B}) {
      auto const& f = g.factor(s);
      for (Elem x = 1; x < f.group().order(); ++x) {
        if (f.transversal(x) == x) {
          reps[static_cast<int>(s)].push_back(x);
        }
      }
    }
    for (Elem core : g.a().subgroup().members()) {
      if (n == 0) {
        out.push_back(g.letter(Side::A, core));
        continue;
      }
      for (Side first : {Side::A, Side::B}) {
        std::vector<std::vector<Tagged<Elem>>> partial{{}};
        for (std::size_t i = 0; i < n; ++i) {
          Side                                   s = i % 2 == 0 ? first : other(first);
          std::vector<std::vector<Tagged<Elem>>> next;
          for (auto const& p : partial) {
            for (Elem r : reps[static_cast<int>(s)]) {
              auto q = p;
              q.push_back({s, r});
              next.push_back(std::move(q));
            }
          }
          partial = std::move(next);
        }
        for (auto const& syl : partial) {
          out.push_back(g.from_normal_form(core, syl));
        }
      }
    }
    return out;
  }

}  // namespace testing_support
