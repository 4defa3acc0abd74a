#pragma once

#include <map>
#include <vector>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/compat/quotient.hpp"
#include "amalgsep/fingrp/homs.hpp"

namespace amalgsep {

  // A homomorphism of a finite-factor amalgam into a finite group: a pair of
  // factor homomorphisms agreeing on the amalgamated subgroup.
  struct AmalgamHom {
    FiniteGroup       target;
    std::vector<Elem> a_images;  // indexed by elements of A
    std::vector<Elem> b_images;  // indexed by elements of B

    Elem operator()(FiniteAmalgam::Element const& x) const {
      Elem r = a_images.at(x.core());
      for (auto const& s : x.syllables()) {
        r = target.mul(r, (s.side == Side::A ? a_images : b_images).at(s.value));
      }
      return r;
    }

    Subgroup image() const {
      std::vector<Elem> gens(a_images);
      gens.insert(gens.end(), b_images.begin(), b_images.end());
      return subgroup_generated(target, gens);
    }
  };

  // Reusable search over many targets: the factor generating sets are
  // computed once.
  class QuotientHomSearch {
   public:
    explicit QuotientHomSearch(FiniteAmalgam g)
        : _g(std::move(g)),
          _gen_a(generating_set(_g.a().group())),
          _gen_b(generating_set(_g.b().group())) {}

    FiniteAmalgam const& amalgam() const noexcept {
      return _g;
    }

    // Visits every homomorphism into `target`, A-side generator images in
    // lexicographic order, then B-side; visit returns false to stop.
    template <typename Visit>
    void for_each(FiniteGroup const& target, Visit&& visit,
                  std::uint64_t work = kDefaultHomWork) const {
      auto const&       h = _g.a().subgroup().members();
      std::vector<Elem> k;
      for (Elem x : h) {
        k.push_back(_g.phi(x));
      }
      std::map<std::vector<Elem>, std::vector<std::vector<Elem>>> b_by_restriction;
      for_each_homomorphism(
          _g.b().group(), _gen_b, target,
          [&](std::vector<Elem> const& beta) {
            std::vector<Elem> key;
            for (Elem y : k) {
              key.push_back(beta[y]);
            }
            b_by_restriction[key].push_back(beta);
            return true;
          },
          work);
      AmalgamHom hom{target, {}, {}};
      for_each_homomorphism(
          _g.a().group(), _gen_a, target,
          [&](std::vector<Elem> const& alpha) {
            std::vector<Elem> key;
            for (Elem x : h) {
              key.push_back(alpha[x]);
            }
            auto it = b_by_restriction.find(key);
            if (it == b_by_restriction.end()) {
              return true;
            }
            hom.a_images = alpha;
            for (auto const& beta : it->second) {
              hom.b_images = beta;
              if (!visit(static_cast<AmalgamHom const&>(hom))) {
                return false;
              }
            }
            return true;
          },
          work);
    }

   private:
    FiniteAmalgam _g;
    GeneratingSet _gen_a, _gen_b;
  };

  inline std::vector<AmalgamHom> enumerate_quotient_homs(FiniteAmalgam const& g,
                                                         FiniteGroup const&   target,
                                                         std::uint64_t work = kDefaultHomWork) {
    std::vector<AmalgamHom> out;
    QuotientHomSearch(g).for_each(
        target,
        [&](AmalgamHom const& hom) {
          out.push_back(hom);
          return true;
        },
        work);
    return out;
  }

  template <typename F>
  std::vector<AmalgamHom> enumerate_quotient_homs(QuotientAmalgam<F> const& qa,
                                                  FiniteGroup const&        target,
                                                  std::uint64_t work = kDefaultHomWork) {
    return enumerate_quotient_homs(qa.quotient, target, work);
  }

}  // namespace amalgsep
