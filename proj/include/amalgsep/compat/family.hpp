#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amalgsep/compat/compat.hpp"
#include "amalgsep/compat/quotient.hpp"
#include "amalgsep/core/parallel.hpp"
#include "amalgsep/fingrp/catalog.hpp"
#include "amalgsep/freegrp/images.hpp"

namespace amalgsep {

  // The factor element x equals, if x lies in the factor on side s.
  template <typename F>
  std::optional<typename F::Element> factor_component(Amalgam<F> const&                   g,
                                                      typename Amalgam<F>::Element const& x,
                                                      Side                                s) {
    if (x.length() == 0) {
      return g.core_to(s, x.core());
    }
    if (x.length() == 1 && x.syllables().front().side == s) {
      return g.as_factor_element(x).value;
    }
    return std::nullopt;
  }

  // Distinct kernels of maps from the free factors onto catalog groups up to
  // an order bound, with the compatibility relation between the two sides.
  // A kernel is represented by the first map (smallest target, then
  // lexicographic images) that realises it.
  class FreePairCatalog {
   public:
    struct Kernel {
      GenImages                  map;
      std::string                target_label;
      std::size_t                index = 0;
      std::vector<std::uint32_t> restricted_key;
    };

    FreePairCatalog(FreeAmalgam const& g,
                    std::size_t        max_order,
                    CompatMode         mode,
                    std::uint64_t      p   = 2,
                    std::uint64_t      cap = kDefaultImageCap)
        : _g(g), _mode(mode), _p(p), _max_order(max_order) {
      if (mode == CompatMode::P && !is_prime(p)) {
        throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
      }
      auto const targets = catalog_entries(max_order, mode == CompatMode::P, p);
      scan(targets, g.a(), cap, _a);
      scan(targets, g.b(), cap, _b);
      for (std::size_t j = 0; j < _b.size(); ++j) {
        _b_by_key[_b[j].restricted_key].push_back(j);
      }
    }

    std::vector<Kernel> const& a_side() const noexcept {
      return _a;
    }
    std::vector<Kernel> const& b_side() const noexcept {
      return _b;
    }
    std::vector<Kernel> const& side(Side s) const noexcept {
      return s == Side::A ? _a : _b;
    }
    std::size_t max_order() const noexcept {
      return _max_order;
    }
    CompatMode mode() const noexcept {
      return _mode;
    }
    std::uint64_t prime() const noexcept {
      return _p;
    }

    // Targets skipped because their generator assignments exceed the cap.
    std::vector<std::string> const& skipped() const noexcept {
      return _skipped;
    }
    bool truncated() const noexcept {
      return !_skipped.empty();
    }

    // B-side kernels forming a plain-compatible pair with A-side kernel i.
    std::vector<std::size_t> const& partners_of_a(std::size_t i) const {
      static std::vector<std::size_t> const none;
      auto it = _b_by_key.find(_a[i].restricted_key);
      return it == _b_by_key.end() ? none : it->second;
    }

    std::vector<std::size_t> partners_of_b(std::size_t j) const {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < _a.size(); ++i) {
        if (_a[i].restricted_key == _b[j].restricted_key) {
          out.push_back(i);
        }
      }
      return out;
    }

    // Whether (i, j) belongs to the family of the catalog's mode.
    bool in_family(std::size_t i, std::size_t j) const {
      if (_a[i].restricted_key != _b[j].restricted_key) {
        return false;
      }
      return _mode == CompatMode::Plain || is_p_compatible(_g, _a[i].map, _b[j].map, _p);
    }

    // All family pairs, smallest quotients first: by the larger index, then
    // the index product, then (i, j).
    std::vector<std::pair<std::size_t, std::size_t>> pairs(std::size_t limit = 1'000'000) const {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      for (std::size_t i = 0; i < _a.size() && out.size() < limit; ++i) {
        for (std::size_t j : partners_of_a(i)) {
          if (in_family(i, j)) {
            out.emplace_back(i, j);
          }
        }
      }
      std::stable_sort(out.begin(), out.end(), [&](auto const& x, auto const& y) {
        auto kx = key(x), ky = key(y);
        return kx < ky;
      });
      return out;
    }

   private:
    std::pair<std::size_t, std::size_t> key(std::pair<std::size_t, std::size_t> const& ij) const {
      auto ia = _a[ij.first].index, ib = _b[ij.second].index;
      return {std::max(ia, ib), ia * ib};
    }

    void scan(std::vector<CatalogEntry> const& targets,
              FreeFactor const&                factor,
              std::uint64_t                    cap,
              std::vector<Kernel>&             out) {
      struct Found {
        std::vector<std::pair<std::vector<std::uint32_t>, GenImages>> maps;
        bool                                                          skipped = false;
      };
      auto const rank    = factor.rank();
      auto const per_target = parallel_map<Found>(targets.size(), [&](std::size_t t) {
        Found f;
        auto  group = catalog_group(targets[t]);
        if (count_gen_images(rank, group) > cap) {
          f.skipped = true;
          return f;
        }
        std::map<std::vector<std::uint32_t>, bool> seen;
        for_each_gen_images(
            rank, group,
            [&](GenImages const& u) {
              auto k = marked_key(u);
              if (seen.emplace(k, true).second) {
                f.maps.emplace_back(std::move(k), u);
              }
              return true;
            },
            cap);
        return f;
      });
      std::map<std::vector<std::uint32_t>, bool> seen;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (per_target[t].skipped) {
          _skipped.push_back(targets[t].label);
          continue;
        }
        for (auto const& [k, u] : per_target[t].maps) {
          if (!seen.emplace(k, true).second) {
            continue;
          }
          Kernel kernel{u, targets[t].label, u.index(), {}};
          kernel.restricted_key = marked_key(restrict_to(u, factor.subgroup_generators()));
          out.push_back(std::move(kernel));
        }
      }
    }

    FreeAmalgam                                                  _g;
    CompatMode                                                   _mode;
    std::uint64_t                                                _p;
    std::size_t                                                  _max_order;
    std::vector<Kernel>                                          _a, _b;
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> _b_by_key;
    std::vector<std::string>                                     _skipped;
  };

  enum class FamilyOutcome { Separable, NotSeparated, Inconclusive };

  inline std::string_view to_string(FamilyOutcome o) noexcept {
    switch (o) {
      case FamilyOutcome::Separable: return "separable";
      case FamilyOutcome::NotSeparated: return "not_separated";
      case FamilyOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
  }

  // Whether <g> is separable in its factor X by the X-sides of the
  // (p-)compatible pairs. Witnesses pair each excluded element inspected with
  // the index of a family member M such that x is not in <g>M.
  template <typename F>
  struct FamilyVerdict {
    using E = typename F::Element;

    FamilyOutcome                            outcome = FamilyOutcome::Separable;
    Side                                     side    = Side::A;
    CompatMode                               mode    = CompatMode::Plain;
    std::uint64_t                            prime   = 0;
    E                                        subject{};
    std::vector<FactorKernel<F>>             members;
    std::vector<std::pair<E, std::size_t>>   witnesses;
    std::optional<E>                         certificate;
    std::size_t                              elements_checked = 0;
    std::size_t                              bound            = 0;  // 0: exact
    std::vector<std::string>                 skipped;
  };

  inline FamilyVerdict<FiniteFactor> family_separability(FiniteAmalgam const& g,
                                                         Side                 side,
                                                         Elem                 subject,
                                                         CompatMode           mode,
                                                         std::uint64_t        p = 2) {
    auto const& x = g.factor(side).group();
    if (subject >= x.order()) {
      throw Error(ErrorKind::WrongSide, "element is not in factor " + std::string(1, side_char(side)));
    }
    FamilyVerdict<FiniteFactor> v;
    v.side    = side;
    v.mode    = mode;
    v.prime   = mode == CompatMode::P ? p : 0;
    v.subject = subject;

    std::set<std::vector<Elem>> seen;
    for (auto const& pair : enumerate_compatible_pairs(g, mode, p)) {
      auto const& m = side == Side::A ? pair.r : pair.s;
      if (seen.insert(m.members()).second) {
        v.members.push_back(m);
      }
    }
    auto const c = cyclic_subgroup(x, subject);
    std::vector<Subgroup> products;
    for (auto const& m : v.members) {
      products.push_back(Subgroup::trusted(x, product_set(c, m)));
    }
    for (Elem e = 0; e < x.order(); ++e) {
      if (c.contains(e)) {
        continue;
      }
      ++v.elements_checked;
      std::optional<std::size_t> hit;
      for (std::size_t i = 0; i < products.size() && !hit; ++i) {
        if (!products[i].contains(e)) {
          hit = i;
        }
      }
      if (!hit) {
        v.outcome     = FamilyOutcome::NotSeparated;
        v.certificate = e;
        return v;
      }
      v.witnesses.emplace_back(e, *hit);
    }
    return v;
  }

  // Free factor X: candidate excluded elements are the reduced words up to
  // `word_length` outside <g>; family members are the kernels in the catalog
  // having a partner on the other side.
  inline FamilyVerdict<FreeFactor> family_separability(FreePairCatalog const& cat,
                                                       Side                   side,
                                                       FreeWord const&        subject,
                                                       std::size_t            word_length = 3) {
    FamilyVerdict<FreeFactor> v;
    v.side    = side;
    v.mode    = cat.mode();
    v.prime   = cat.mode() == CompatMode::P ? cat.prime() : 0;
    v.subject = subject;
    v.bound   = cat.max_order();
    v.skipped = cat.skipped();

    auto const& kernels = cat.side(side);
    std::uint32_t rank = kernels.empty() ? subject.support() : kernels.front().map.rank;
    if (subject.support() > rank) {
      throw Error(ErrorKind::WrongSide,
                  "word uses generators outside factor " + std::string(1, side_char(side)));
    }
    for (std::size_t i = 0; i < kernels.size(); ++i) {
      bool member = false;
      if (side == Side::A) {
        for (std::size_t j : cat.partners_of_a(i)) {
          if (cat.in_family(i, j)) {
            member = true;
            break;
          }
        }
      } else {
        for (std::size_t j : cat.partners_of_b(i)) {
          if (cat.in_family(j, i)) {
            member = true;
            break;
          }
        }
      }
      if (member) {
        v.members.push_back(kernels[i].map);
      }
    }

    for (std::size_t len = 1; len <= word_length; ++len) {
      for (auto const& w : words_of_length(rank, len)) {
        if (free_power_exponent(w, subject)) {
          continue;
        }
        ++v.elements_checked;
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < v.members.size() && !hit; ++i) {
          auto const& m = v.members[i];
          if (!cyclic_subgroup(m.target, m(subject)).contains(m(w))) {
            hit = i;
          }
        }
        if (!hit) {
          v.outcome     = cat.truncated() ? FamilyOutcome::Inconclusive : FamilyOutcome::NotSeparated;
          v.certificate = w;
          return v;
        }
        v.witnesses.emplace_back(w, *hit);
      }
    }
    return v;
  }

}  // namespace amalgsep
