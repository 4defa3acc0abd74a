#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/core/numbers.hpp"
#include "amalgsep/fingrp/subgroups.hpp"

namespace amalgsep {

  enum class CompatMode { Plain, P };

  // Chains R = R_0 < ... < R_m = A and S = S_0 < ... < S_n = B with index-p
  // steps, and the sets {R_i & H}, {S_j & K} that phi matches up.
  struct PCertificate {
    std::uint64_t                  prime = 2;
    NormalChain                    chain_a;
    NormalChain                    chain_b;
    std::vector<std::vector<Elem>> intersections_a;  // sorted, as member lists
    std::vector<std::vector<Elem>> intersections_b;
  };

  struct CompatiblePair {
    CompatMode                  mode = CompatMode::Plain;
    Subgroup                    r;
    Subgroup                    s;
    std::optional<PCertificate> certificate;
  };

  namespace detail {

    inline void require_pair_normal(FiniteAmalgam const& g, Subgroup const& r, Subgroup const& s) {
      if (!(r.parent() == g.a().group()) || !(s.parent() == g.b().group())) {
        throw Error(ErrorKind::InvalidInput, "R and S must be subgroups of A and B");
      }
      require_normal(r, "R");
      require_normal(s, "S");
    }

    inline std::vector<Elem> phi_image(FiniteAmalgam const& g, std::vector<Elem> const& h_part) {
      std::vector<Elem> out;
      for (Elem x : h_part) {
        out.push_back(g.phi(x));
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    using IntersectionSet = std::set<std::vector<Elem>>;

    // For each normal subgroup N above the base, every set {N_i & H} that some
    // index-p chain from N to the top realises, with one such chain.
    class ChainSets {
     public:
      ChainSets(FiniteGroup const& g, Subgroup const& h, std::uint64_t p)
          : _g(g), _h(h), _p(p), _normals(enumerate_normal_subgroups(g)) {}

      std::vector<Subgroup> const& normals() const noexcept {
        return _normals;
      }

      // Realisable sets from `start`, each with a chain start < ... < top.
      std::map<IntersectionSet, std::vector<Subgroup>> const& from(Subgroup const& start) {
        auto key = start.members();
        if (auto it = _memo.find(key); it != _memo.end()) {
          return it->second;
        }
        std::map<IntersectionSet, std::vector<Subgroup>> out;
        auto const here = intersect(start, _h).members();
        if (start.is_whole()) {
          out[{here}] = {start};
        } else {
          for (auto const& n : _normals) {
            if (n.order() != start.order() * _p || !start.is_subgroup_of(n)) {
              continue;
            }
            for (auto const& [set, chain] : from(n)) {
              auto s = set;
              s.insert(here);
              if (!out.count(s)) {
                std::vector<Subgroup> c{start};
                c.insert(c.end(), chain.begin(), chain.end());
                out.emplace(std::move(s), std::move(c));
              }
            }
          }
        }
        return _memo.emplace(std::move(key), std::move(out)).first->second;
      }

     private:
      FiniteGroup                                                              _g;
      Subgroup                                                                 _h;
      std::uint64_t                                                            _p;
      std::vector<Subgroup>                                                    _normals;
      std::map<std::vector<Elem>, std::map<IntersectionSet, std::vector<Subgroup>>> _memo;
    };

    inline std::optional<PCertificate> match_chain_sets(FiniteAmalgam const& g,
                                                        Subgroup const&      r,
                                                        Subgroup const&      s,
                                                        std::uint64_t        p,
                                                        ChainSets&           side_a,
                                                        ChainSets&           side_b) {
      if (!is_p_power(r.index(), p) || !is_p_power(s.index(), p)) {
        return std::nullopt;
      }
      auto const& sets_a = side_a.from(r);
      auto const& sets_b = side_b.from(s);
      std::map<IntersectionSet, IntersectionSet const*> wanted;
      for (auto const& [set, chain] : sets_a) {
        IntersectionSet mapped;
        for (auto const& m : set) {
          mapped.insert(phi_image(g, m));
        }
        if (auto it = sets_b.find(mapped); it != sets_b.end()) {
          PCertificate cert;
          cert.prime   = p;
          cert.chain_a = NormalChain{g.a().group(), chain, p};
          cert.chain_b = NormalChain{g.b().group(), it->second, p};
          cert.intersections_a.assign(set.begin(), set.end());
          cert.intersections_b.assign(mapped.begin(), mapped.end());
          return cert;
        }
      }
      return std::nullopt;
    }

  }  // namespace detail

  // (R & H) phi = S & K
  inline bool is_compatible(FiniteAmalgam const& g, Subgroup const& r, Subgroup const& s) {
    detail::require_pair_normal(g, r, s);
    auto lhs = detail::phi_image(g, intersect(r, g.a().subgroup()).members());
    return lhs == intersect(s, g.b().subgroup()).members();
  }

  inline std::optional<PCertificate> is_p_compatible(FiniteAmalgam const& g,
                                                     Subgroup const&      r,
                                                     Subgroup const&      s,
                                                     std::uint64_t        p) {
    detail::require_pair_normal(g, r, s);
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    }
    detail::ChainSets side_a(g.a().group(), g.a().subgroup(), p);
    detail::ChainSets side_b(g.b().group(), g.b().subgroup(), p);
    return detail::match_chain_sets(g, r, s, p, side_a, side_b);
  }

  // Residual p-finiteness of the amalgam itself: (1, 1) is p-compatible.
  inline std::optional<PCertificate> residually_p_certificate(FiniteAmalgam const& g,
                                                              std::uint64_t        p) {
    return is_p_compatible(g, Subgroup::trivial(g.a().group()), Subgroup::trivial(g.b().group()),
                           p);
  }

  // All compatible pairs over normal subgroups of the factors, ordered by
  // (R, S) canonically. In p-mode each pair carries its certificate.
  inline std::vector<CompatiblePair> enumerate_compatible_pairs(FiniteAmalgam const& g,
                                                                CompatMode           mode,
                                                                std::uint64_t        p = 2) {
    auto const&                 ga = g.a().group();
    auto const&                 gb = g.b().group();
    std::vector<CompatiblePair> out;
    if (mode == CompatMode::Plain) {
      auto na = enumerate_normal_subgroups(ga);
      auto nb = enumerate_normal_subgroups(gb);
      for (auto const& r : na) {
        for (auto const& s : nb) {
          if (is_compatible(g, r, s)) {
            out.push_back({mode, r, s, std::nullopt});
          }
        }
      }
      return out;
    }
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    }
    detail::ChainSets side_a(ga, g.a().subgroup(), p);
    detail::ChainSets side_b(gb, g.b().subgroup(), p);
    for (auto const& r : side_a.normals()) {
      for (auto const& s : side_b.normals()) {
        if (auto cert = detail::match_chain_sets(g, r, s, p, side_a, side_b)) {
          out.push_back({mode, r, s, std::move(cert)});
        }
      }
    }
    return out;
  }

  // hR -> (h phi)S from HR/R onto KS/S, as a map between quotient element
  // indices.
  struct InducedIso {
    Quotient             qa;
    Quotient             qb;
    std::map<Elem, Elem> map;  // HR/R element -> KS/S element
  };

  inline InducedIso induced_iso(FiniteAmalgam const& g, Subgroup const& r, Subgroup const& s) {
    detail::require_pair_normal(g, r, s);
    InducedIso out{quotient_with_projection(g.a().group(), r),
                   quotient_with_projection(g.b().group(), s),
                   {}};
    std::map<Elem, Elem> back;
    for (Elem h : g.a().subgroup().members()) {
      Elem x = out.qa.projection(h);
      Elem y = out.qb.projection(g.phi(h));
      auto [it, fresh] = out.map.emplace(x, y);
      if (!fresh && it->second != y) {
        throw Error(ErrorKind::NotCompatible,
                    "hR -> (h phi)S is not well defined at " + g.a().name(h));
      }
      auto [jt, fresh_back] = back.emplace(y, x);
      if (!fresh_back && jt->second != x) {
        throw Error(ErrorKind::NotCompatible,
                    "hR -> (h phi)S is not injective at " + g.a().name(h));
      }
    }
    return out;
  }

}  // namespace amalgsep
