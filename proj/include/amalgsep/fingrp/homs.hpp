#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/subgroups.hpp"

namespace amalgsep {

  inline constexpr std::uint64_t kDefaultHomWork = 50'000'000;

  // A generating set chosen greedily (each new generator enlarges the
  // generated subgroup as much as possible), with a spanning tree of the
  // Cayley graph for each prefix of it.
  struct GeneratingSet {
    struct Level {
      std::vector<Elem>          order;   // elements of <g_0..g_k> in BFS order
      std::vector<Elem>          parent;  // indexed by element; parent * gen = element
      std::vector<std::uint32_t> via;
    };
    std::vector<Elem>  gens;
    std::vector<Level> levels;
  };

  inline GeneratingSet generating_set(FiniteGroup const& g) {
    GeneratingSet out;
    std::vector<Elem> cur{FiniteGroup::identity()};
    std::size_t       have = 1;
    while (have < g.order()) {
      Elem        best      = 0;
      std::size_t best_size = 0;
      ElemSet     in(g.order());
      for (Elem x : cur) {
        in.insert(x);
      }
      for (Elem x = 0; x < g.order(); ++x) {
        if (in.contains(x)) {
          continue;
        }
        auto gens = out.gens;
        gens.push_back(x);
        auto size = subgroup_generated(g, gens).order();
        if (size > best_size) {
          best      = x;
          best_size = size;
        }
      }
      out.gens.push_back(best);
      cur  = subgroup_generated(g, out.gens).members();
      have = cur.size();
    }
    for (std::size_t k = 0; k < out.gens.size(); ++k) {
      GeneratingSet::Level lv;
      lv.parent.assign(g.order(), 0);
      lv.via.assign(g.order(), 0);
      ElemSet seen(g.order());
      seen.insert(0);
      lv.order.push_back(0);
      for (std::size_t i = 0; i < lv.order.size(); ++i) {
        for (std::uint32_t s = 0; s <= k; ++s) {
          Elem y = g.mul(lv.order[i], out.gens[s]);
          if (!seen.contains(y)) {
            seen.insert(y);
            lv.parent[y] = lv.order[i];
            lv.via[y]    = s;
            lv.order.push_back(y);
          }
        }
      }
      out.levels.push_back(std::move(lv));
    }
    return out;
  }

  // Calls visit(images) for every homomorphism src -> dst, images indexed by
  // the elements of src, in lexicographic order of the generator images. The
  // visitor returns false to stop. Throws SizeCap when the search exceeds
  // `work` node expansions.
  // `gs` must be generating_set(src); callers scanning many targets compute it
  // once.
  template <typename Visit>
  void for_each_homomorphism(FiniteGroup const&   src,
                             GeneratingSet const& gs,
                             FiniteGroup const&   dst,
                             Visit&&              visit,
                             std::uint64_t        work = kDefaultHomWork) {
    std::size_t const k = gs.gens.size();
    std::vector<Elem> images(src.order(), 0);
    if (k == 0) {
      visit(static_cast<std::vector<Elem> const&>(images));
      return;
    }
    std::vector<std::vector<Elem>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto o = src.element_order(gs.gens[i]);
      for (Elem y = 0; y < dst.order(); ++y) {
        if (o % dst.element_order(y) == 0) {
          candidates[i].push_back(y);
        }
      }
    }
    std::vector<Elem> chosen(k, 0);
    std::uint64_t     spent = 0;
    bool              stop  = false;

    // Extends the assignment to <g_0..g_level> and checks it on every edge.
    auto consistent = [&](std::size_t level) {
      auto const& lv = gs.levels[level];
      for (std::size_t i = 1; i < lv.order.size(); ++i) {
        Elem x    = lv.order[i];
        images[x] = dst.mul(images[lv.parent[x]], chosen[lv.via[x]]);
      }
      for (Elem x : lv.order) {
        for (std::size_t s = 0; s <= level; ++s) {
          if (images[src.mul(x, gs.gens[s])] != dst.mul(images[x], chosen[s])) {
            return false;
          }
        }
      }
      return true;
    };

    auto recurse = [&](auto&& self, std::size_t level) -> void {
      for (Elem y : candidates[level]) {
        if (stop) {
          return;
        }
        if (++spent > work) {
          throw Error(ErrorKind::SizeCap, "homomorphism search from a group of order "
                                              + std::to_string(src.order()) + " to one of order "
                                              + std::to_string(dst.order())
                                              + " exceeds the work cap");
        }
        chosen[level] = y;
        if (!consistent(level)) {
          continue;
        }
        if (level + 1 == k) {
          if (!visit(static_cast<std::vector<Elem> const&>(images))) {
            stop = true;
          }
        } else {
          self(self, level + 1);
        }
      }
    };
    recurse(recurse, 0);
  }

  template <typename Visit>
  void for_each_homomorphism(FiniteGroup const& src,
                             FiniteGroup const& dst,
                             Visit&&            visit,
                             std::uint64_t      work = kDefaultHomWork) {
    for_each_homomorphism(src, generating_set(src), dst, std::forward<Visit>(visit), work);
  }

  inline std::vector<std::vector<Elem>> enumerate_homomorphisms(FiniteGroup const& src,
                                                                FiniteGroup const& dst,
                                                                std::uint64_t work
                                                                = kDefaultHomWork) {
    std::vector<std::vector<Elem>> out;
    for_each_homomorphism(
        src, dst,
        [&](std::vector<Elem> const& images) {
          out.push_back(images);
          return true;
        },
        work);
    return out;
  }

}  // namespace amalgsep
