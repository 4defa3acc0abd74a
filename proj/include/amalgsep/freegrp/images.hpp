#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/subgroups.hpp"
#include "amalgsep/freegrp/word.hpp"

namespace amalgsep {

  inline constexpr std::uint64_t kDefaultImageCap = 10'000'000;

  // A homomorphism from a free group of the given rank to a finite group,
  // given by generator images. Stands for its kernel, a normal subgroup of
  // finite index.
  struct GenImages {
    std::uint32_t     rank = 0;
    FiniteGroup       target;
    std::vector<Elem> images;

    Elem operator()(FreeWord const& w) const {
      Elem r = FiniteGroup::identity();
      for (auto l : w.letters()) {
        Elem x = images.at(l.gen);
        r      = target.mul(r, l.sign > 0 ? x : target.inv(x));
      }
      return r;
    }

    Subgroup image() const {
      return subgroup_generated(target, images);
    }

    // Index of the kernel.
    std::size_t index() const {
      return image().order();
    }
  };

  inline std::uint64_t count_gen_images(std::uint32_t rank, FiniteGroup const& target) {
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
      n *= target.order();
      if (n > (std::uint64_t{1} << 62) / target.order()) {
        return std::uint64_t{1} << 62;
      }
    }
    return n;
  }

  // Visits every assignment in lexicographic order of the image tuple; the
  // visitor returns false to stop early.
  template <typename Visit>
  void for_each_gen_images(std::uint32_t      rank,
                           FiniteGroup const& target,
                           Visit&&            visit,
                           std::uint64_t      cap = kDefaultImageCap) {
    if (count_gen_images(rank, target) > cap) {
      throw Error(ErrorKind::SizeCap, std::to_string(target.order()) + "^" + std::to_string(rank)
                                          + " generator assignments exceed the cap "
                                          + std::to_string(cap));
    }
    GenImages u{rank, target, std::vector<Elem>(rank, 0)};
    while (true) {
      if (!visit(static_cast<GenImages const&>(u))) {
        return;
      }
      std::uint32_t i = rank;
      while (i > 0) {
        --i;
        if (++u.images[i] < target.order()) {
          break;
        }
        u.images[i] = 0;
        if (i == 0) {
          return;
        }
      }
      if (rank == 0) {
        return;
      }
    }
  }

  inline std::vector<GenImages> enumerate_gen_images(std::uint32_t      rank,
                                                     FiniteGroup const& target,
                                                     std::uint64_t      cap = kDefaultImageCap) {
    std::vector<GenImages> out;
    for_each_gen_images(
        rank, target,
        [&](GenImages const& u) {
          out.push_back(u);
          return true;
        },
        cap);
    return out;
  }

  inline bool kernels_equal(GenImages const& u, GenImages const& v) {
    if (u.rank != v.rank || u.images.size() != v.images.size()) {
      throw Error(ErrorKind::RankMismatch, "kernels compared across ranks "
                                               + std::to_string(u.rank) + " and "
                                               + std::to_string(v.rank));
    }
    std::vector<std::vector<Elem>> pairs;
    for (std::size_t i = 0; i < u.images.size(); ++i) {
      pairs.push_back({u.images[i], v.images[i]});
    }
    auto d = generated_in_product({u.target, v.target}, pairs,
                                  u.target.order() * v.target.order());
    for (auto const& t : d.tuples) {
      if ((t[0] == 0) != (t[1] == 0)) {
        return false;
      }
    }
    return true;
  }

  // Right Cayley graph of the image with respect to the marked generator
  // images, numbered in BFS order. Two maps of the same rank have equal
  // kernels exactly when their keys are equal, so keys can be bucketed.
  inline std::vector<std::uint32_t> marked_key(GenImages const& u) {
    auto const&                t = u.target;
    constexpr std::uint32_t    kNone = ~std::uint32_t{0};
    std::vector<std::uint32_t> number(t.order(), kNone);
    std::vector<Elem>          order{FiniteGroup::identity()};
    std::vector<std::uint32_t> key;
    number[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (Elem s : u.images) {
        Elem y = t.mul(order[k], s);
        if (number[y] == kNone) {
          number[y] = static_cast<std::uint32_t>(order.size());
          order.push_back(y);
        }
        key.push_back(number[y]);
      }
    }
    return key;
  }

}  // namespace amalgsep
