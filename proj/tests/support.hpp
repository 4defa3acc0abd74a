#pragma once

// Shared helpers for the unit tests: small brute-force oracles that avoid the
// library's own algorithms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "amalgsep/fingrp/catalog.hpp"
#include "amalgsep/fingrp/group.hpp"

namespace testing_support {

  using amalgsep::Elem;
  using amalgsep::FiniteGroup;
  using amalgsep::Table;

  // S3 from composing permutations of {0,1,2}; identity first.
  inline Table s3_table() {
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                          {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    Table t(6, std::vector<Elem>(6));
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) {
          c[x] = perms[b][perms[a][x]];
        }
        t[a][b] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    }
    return t;
  }

  inline Table cyclic_table(std::size_t n) {
    Table t(n, std::vector<Elem>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        t[i][j] = static_cast<Elem>((i + j) % n);
      }
    }
    return t;
  }

  // Conjugacy classes by direct conjugation, as sets.
  inline std::vector<std::set<Elem>> classes(FiniteGroup const& g) {
    std::vector<std::set<Elem>> out;
    std::set<Elem>              seen;
    for (Elem x = 0; x < g.order(); ++x) {
      if (seen.count(x)) {
        continue;
      }
      std::set<Elem> c;
      for (Elem y = 0; y < g.order(); ++y) {
        c.insert(g.mul(g.mul(g.inv(y), x), y));
      }
      seen.insert(c.begin(), c.end());
      out.push_back(c);
    }
    return out;
  }

  // Normal subgroups as unions of classes closed under multiplication.
  // Exponential in the class count; keep to small groups.
  inline std::set<std::vector<Elem>> normal_subgroups_by_classes(FiniteGroup const& g) {
    auto                        cls = classes(g);
    std::set<std::vector<Elem>> out;
    std::size_t const           k = cls.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::set<Elem> s;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1U) {
          s.insert(cls[i].begin(), cls[i].end());
        }
      }
      if (!s.count(0)) {
        continue;
      }
      bool closed = true;
      for (Elem x : s) {
        for (Elem y : s) {
          if (!s.count(g.mul(x, y))) {
            closed = false;
            break;
          }
        }
        if (!closed) {
          break;
        }
      }
      if (closed) {
        out.insert(std::vector<Elem>(s.begin(), s.end()));
      }
    }
    return out;
  }

  inline std::vector<FiniteGroup> small_corpus(std::size_t max_order) {
    std::vector<FiniteGroup> out;
    for (auto const& e : amalgsep::catalog_entries(max_order)) {
      out.push_back(amalgsep::catalog_group(e));
    }
    return out;
  }

}  // namespace testing_support
