#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "amalgsep/core/numbers.hpp"
#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/subgroups.hpp"

// Built-in finite target groups for homomorphism searches.
//
//   Z_n          cyclic, 1 <= n <= 64
//   D_n          dihedral of order 2n, 3 <= n <= 12
//   Z_m x|_k Z_j metacyclic y^-1 x y = x^k, 3 <= m <= 64, k != 1 a unit with k^j = 1
//   S_n          symmetric, 3 <= n <= 5
//   A x B        products of two non-trivial members above
//
// Entries are ordered by group order, then family, then parameters.

namespace amalgsep {

  inline constexpr std::size_t kCatalogMaxOrder      = 256;
  inline constexpr std::size_t kCatalogMaxCyclic     = 64;
  inline constexpr std::size_t kCatalogMaxDihedral   = 12;
  inline constexpr std::size_t kCatalogMaxModulus    = 64;
  inline constexpr std::size_t kCatalogMaxSymmetric  = 5;

  enum class CatalogFamily { Cyclic, Dihedral, Metacyclic, Symmetric, Product };

  inline std::string_view to_string(CatalogFamily f) noexcept {
    switch (f) {
      case CatalogFamily::Cyclic: return "cyclic";
      case CatalogFamily::Dihedral: return "dihedral";
      case CatalogFamily::Metacyclic: return "metacyclic";
      case CatalogFamily::Symmetric: return "symmetric";
      case CatalogFamily::Product: return "product";
    }
    return "?";
  }

  struct CatalogEntry {
    std::string                label;
    CatalogFamily              family = CatalogFamily::Cyclic;
    std::size_t                order  = 1;
    std::vector<std::size_t>   params;  // n | n | m,k,j | n | indices of the two factors
  };

  namespace detail {

    inline FiniteGroup make_cyclic(std::size_t n) {
      Table                    t(n, std::vector<Elem>(n));
      std::vector<std::string> names(n);
      for (std::size_t i = 0; i < n; ++i) {
        names[i] = i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i);
        for (std::size_t j = 0; j < n; ++j) {
          t[i][j] = static_cast<Elem>((i + j) % n);
        }
      }
      return FiniteGroup::from_trusted_table(t, std::move(names));
    }

    // y^t x^u encoded as u + m*t, with y^-1 x y = x^k.
    inline FiniteGroup make_metacyclic(std::size_t m, std::size_t k, std::size_t j) {
      std::vector<std::size_t> kpow(j, 1);
      for (std::size_t t = 1; t < j; ++t) {
        kpow[t] = kpow[t - 1] * k % m;
      }
      std::size_t const        n = m * j;
      Table                    tab(n, std::vector<Elem>(n));
      std::vector<std::string> names(n);
      for (std::size_t a = 0; a < n; ++a) {
        std::size_t u1 = a % m, t1 = a / m;
        std::string yn = t1 == 0 ? "" : t1 == 1 ? "y" : "y^" + std::to_string(t1);
        std::string xn = u1 == 0 ? "" : u1 == 1 ? "x" : "x^" + std::to_string(u1);
        names[a]       = yn.empty() && xn.empty() ? "1" : yn + xn;
        for (std::size_t b = 0; b < n; ++b) {
          std::size_t u2 = b % m, t2 = b / m;
          tab[a][b] = static_cast<Elem>((u1 * kpow[t2] + u2) % m + m * ((t1 + t2) % j));
        }
      }
      return FiniteGroup::from_trusted_table(tab, std::move(names));
    }

    // r^i s^e encoded as i + n*e.
    inline FiniteGroup make_dihedral(std::size_t n) {
      std::size_t const        size = 2 * n;
      Table                    t(size, std::vector<Elem>(size));
      std::vector<std::string> names(size);
      for (std::size_t a = 0; a < size; ++a) {
        std::size_t i1 = a % n, e1 = a / n;
        std::string rn = i1 == 0 ? "" : i1 == 1 ? "r" : "r^" + std::to_string(i1);
        names[a]       = rn + (e1 ? "s" : "");
        if (names[a].empty()) {
          names[a] = "1";
        }
        for (std::size_t b = 0; b < size; ++b) {
          std::size_t i2 = b % n, e2 = b / n;
          std::size_t i  = e1 ? (i1 + n - i2) % n : (i1 + i2) % n;
          t[a][b]        = static_cast<Elem>(i + n * ((e1 + e2) % 2));
        }
      }
      return FiniteGroup::from_trusted_table(t, std::move(names));
    }

    inline std::string cycle_notation(std::vector<std::size_t> const& perm) {
      std::string       out;
      std::vector<bool> seen(perm.size(), false);
      for (std::size_t s = 0; s < perm.size(); ++s) {
        if (seen[s] || perm[s] == s) {
          continue;
        }
        out += "(";
        for (std::size_t c = s; !seen[c]; c = perm[c]) {
          seen[c] = true;
          if (c != s) {
            out += " ";
          }
          out += std::to_string(c + 1);
        }
        out += ")";
      }
      return out.empty() ? "()" : out;
    }

    // Permutations in lexicographic order of their images; the product
    // applies the left factor first.
    inline FiniteGroup make_symmetric(std::size_t n) {
      std::vector<std::vector<std::size_t>> perms;
      std::vector<std::size_t>              p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      std::map<std::vector<std::size_t>, Elem> index;
      for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = static_cast<Elem>(i);
      }
      Table                    t(perms.size(), std::vector<Elem>(perms.size()));
      std::vector<std::string> names;
      for (std::size_t a = 0; a < perms.size(); ++a) {
        names.push_back(cycle_notation(perms[a]));
        for (std::size_t b = 0; b < perms.size(); ++b) {
          std::vector<std::size_t> c(n);
          for (std::size_t x = 0; x < n; ++x) {
            c[x] = perms[b][perms[a][x]];
          }
          t[a][b] = index.at(c);
        }
      }
      return FiniteGroup::from_trusted_table(t, std::move(names));
    }

    inline std::size_t multiplicative_order(std::size_t k, std::size_t m) {
      std::size_t r = k % m, o = 1;
      while (r != 1) {
        r = r * k % m;
        ++o;
      }
      return o;
    }

    inline std::vector<CatalogEntry> build_catalog_entries() {
      std::vector<CatalogEntry> base;
      for (std::size_t n = 1; n <= kCatalogMaxCyclic; ++n) {
        base.push_back({"Z" + std::to_string(n), CatalogFamily::Cyclic, n, {n}});
      }
      for (std::size_t n = 3; n <= kCatalogMaxDihedral; ++n) {
        base.push_back({"D" + std::to_string(n), CatalogFamily::Dihedral, 2 * n, {n}});
      }
      for (std::size_t m = 3; m <= kCatalogMaxModulus; ++m) {
        for (std::size_t j = 2; m * j <= kCatalogMaxOrder; ++j) {
          // One k per cyclic subgroup <k> of units: the smallest generator.
          std::vector<std::vector<std::size_t>> seen;
          for (std::size_t k = 2; k < m; ++k) {
            if (std::gcd(k, m) != 1 || j % multiplicative_order(k, m) != 0) {
              continue;
            }
            std::vector<std::size_t> powers;
            for (std::size_t r = k;; r = r * k % m) {
              powers.push_back(r);
              if (r == 1) {
                break;
              }
            }
            std::sort(powers.begin(), powers.end());
            if (std::find(seen.begin(), seen.end(), powers) != seen.end()) {
              continue;
            }
            seen.push_back(powers);
            if (k == m - 1 && j == 2 && m <= kCatalogMaxDihedral) {
              continue;  // already listed as D_m
            }
            base.push_back({"Z" + std::to_string(m) + "x|" + std::to_string(k) + "Z"
                                + std::to_string(j),
                            CatalogFamily::Metacyclic, m * j, {m, k, j}});
          }
        }
      }
      for (std::size_t n = 3; n <= kCatalogMaxSymmetric; ++n) {
        std::size_t f = 1;
        for (std::size_t i = 2; i <= n; ++i) {
          f *= i;
        }
        base.push_back({"S" + std::to_string(n), CatalogFamily::Symmetric, f, {n}});
      }
      auto const by_order = [](CatalogEntry const& a, CatalogEntry const& b) {
        if (a.order != b.order) {
          return a.order < b.order;
        }
        if (a.family != b.family) {
          return a.family < b.family;
        }
        return a.params < b.params;
      };
      std::stable_sort(base.begin(), base.end(), by_order);

      std::vector<CatalogEntry> all = base;
      for (std::size_t i = 0; i < base.size(); ++i) {
        for (std::size_t j = i; j < base.size(); ++j) {
          auto const& a = base[i];
          auto const& b = base[j];
          if (a.order == 1 || b.order == 1 || a.order * b.order > kCatalogMaxOrder) {
            continue;
          }
          if (a.family == CatalogFamily::Cyclic && b.family == CatalogFamily::Cyclic
              && std::gcd(a.order, b.order) == 1) {
            continue;  // cyclic again
          }
          all.push_back({a.label + " x " + b.label, CatalogFamily::Product, a.order * b.order,
                         {i, j}});
        }
      }
      std::stable_sort(all.begin(), all.end(), by_order);
      return all;
    }

  }  // namespace detail

  // Every catalog entry up to kCatalogMaxOrder in canonical order.
  inline std::vector<CatalogEntry> const& catalog_entries() {
    static std::vector<CatalogEntry> const entries = detail::build_catalog_entries();
    return entries;
  }

  inline std::vector<CatalogEntry> catalog_entries(std::size_t max_order, bool p_groups_only = false,
                                                   std::uint64_t p = 2) {
    std::vector<CatalogEntry> out;
    for (auto const& e : catalog_entries()) {
      if (e.order > max_order) {
        break;
      }
      if (p_groups_only && !is_p_power(e.order, p)) {
        continue;
      }
      out.push_back(e);
    }
    return out;
  }

  namespace detail {

    inline std::vector<CatalogEntry> const& base_entries() {
      static std::vector<CatalogEntry> const base = [] {
        std::vector<CatalogEntry> b;
        for (auto const& e : catalog_entries()) {
          if (e.family != CatalogFamily::Product) {
            b.push_back(e);
          }
        }
        return b;
      }();
      return base;
    }

  }  // namespace detail

  // Builds (and caches) the group of an entry.
  inline FiniteGroup catalog_group(CatalogEntry const& e) {
    static std::mutex                         mutex;
    static std::map<std::string, FiniteGroup> cache;
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find(e.label); it != cache.end()) {
        return it->second;
      }
    }
    FiniteGroup g;
    switch (e.family) {
      case CatalogFamily::Cyclic: g = detail::make_cyclic(e.params[0]); break;
      case CatalogFamily::Dihedral: g = detail::make_dihedral(e.params[0]); break;
      case CatalogFamily::Metacyclic:
        g = detail::make_metacyclic(e.params[0], e.params[1], e.params[2]);
        break;
      case CatalogFamily::Symmetric: g = detail::make_symmetric(e.params[0]); break;
      case CatalogFamily::Product: {
        auto const& base = detail::base_entries();
        auto        a    = catalog_group(base[e.params[0]]);
        auto        b    = catalog_group(base[e.params[1]]);
        auto        p    = direct_product(a, b);
        std::vector<std::string> names;
        for (Elem x = 0; x < a.order(); ++x) {
          for (Elem y = 0; y < b.order(); ++y) {
            names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
          }
        }
        g = FiniteGroup::from_trusted_table(p.table(), std::move(names));
        break;
      }
    }
    std::lock_guard lock(mutex);
    return cache.emplace(e.label, g).first->second;
  }

  inline FiniteGroup cyclic_group(std::size_t n) {
    return detail::make_cyclic(n);
  }
  inline FiniteGroup dihedral_group(std::size_t n) {
    return detail::make_dihedral(n);
  }
  inline FiniteGroup metacyclic_group(std::size_t m, std::size_t k, std::size_t j) {
    return detail::make_metacyclic(m, k, j);
  }
  inline FiniteGroup symmetric_group(std::size_t n) {
    return detail::make_symmetric(n);
  }

}  // namespace amalgsep
