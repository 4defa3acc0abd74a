#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "amalgsep/core/numbers.hpp"
#include "amalgsep/fingrp/group.hpp"

namespace amalgsep {

  inline constexpr std::size_t kMaxNormalSubgroups = 200'000;

  inline Subgroup subgroup_generated(FiniteGroup const& g, std::span<Elem const> gens) {
    ElemSet           set(g.order());
    std::vector<Elem> queue{FiniteGroup::identity()};
    set.insert(FiniteGroup::identity());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Elem s : gens) {
        if (s >= g.order()) {
          throw Error(ErrorKind::InvalidInput, "generator " + std::to_string(s) + " out of range");
        }
        Elem y = g.mul(queue[i], s);
        if (set.insert(y)) {
          queue.push_back(y);
        }
      }
    }
    return Subgroup::trusted(g, std::move(set));
  }

  inline Subgroup subgroup_generated(FiniteGroup const& g, std::initializer_list<Elem> gens) {
    return subgroup_generated(g, std::span<Elem const>(gens.begin(), gens.size()));
  }

  inline Subgroup cyclic_subgroup(FiniteGroup const& g, Elem x) {
    return subgroup_generated(g, std::span<Elem const>(&x, 1));
  }

  inline bool is_normal(Subgroup const& n) {
    auto const& g = n.parent();
    for (Elem x : n.members()) {
      for (Elem y = 0; y < g.order(); ++y) {
        if (!n.contains(g.conj(x, y))) {
          return false;
        }
      }
    }
    return true;
  }

  inline void require_normal(Subgroup const& n, std::string_view what) {
    if (!is_normal(n)) {
      throw Error(ErrorKind::NotNormal, std::string(what) + " is not a normal subgroup");
    }
  }

  inline Subgroup intersect(Subgroup const& a, Subgroup const& b) {
    return Subgroup::trusted(a.parent(), a.set().intersect(b.set()));
  }

  // Set product AB; a subgroup whenever one factor normalizes the other.
  inline ElemSet product_set(Subgroup const& a, Subgroup const& b) {
    auto const& g = a.parent();
    ElemSet     s(g.order());
    for (Elem x : a.members()) {
      for (Elem y : b.members()) {
        s.insert(g.mul(x, y));
      }
    }
    return s;
  }

  inline Subgroup join_normal(Subgroup const& a, Subgroup const& b) {
    return Subgroup::trusted(a.parent(), product_set(a, b));
  }

  // by^-1 S by
  inline Subgroup conjugate(Subgroup const& s, Elem by) {
    auto const& g = s.parent();
    ElemSet     set(g.order());
    for (Elem x : s.members()) {
      set.insert(g.conj(x, by));
    }
    return Subgroup::trusted(g, std::move(set));
  }

  inline Subgroup normal_closure(FiniteGroup const& g, std::span<Elem const> gens) {
    std::vector<Elem> conjugates;
    ElemSet           seen(g.order());
    for (Elem x : gens) {
      for (Elem y = 0; y < g.order(); ++y) {
        Elem c = g.conj(x, y);
        if (seen.insert(c)) {
          conjugates.push_back(c);
        }
      }
    }
    return subgroup_generated(g, conjugates);
  }

  inline std::vector<std::vector<Elem>> conjugacy_classes(FiniteGroup const& g) {
    std::vector<std::vector<Elem>> classes;
    ElemSet                        seen(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      if (seen.contains(x)) {
        continue;
      }
      std::vector<Elem> cls;
      for (Elem y = 0; y < g.order(); ++y) {
        Elem c = g.conj(x, y);
        if (seen.insert(c)) {
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      classes.push_back(std::move(cls));
    }
    return classes;
  }

  // Every normal subgroup exactly once, sorted by (order, member list).
  // Each normal subgroup is a product of normal closures of conjugacy
  // classes, so joining one class closure at a time reaches all of them.
  inline std::vector<Subgroup> enumerate_normal_subgroups(FiniteGroup const& g) {
    std::vector<Subgroup> class_closures;
    for (auto const& cls : conjugacy_classes(g)) {
      auto c = subgroup_generated(g, cls);
      if (std::find(class_closures.begin(), class_closures.end(), c) == class_closures.end()) {
        class_closures.push_back(std::move(c));
      }
    }
    std::vector<Subgroup>                  found{Subgroup::trivial(g)};
    std::map<std::vector<Elem>, std::size_t> index{{found[0].members(), 0}};
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (auto const& c : class_closures) {
        if (c.is_subgroup_of(found[i])) {
          continue;
        }
        auto j = join_normal(found[i], c);
        if (index.emplace(j.members(), found.size()).second) {
          found.push_back(std::move(j));
          if (found.size() > kMaxNormalSubgroups) {
            throw Error(ErrorKind::SizeCap, "too many normal subgroups to enumerate");
          }
        }
      }
    }
    std::sort(found.begin(), found.end());
    return found;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients, induced groups, products
  ////////////////////////////////////////////////////////////////////////

  struct Quotient {
    FiniteGroup       group;
    Homomorphism      projection;
    std::vector<Elem> representatives;  // smallest element of each coset
  };

  // Cosets are indexed by increasing smallest member, so the coset of the
  // identity is element 0.
  inline Quotient quotient_with_projection(FiniteGroup const& g, Subgroup const& n) {
    require_normal(n, "quotient kernel");
    constexpr Elem    kUnset = ~Elem{0};
    std::vector<Elem> coset(g.order(), kUnset);
    std::vector<Elem> reps;
    for (Elem x = 0; x < g.order(); ++x) {
      if (coset[x] != kUnset) {
        continue;
      }
      auto id = static_cast<Elem>(reps.size());
      reps.push_back(x);
      for (Elem y : n.members()) {
        coset[g.mul(x, y)] = id;
      }
    }
    Table t(reps.size(), std::vector<Elem>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        t[i][j] = coset[g.mul(reps[i], reps[j])];
      }
    }
    auto q = FiniteGroup::from_trusted_table(t);
    return Quotient{q, Homomorphism::trusted(g, q, coset), std::move(reps)};
  }

  struct InducedGroup {
    FiniteGroup       group;
    std::vector<Elem> embed;     // local index -> parent element
    std::vector<Elem> local_of;  // parent element -> local index, or npos
    static constexpr Elem npos = ~Elem{0};
  };

  // A subgroup as a group in its own right; local indices follow the sorted
  // member list so the identity stays at 0.
  inline InducedGroup induced_group(Subgroup const& s) {
    auto const&       g = s.parent();
    auto const&       m = s.members();
    std::vector<Elem> local(g.order(), InducedGroup::npos);
    for (std::size_t i = 0; i < m.size(); ++i) {
      local[m[i]] = static_cast<Elem>(i);
    }
    Table t(m.size(), std::vector<Elem>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        t[i][j] = local[g.mul(m[i], m[j])];
      }
    }
    std::vector<std::string> names;
    if (g.has_names()) {
      for (Elem x : m) {
        names.push_back(g.name(x));
      }
    }
    return InducedGroup{FiniteGroup::from_trusted_table(t, std::move(names)), m, std::move(local)};
  }

  inline FiniteGroup direct_product(FiniteGroup const& a, FiniteGroup const& b) {
    std::size_t const na = a.order(), nb = b.order();
    Table             t(na * nb, std::vector<Elem>(na * nb));
    for (Elem x1 = 0; x1 < na; ++x1) {
      for (Elem y1 = 0; y1 < nb; ++y1) {
        for (Elem x2 = 0; x2 < na; ++x2) {
          for (Elem y2 = 0; y2 < nb; ++y2) {
            t[x1 * nb + y1][x2 * nb + y2]
                = static_cast<Elem>(a.mul(x1, x2) * nb + b.mul(y1, y2));
          }
        }
      }
    }
    return FiniteGroup::from_trusted_table(t);
  }

  // The subgroup of a direct product generated by the given tuples, built
  // without materializing the product. Tuples are mixed-radix encoded.
  struct TupleGroup {
    FiniteGroup                             group;
    std::vector<std::vector<Elem>> tuples;      // local index -> tuple
    std::vector<Elem>              generators;  // local index of each generator tuple
  };

  inline TupleGroup generated_in_product(std::vector<FiniteGroup> const&         factors,
                                         std::vector<std::vector<Elem>> const& gen_tuples,
                                         std::size_t cap = kMaxGroupOrder) {
    auto const encode = [&](std::vector<Elem> const& t) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        code = code * factors[i].order() + t[i];
      }
      return code;
    };
    auto const multiply = [&](std::vector<Elem> const& x, std::vector<Elem> const& y) {
      std::vector<Elem> r(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) {
        r[i] = factors[i].mul(x[i], y[i]);
      }
      return r;
    };
    std::vector<std::vector<Elem>>          elems{std::vector<Elem>(factors.size(), 0)};
    std::unordered_map<std::uint64_t, Elem> local{{0, 0}};
    std::vector<std::vector<Elem>>          right(1);  // right[i][s] = index of elems[i]*gen_s
    for (std::size_t i = 0; i < elems.size(); ++i) {
      right[i].resize(gen_tuples.size());
      for (std::size_t s = 0; s < gen_tuples.size(); ++s) {
        auto y  = multiply(elems[i], gen_tuples[s]);
        auto c  = encode(y);
        auto it = local.find(c);
        if (it == local.end()) {
          if (elems.size() >= cap) {
            throw Error(ErrorKind::SizeCap,
                        "generated subgroup of the product exceeds order " + std::to_string(cap));
          }
          it = local.emplace(c, static_cast<Elem>(elems.size())).first;
          elems.push_back(std::move(y));
          right.emplace_back();
        }
        right[i][s] = it->second;
      }
    }
    std::size_t const n = elems.size();
    Table             t(n, std::vector<Elem>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        t[i][j] = local.at(encode(multiply(elems[i], elems[j])));
      }
    }
    std::vector<Elem> gens(gen_tuples.size());
    for (std::size_t s = 0; s < gen_tuples.size(); ++s) {
      gens[s] = right[0][s];
    }
    return TupleGroup{FiniteGroup::from_trusted_table(t), std::move(elems), std::move(gens)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Normal chains with index-p steps
  ////////////////////////////////////////////////////////////////////////

  struct NormalChain {
    FiniteGroup           group;
    std::vector<Subgroup> links;  // R = links.front() <= ... <= links.back() = group
    std::uint64_t         prime = 2;

    std::size_t length() const noexcept {
      return links.empty() ? 0 : links.size() - 1;
    }

    // Every link normal, consecutive indices equal to the prime, top = group.
    bool valid() const {
      if (links.empty() || !links.back().is_whole()) {
        return false;
      }
      for (std::size_t i = 0; i < links.size(); ++i) {
        if (!is_normal(links[i])) {
          return false;
        }
        if (i + 1 < links.size()
            && (!links[i].is_subgroup_of(links[i + 1])
                || links[i + 1].order() != links[i].order() * prime)) {
          return false;
        }
      }
      return true;
    }
  };

  // Depth-first from the top: at each link try the normal subgroups of G of
  // index p in it (containing R), smallest canonical first.
  inline std::optional<NormalChain> find_p_chain(FiniteGroup const&           g,
                                                 Subgroup const&              r,
                                                 std::uint64_t                p,
                                                 std::vector<Subgroup> const* normals = nullptr) {
    require_normal(r, "chain base");
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    }
    if (!is_p_power(r.index(), p)) {
      return std::nullopt;
    }
    std::vector<Subgroup> owned;
    if (normals == nullptr) {
      owned   = enumerate_normal_subgroups(g);
      normals = &owned;
    }
    std::vector<Subgroup const*> above;
    for (auto const& n : *normals) {
      if (r.is_subgroup_of(n)) {
        above.push_back(&n);
      }
    }
    std::vector<Subgroup>                 downward{Subgroup::whole(g)};
    std::map<std::vector<Elem>, bool>     dead;
    std::function<bool(Subgroup const&)> descend = [&](Subgroup const& top) -> bool {
      if (top == r) {
        return true;
      }
      if (dead.count(top.members())) {
        return false;
      }
      for (auto const* n : above) {
        if (n->order() * p == top.order() && n->is_subgroup_of(top)) {
          downward.push_back(*n);
          if (descend(*n)) {
            return true;
          }
          downward.pop_back();
        }
      }
      dead[top.members()] = true;
      return false;
    };
    if (!descend(downward.front())) {
      return std::nullopt;
    }
    std::reverse(downward.begin(), downward.end());
    return NormalChain{g, std::move(downward), p};
  }

}  // namespace amalgsep
