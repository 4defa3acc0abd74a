#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/subgroups.hpp"
#include "amalgsep/freegrp/graph.hpp"
#include "amalgsep/freegrp/word.hpp"

// Factor groups of an amalgam, each paired with its amalgamated subgroup.
// Both kinds expose the same small interface so the normal-form machinery
// can be written once:
//
//   identity, multiply, inverse, in_subgroup,
//   transversal(x)     canonical representative t of the right coset Hx,
//   subgroup_part(x)   x t^-1, so that x = subgroup_part(x) * transversal(x),
//   order(x)           element order, nullopt when infinite,
//   conjugator_into_subgroup(x)  some z with z^-1 x z in H.

namespace amalgsep {

  class FiniteFactor {
   public:
    using Element = Elem;

    FiniteFactor() = default;

    FiniteFactor(FiniteGroup g, Subgroup h) : _group(std::move(g)), _sub(std::move(h)) {
      // Representative of Hx: its smallest element.
      _rep.assign(_group.order(), 0);
      std::vector<bool> seen(_group.order(), false);
      for (Elem x = 0; x < _group.order(); ++x) {
        if (seen[x]) {
          continue;
        }
        for (Elem y : _sub.members()) {
          Elem z  = _group.mul(y, x);
          seen[z] = true;
          _rep[z] = x;
        }
      }
    }

    FiniteGroup const& group() const noexcept {
      return _group;
    }
    Subgroup const& subgroup() const noexcept {
      return _sub;
    }

    Elem identity() const noexcept {
      return 0;
    }
    bool is_identity(Elem x) const noexcept {
      return x == 0;
    }
    Elem multiply(Elem x, Elem y) const noexcept {
      return _group.mul(x, y);
    }
    Elem inverse(Elem x) const noexcept {
      return _group.inv(x);
    }
    bool in_subgroup(Elem x) const noexcept {
      return _sub.contains(x);
    }
    Elem transversal(Elem x) const noexcept {
      return _rep[x];
    }
    Elem subgroup_part(Elem x) const noexcept {
      return _group.mul(x, _group.inv(_rep[x]));
    }
    std::optional<std::uint64_t> order(Elem x) const noexcept {
      return _group.element_order(x);
    }
    std::optional<Elem> conjugator_into_subgroup(Elem x) const {
      for (Elem z = 0; z < _group.order(); ++z) {
        if (_sub.contains(_group.conj(x, z))) {
          return z;
        }
      }
      return std::nullopt;
    }
    std::string name(Elem x) const {
      return _group.name(x);
    }

   private:
    FiniteGroup       _group;
    Subgroup          _sub;
    std::vector<Elem> _rep;
  };

  class FreeFactor {
   public:
    using Element = FreeWord;

    FreeFactor() = default;

    FreeFactor(std::vector<std::string> names, std::vector<FreeWord> subgroup_gens)
        : _names(std::move(names)),
          _graph(fold_subgroup(subgroup_gens, static_cast<std::uint32_t>(_names.size()))) {}

    std::uint32_t rank() const noexcept {
      return static_cast<std::uint32_t>(_names.size());
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    SubgroupGraph const& graph() const noexcept {
      return _graph;
    }
    std::vector<FreeWord> const& subgroup_generators() const noexcept {
      return _graph.subgroup_generators();
    }

    FreeWord identity() const {
      return {};
    }
    bool is_identity(FreeWord const& x) const noexcept {
      return x.empty();
    }
    FreeWord multiply(FreeWord const& x, FreeWord const& y) const {
      return x * y;
    }
    FreeWord inverse(FreeWord const& x) const {
      return x.inverse();
    }
    bool in_subgroup(FreeWord const& x) const {
      return _graph.member(x);
    }
    FreeWord transversal(FreeWord const& x) const {
      return _graph.coset_representative(x);
    }
    FreeWord subgroup_part(FreeWord const& x) const {
      return x * transversal(x).inverse();
    }
    std::optional<std::uint64_t> order(FreeWord const& x) const noexcept {
      if (x.empty()) {
        return 1;
      }
      return std::nullopt;
    }

    // Write x = u x0 u^-1 with x0 cyclically reduced. A conjugate of x lies
    // in H exactly when x0 reads a closed path at some state of the folded
    // graph; the state's tree path then gives the conjugator.
    std::optional<FreeWord> conjugator_into_subgroup(FreeWord const& x) const {
      auto const& ls = x.letters();
      std::size_t k  = 0;
      while (2 * k + 1 < ls.size() && ls[k] == ls[ls.size() - 1 - k].inverse()) {
        ++k;
      }
      FreeWord u  = x.prefix(k);
      FreeWord x0 = FreeWord(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(k),
                                                 ls.end() - static_cast<std::ptrdiff_t>(k)));
      for (std::uint32_t v = 0; v < _graph.state_count(); ++v) {
        std::uint32_t s  = v;
        bool          ok = true;
        for (auto l : x0.letters()) {
          auto const& e = _graph.edge(s, l);
          if (!e) {
            ok = false;
            break;
          }
          s = e->target;
        }
        if (ok && s == v) {
          return u * _graph.spanning_path(v).inverse();
        }
      }
      return std::nullopt;
    }

    std::string name(FreeWord const& x) const {
      return x.to_string(_names);
    }

   private:
    std::vector<std::string> _names;
    SubgroupGraph            _graph;
  };

}  // namespace amalgsep
