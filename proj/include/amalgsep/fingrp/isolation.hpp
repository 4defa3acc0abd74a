#pragma once

#include <optional>
#include <string>

#include "amalgsep/core/numbers.hpp"
#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/fingrp/subgroups.hpp"

namespace amalgsep {

  // A generator of S if S is cyclic.
  inline std::optional<Elem> cyclic_generator(Subgroup const& s) {
    auto const& g = s.parent();
    for (Elem x : s.members()) {
      if (g.element_order(x) == s.order()) {
        return x;
      }
    }
    return std::nullopt;
  }

  // F is p'-isolated in G when y^q in F for a prime q != p forces y in F.
  // Only primes dividing the exponent of G can matter: for any other q the
  // map y -> y^q is a bijection on <y> so y is a power of y^q.
  inline bool is_p_prime_isolated_cyclic_finite(FiniteGroup const& g,
                                                Subgroup const&    f,
                                                std::uint64_t      p) {
    if (!cyclic_generator(f)) {
      throw Error(ErrorKind::NotCyclic, "subgroup of order " + std::to_string(f.order())
                                            + " is not cyclic");
    }
    auto primes = prime_divisors(g.exponent());
    for (Elem y = 0; y < g.order(); ++y) {
      if (f.contains(y)) {
        continue;
      }
      for (auto q : primes) {
        if (q != p && f.contains(g.pow(y, static_cast<std::int64_t>(q)))) {
          return false;
        }
      }
    }
    return true;
  }

  // A normal subgroup N of X of p-power index with g outside FN.
  //
  // If g is already outside FY, Y itself works. Otherwise g = fy with
  // f in F, y in Y; a normal subgroup M of Y of p-power index keeping y
  // outside (F & Y)M is intersected over its X-conjugates.
  inline Subgroup separating_core(FiniteGroup const& x,
                                  Subgroup const&    y,
                                  Subgroup const&    f,
                                  Elem               g,
                                  std::uint64_t      p) {
    auto const violated = [](std::string const& what) {
      return Error(ErrorKind::PreconditionViolated, what);
    };
    if (!is_prime(p)) {
      throw violated(std::to_string(p) + " is not prime");
    }
    if (g >= x.order()) {
      throw violated("g is not an element of X");
    }
    if (!is_normal(y)) {
      throw violated("Y is not normal in X");
    }
    if (!is_p_power(y.index(), p)) {
      throw violated("[X : Y] = " + std::to_string(y.index()) + " is not a power of "
                     + std::to_string(p));
    }
    if (!cyclic_generator(f)) {
      throw violated("F is not cyclic");
    }
    if (!is_p_prime_isolated_cyclic_finite(x, f, p)) {
      throw violated("F is not p'-isolated in X");
    }
    if (f.contains(g)) {
      throw violated("g lies in F");
    }

    if (!product_set(f, y).contains(g)) {
      return y;
    }

    Elem yg = 0;
    for (Elem fe : f.members()) {
      Elem cand = x.mul(x.inv(fe), g);
      if (y.contains(cand)) {
        yg = cand;
        break;
      }
    }

    auto              local = induced_group(y);
    auto const&       ly    = local.group;
    std::vector<Elem> fy_local;
    auto const        f_and_y = intersect(f, y);
    for (Elem e : f_and_y.members()) {
      fy_local.push_back(local.local_of[e]);
    }
    auto fy    = Subgroup::from_members(ly, fy_local);
    Elem y_loc = local.local_of[yg];

    std::optional<Subgroup> m;
    for (auto const& cand : enumerate_normal_subgroups(ly)) {
      if (is_p_power(cand.index(), p) && !product_set(fy, cand).contains(y_loc)) {
        m = cand;
        break;
      }
    }
    if (!m) {
      throw Error(ErrorKind::NoSuchM,
                  "no normal subgroup of Y of " + std::to_string(p)
                      + "-power index excludes y from (F & Y)M");
    }

    ElemSet m_parent(x.order());
    for (Elem e : m->members()) {
      m_parent.insert(local.embed[e]);
    }
    auto n = Subgroup::trusted(x, m_parent);
    // Conjugates of M by elements of Y are M again, so one coset
    // representative of Y per coset suffices.
    ElemSet covered(x.order());
    for (Elem r = 0; r < x.order(); ++r) {
      if (covered.contains(r)) {
        continue;
      }
      for (Elem e : y.members()) {
        covered.insert(x.mul(e, r));
      }
      n = intersect(n, conjugate(Subgroup::trusted(x, m_parent), r));
    }

    if (!is_normal(n) || !is_p_power(n.index(), p) || product_set(f, n).contains(g)) {
      throw Error(ErrorKind::PreconditionViolated,
                  "constructed subgroup fails its postcondition");
    }
    return n;
  }

}  // namespace amalgsep
