#pragma once

#include <optional>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/amalgam/roots.hpp"
#include "amalgsep/compat/compat.hpp"
#include "amalgsep/core/numbers.hpp"

namespace amalgsep {

  // A root certificate: g = root^prime with prime != p.
  struct RootWitness {
    FiniteAmalgam::Element root;
    std::uint64_t          prime = 0;
  };

  namespace detail {

    inline void require_isolation_preconditions(FiniteAmalgam const&          g,
                                                FiniteAmalgam::Element const& x,
                                                std::uint64_t                 p) {
      if (!is_prime(p)) {
        throw Error(ErrorKind::PreconditionViolated, std::to_string(p) + " is not prime");
      }
      if (g.element_order(x)) {
        throw Error(ErrorKind::PreconditionViolated, "element has finite order");
      }
      if (!residually_p_certificate(g, p)) {
        throw Error(ErrorKind::PreconditionViolated,
                    "the amalgam is not residually " + std::to_string(p) + "-finite");
      }
    }

    // Only primes dividing the cyclically reduced length can give roots of
    // an element of infinite order.
    inline std::optional<RootWitness> find_root(FiniteAmalgam const&          g,
                                                FiniteAmalgam::Element const& x,
                                                std::uint64_t                 p) {
      auto n = g.cyclically_reduce(x).reduced.length();
      for (auto q : prime_divisors(n)) {
        if (q == p) {
          continue;
        }
        if (auto r = extract_root(g, x, q)) {
          return RootWitness{*r, q};
        }
      }
      return std::nullopt;
    }

  }  // namespace detail

  // <x> is p'-isolated iff x has no q-th root for a prime q != p (for x of
  // infinite order in a residually p-finite amalgam). Returns the root that
  // breaks isolation, if any.
  inline std::optional<RootWitness> isolation_obstruction(FiniteAmalgam const&          g,
                                                          FiniteAmalgam::Element const& x,
                                                          std::uint64_t                 p) {
    detail::require_isolation_preconditions(g, x, p);
    return detail::find_root(g, x, p);
  }

  inline bool is_p_prime_isolated(FiniteAmalgam const&          g,
                                  FiniteAmalgam::Element const& x,
                                  std::uint64_t                 p) {
    return !isolation_obstruction(g, x, p).has_value();
  }

  struct IsolatedClosure {
    FiniteAmalgam::Element generator;  // f
    std::uint64_t          index = 1;  // j with x = f^j, coprime to p
  };

  // Repeatedly takes q-th roots for primes q != p; the syllable length drops
  // by a factor q each time, so this stops.
  inline IsolatedClosure isolated_closure(FiniteAmalgam const&          g,
                                          FiniteAmalgam::Element const& x,
                                          std::uint64_t                 p) {
    detail::require_isolation_preconditions(g, x, p);
    IsolatedClosure out{x, 1};
    while (auto w = detail::find_root(g, out.generator, p)) {
      out.generator = w->root;
      out.index *= w->prime;
    }
    return out;
  }

}  // namespace amalgsep
