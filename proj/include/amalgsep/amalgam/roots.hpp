#pragma once

#include <optional>

#include "amalgsep/amalgam/presentation.hpp"

namespace amalgsep {

  // Some h with h^q = g, or nullopt.
  //
  // Roots of g correspond to roots of its cyclic reduction y. When
  // l(y) = n >= 2 a root r is itself cyclically reduced of length n/q, and
  // since r * r^(q-1) multiplies without cancellation, r equals the
  // length-(n/q) prefix of y's normal form up to a right factor from the
  // amalgamated subgroup. So prefix * e over e in H covers every root.
  //
  // When l(y) <= 1 the root is sought among elements of the factor(s)
  // containing y.
  inline std::optional<FiniteAmalgam::Element> extract_root(FiniteAmalgam const&          g,
                                                            FiniteAmalgam::Element const& x,
                                                            std::uint64_t                 q) {
    using Element = FiniteAmalgam::Element;
    if (q == 0) {
      throw Error(ErrorKind::InvalidInput, "root degree must be positive");
    }
    auto [y, c]      = g.cyclically_reduce(x);
    auto const qq    = static_cast<std::int64_t>(q);
    auto const found = [&](Element const& r) { return g.multiply(g.multiply(c, r), g.invert(c)); };

    if (y.length() >= 2) {
      if (y.length() % q != 0) {
        return std::nullopt;
      }
      auto head = g.prefix(y, y.length() / q);
      for (Elem e : g.a().subgroup().members()) {
        auto cand = g.multiply(head, g.letter(Side::A, e));
        if (g.power(cand, qq) == y) {
          return found(cand);
        }
      }
      return std::nullopt;
    }

    auto              l = g.as_factor_element(y);
    std::vector<Side> sides{l.side};
    if (y.length() == 0) {
      sides = {Side::A, Side::B};
    }
    for (Side s : sides) {
      auto const& grp    = g.factor(s).group();
      Elem        target = y.length() == 0 ? g.core_to(s, y.core()) : l.value;
      for (Elem z = 0; z < grp.order(); ++z) {
        if (grp.pow(z, qq) == target) {
          return found(g.letter(s, z));
        }
      }
    }
    return std::nullopt;
  }

}  // namespace amalgsep
