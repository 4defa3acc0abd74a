#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "amalgsep/amalgam/isolation.hpp"
#include "amalgsep/compat/family.hpp"
#include "amalgsep/core/parallel.hpp"
#include "amalgsep/engine/homs.hpp"

namespace amalgsep {

  struct Bounds {
    std::size_t   catalog_order   = 48;   // kernels of free factors
    std::size_t   witness_order   = 256;  // targets of the final homomorphism
    std::size_t   max_refinements = 4;    // quotient amalgams searched for a witness
    std::uint64_t size_cap        = kDefaultImageCap;
  };

  enum class WitnessOutcome { Separated, Member, Obstructed };
  enum class Obstruction { None, NotIsolated, LambdaFamily, BoundExhausted };

  inline std::string_view to_string(WitnessOutcome o) noexcept {
    switch (o) {
      case WitnessOutcome::Separated: return "separated";
      case WitnessOutcome::Member: return "member";
      case WitnessOutcome::Obstructed: return "obstructed";
    }
    return "?";
  }

  inline std::string_view to_string(Obstruction o) noexcept {
    switch (o) {
      case Obstruction::None: return "none";
      case Obstruction::NotIsolated: return "not_isolated";
      case Obstruction::LambdaFamily: return "lambda_family";
      case Obstruction::BoundExhausted: return "bound_exhausted";
    }
    return "?";
  }

  template <typename F>
  struct WitnessReport {
    using Element = typename Amalgam<F>::Element;

    Element       h;
    Element       g;
    CompatMode    mode  = CompatMode::Plain;
    std::uint64_t prime = 0;

    WitnessOutcome outcome  = WitnessOutcome::Obstructed;
    std::int64_t   exponent = 0;  // member: h = g^exponent

    Obstruction            obstruction = Obstruction::None;
    std::optional<Element> root;  // not_isolated: root^root_prime = g (after cyclic reduction)
    std::uint64_t          root_prime  = 0;
    Side                   lambda_side = Side::A;
    std::size_t            bound       = 0;

    // Casework on the cyclically reduced g (length n) and the transported h
    // (length m); n_prime is the p'-part of n.
    std::size_t n = 0, m = 0, n_prime = 0;
    std::string route;

    // Separated: theta maps the quotient amalgam into the target; a_map and
    // b_map give the composite on A and B (element images for finite
    // factors, generator images for free ones).
    std::string               target_label;
    FiniteGroup               target;
    std::optional<AmalgamHom> theta;
    std::vector<Elem>         a_map, b_map;
    std::string               pair_a, pair_b;  // kernel targets for free factors
    Elem                      h_image = 0, g_image = 0;
    std::size_t               image_order = 0;
    std::size_t               quotients_tried = 0;
    std::vector<std::string>  skipped_targets;
    bool                      verified = false;
  };

  namespace detail {

    // Image of x under the composite map given on factor generators or
    // elements.
    inline Elem composite_image(FiniteAmalgam const& g, std::vector<Elem> const& a_map,
                                std::vector<Elem> const& b_map, FiniteGroup const& target,
                                FiniteAmalgam::Element const& x) {
      Elem r = FiniteGroup::identity();
      for (auto const& l : g.letters(x)) {
        r = target.mul(r, (l.side == Side::A ? a_map : b_map).at(l.value));
      }
      return r;
    }

    inline Elem composite_image(FreeAmalgam const& g, std::vector<Elem> const& a_map,
                                std::vector<Elem> const& b_map, FiniteGroup const& target,
                                FreeAmalgam::Element const& x) {
      GenImages ua{g.a().rank(), target, a_map};
      GenImages ub{g.b().rank(), target, b_map};
      Elem      r = FiniteGroup::identity();
      for (auto const& l : g.letters(x)) {
        r = target.mul(r, l.side == Side::A ? ua(l.value) : ub(l.value));
      }
      return r;
    }

    struct ThetaSearch {
      std::optional<std::size_t> target_index;
      std::optional<AmalgamHom>  theta;
      std::vector<std::string>   skipped;
    };

    // First target (catalog order) and first homomorphism into it with
    // theta(h) outside <theta(g)>.
    inline ThetaSearch find_theta(FiniteAmalgam const&             q,
                                  FiniteAmalgam::Element const&    h,
                                  FiniteAmalgam::Element const&    g,
                                  std::vector<CatalogEntry> const& targets) {
      QuotientHomSearch                      search(q);
      std::vector<std::optional<AmalgamHom>> found(targets.size());
      std::vector<char>                      capped(targets.size(), 0);
      ThetaSearch                            out;
      out.target_index = parallel_find_first(targets.size(), [&](std::size_t t) {
        auto target = catalog_group(targets[t]);
        try {
          search.for_each(target, [&](AmalgamHom const& hom) {
            if (!cyclic_subgroup(target, hom(g)).contains(hom(h))) {
              found[t] = hom;
              return false;
            }
            return true;
          });
        } catch (Error const& e) {
          if (e.kind() != ErrorKind::SizeCap) {
            throw;
          }
          capped[t] = 1;
        }
        return found[t].has_value();
      });
      std::size_t const scanned = out.target_index ? *out.target_index + 1 : targets.size();
      for (std::size_t t = 0; t < scanned; ++t) {
        if (capped[t]) {
          out.skipped.push_back(targets[t].label);
        }
      }
      if (out.target_index) {
        out.theta = found[*out.target_index];
      }
      return out;
    }

    inline std::string casework_route(std::size_t n, std::size_t m, std::size_t n_prime,
                                      CompatMode mode) {
      if (n <= 1) {
        return "factor";
      }
      if (mode == CompatMode::Plain) {
        return m % n != 0 ? "length-divisibility" : "refinement";
      }
      return (m * n_prime) % n != 0 ? "case-1" : "case-2";
    }

    template <typename F>
    void finish_separated(Amalgam<F> const& g, WitnessReport<F>& r) {
      r.outcome     = WitnessOutcome::Separated;
      r.h_image     = composite_image(g, r.a_map, r.b_map, r.target, r.h);
      r.g_image     = composite_image(g, r.a_map, r.b_map, r.target, r.g);
      r.image_order = r.theta->image().order();
      r.verified    = !cyclic_subgroup(r.target, r.g_image).contains(r.h_image)
                   && (r.mode == CompatMode::Plain || is_p_power(r.image_order, r.prime));
      if (!r.verified) {
        throw Error(ErrorKind::PreconditionViolated, "witness failed re-verification");
      }
    }

  }  // namespace detail

  // For finite factors the faithful pair (1, 1).
  inline CompatiblePair find_length_preserving_pair(FiniteAmalgam const& g) {
    return {CompatMode::Plain, Subgroup::trivial(g.a().group()),
            Subgroup::trivial(g.b().group()), std::nullopt};
  }

  // For free factors: the first family pair of the catalog under which every
  // element keeps its syllable length.
  inline std::pair<std::size_t, std::size_t> find_length_preserving_pair(
      FreeAmalgam const& g, FreePairCatalog const& cat,
      std::vector<FreeAmalgam::Element> const& elements) {
    for (auto [i, j] : cat.pairs()) {
      auto q  = build_quotient_amalgam(g, cat.a_side()[i].map, cat.b_side()[j].map);
      bool ok = true;
      for (auto const& x : elements) {
        ok = ok && q.project(g, x).length() == x.length();
      }
      if (ok) {
        return {i, j};
      }
    }
    throw Error(ErrorKind::BoundExhausted,
                "no pair in the catalog up to order " + std::to_string(cat.max_order())
                    + " preserves the syllable lengths");
  }

  // Decides whether h can be separated from <g> by a homomorphism onto a
  // finite group (plain) or a finite p-group (p-mode), returning a verified
  // certificate, the exponent when h lies in <g>, or the reason none was
  // produced.
  template <typename F>
  WitnessReport<F> separate_from_cyclic(Amalgam<F> const&                   g,
                                        typename Amalgam<F>::Element const& h,
                                        typename Amalgam<F>::Element const& gen,
                                        CompatMode                          mode,
                                        std::uint64_t                       p      = 2,
                                        Bounds const&                       bounds = {}) {
    using Element = typename Amalgam<F>::Element;
    if (mode == CompatMode::P && !is_prime(p)) {
      throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    }
    if (g.is_identity(gen)) {
      throw Error(ErrorKind::InvalidInput, "g must be nontrivial");
    }
    WitnessReport<F> r;
    r.h     = h;
    r.g     = gen;
    r.mode  = mode;
    r.prime = mode == CompatMode::P ? p : 0;

    // Conjugate both so that g is cyclically reduced.
    auto const [g1, c] = g.cyclically_reduce(gen);
    Element const h1   = g.conjugate(h, c);
    if (auto mem = g.cyclic_member(h1, g1); mem.member) {
      r.outcome  = WitnessOutcome::Member;
      r.exponent = mem.exponent;
      return r;
    }
    r.n       = g1.length();
    r.m       = h1.length();
    r.n_prime = mode == CompatMode::P ? split_prime_part(r.n, p).coprime_part : r.n;
    r.route   = detail::casework_route(r.n, r.m, r.n_prime, mode);

    auto const targets = catalog_entries(bounds.witness_order, mode == CompatMode::P, p);

    // A factor element g with h in the same factor: the family verdict
    // decides whether the factor-level step can succeed.
    auto lambda_check = [&](auto&& verdict_for) {
      for (Side s : {Side::A, Side::B}) {
        auto gx = factor_component(g, g1, s);
        auto hx = factor_component(g, h1, s);
        if (gx && hx) {
          auto v = verdict_for(s, *gx);
          if (v.outcome == FamilyOutcome::NotSeparated) {
            r.outcome     = WitnessOutcome::Obstructed;
            r.obstruction = Obstruction::LambdaFamily;
            r.lambda_side = s;
            return true;
          }
        }
      }
      return false;
    };

    if constexpr (std::is_same_v<F, FiniteFactor>) {
      if (mode == CompatMode::P && !g.element_order(g1)) {
        if (auto w = isolation_obstruction(g, g1, p)) {
          r.outcome     = WitnessOutcome::Obstructed;
          r.obstruction = Obstruction::NotIsolated;
          r.root        = w->root;
          r.root_prime  = w->prime;
          return r;
        }
      }
      auto found        = detail::find_theta(g, h1, g1, targets);
      r.quotients_tried = 1;
      r.skipped_targets = found.skipped;
      if (found.theta) {
        r.target_label = targets[*found.target_index].label;
        r.target       = found.theta->target;
        r.theta        = found.theta;
        r.a_map        = found.theta->a_images;
        r.b_map        = found.theta->b_images;
        detail::finish_separated(g, r);
        return r;
      }
      if (r.n <= 1 && lambda_check([&](Side s, Elem x) {
            return family_separability(g, s, x, mode, p);
          })) {
        return r;
      }
      r.outcome     = WitnessOutcome::Obstructed;
      r.obstruction = Obstruction::BoundExhausted;
      r.bound       = bounds.witness_order;
      return r;
    } else {
      FreePairCatalog cat(g, bounds.catalog_order, mode, p, bounds.size_cap);
      for (auto [i, j] : cat.pairs()) {
        if (r.quotients_tried >= bounds.max_refinements) {
          break;
        }
        auto const& ka = cat.a_side()[i];
        auto const& kb = cat.b_side()[j];
        auto        q  = build_quotient_amalgam(g, ka.map, kb.map);
        auto        hq = q.project(g, h1);
        auto        gq = q.project(g, g1);
        if (gq.length() != g1.length() || hq.length() != h1.length()) {
          continue;
        }
        if (q.quotient.cyclic_member(hq, gq).member) {
          continue;
        }
        // In p-mode a pair only helps when hq avoids the isolated closure of
        // gq: finite p-groups cannot tell gq from its p'-roots.
        if (mode == CompatMode::P && !q.quotient.element_order(gq)) {
          auto closure = isolated_closure(q.quotient, gq, p);
          if (q.quotient.cyclic_member(hq, closure.generator).member) {
            continue;
          }
        }
        ++r.quotients_tried;
        auto found = detail::find_theta(q.quotient, hq, gq, targets);
        r.skipped_targets.insert(r.skipped_targets.end(), found.skipped.begin(),
                                 found.skipped.end());
        if (!found.theta) {
          continue;
        }
        r.target_label = targets[*found.target_index].label;
        r.target       = found.theta->target;
        r.theta        = found.theta;
        r.pair_a       = ka.target_label;
        r.pair_b       = kb.target_label;
        for (std::uint32_t x = 0; x < g.a().rank(); ++x) {
          r.a_map.push_back(found.theta->a_images[q.project_a(FreeWord::generator(x))]);
        }
        for (std::uint32_t x = 0; x < g.b().rank(); ++x) {
          r.b_map.push_back(found.theta->b_images[q.project_b(FreeWord::generator(x))]);
        }
        detail::finish_separated(g, r);
        return r;
      }
      if (r.n <= 1 && lambda_check([&](Side s, FreeWord const& x) {
            return family_separability(cat, s, x);
          })) {
        r.bound = bounds.catalog_order;
        return r;
      }
      r.outcome     = WitnessOutcome::Obstructed;
      r.obstruction = Obstruction::BoundExhausted;
      r.bound       = bounds.catalog_order;
      return r;
    }
  }

}  // namespace amalgsep
