#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/compat/compat.hpp"
#include "amalgsep/freegrp/images.hpp"

namespace amalgsep {

  // A normal subgroup of finite index of a factor: a Subgroup for finite
  // factors, the kernel of a GenImages for free ones.
  template <typename F>
  using FactorKernel = std::conditional_t<std::is_same_v<F, FreeFactor>, GenImages, Subgroup>;

  // G_{R,S} = (A/R * B/S; HR/R = KS/S) together with the factor maps of the
  // projection from G.
  template <typename F>
  struct QuotientAmalgam {
    using ParentElement = typename Amalgam<F>::Element;
    using Projection    = std::function<Elem(typename F::Element const&)>;

    FiniteAmalgam   quotient;
    FactorKernel<F> r;
    FactorKernel<F> s;
    Projection      project_a;
    Projection      project_b;

    Elem project_letter(Side side, typename F::Element const& x) const {
      return side == Side::A ? project_a(x) : project_b(x);
    }

    FiniteAmalgam::Element project(Amalgam<F> const& parent, ParentElement const& x) const {
      std::vector<FiniteAmalgam::Letter> out;
      for (auto const& l : parent.letters(x)) {
        out.push_back({l.side, project_letter(l.side, l.value)});
      }
      return quotient.normalize(out);
    }
  };

  namespace detail {

    inline FiniteGroup quotient_with_names(Quotient const& q, FiniteGroup const& g) {
      if (!g.has_names()) {
        return q.group;
      }
      std::vector<std::string> names;
      for (Elem r : q.representatives) {
        names.push_back(g.name(r));
      }
      return FiniteGroup::from_trusted_table(q.group.table(), std::move(names));
    }

  }  // namespace detail

  inline QuotientAmalgam<FiniteFactor> build_quotient_amalgam(FiniteAmalgam const& g,
                                                              Subgroup const&      r,
                                                              Subgroup const&      s) {
    if (!is_compatible(g, r, s)) {
      throw Error(ErrorKind::NotCompatible, "(R & H)phi != S & K");
    }
    auto iso = induced_iso(g, r, s);
    auto qa  = detail::quotient_with_names(iso.qa, g.a().group());
    auto qb  = detail::quotient_with_names(iso.qb, g.b().group());
    std::vector<Elem> ha, kb;
    for (auto [x, y] : iso.map) {
      ha.push_back(x);
      kb.push_back(y);
    }
    auto quotient = build_amalgam(qa, qb, Subgroup::from_members(qa, ha),
                                  Subgroup::from_members(qb, kb), iso.map);
    auto pa       = iso.qa.projection;
    auto pb       = iso.qb.projection;
    return {quotient, r, s, [pa](Elem const& x) { return pa(x); },
            [pb](Elem const& x) { return pb(x); }};
  }

  // Images of the generators of H (resp. K) under the factor map: the
  // restriction to the amalgamated subgroup, in its own free basis.
  inline GenImages restrict_to(GenImages const& psi, std::vector<FreeWord> const& gens) {
    GenImages out{static_cast<std::uint32_t>(gens.size()), psi.target, {}};
    for (auto const& w : gens) {
      out.images.push_back(psi(w));
    }
    return out;
  }

  inline void require_factor_maps(FreeAmalgam const& g, GenImages const& psi_a,
                                  GenImages const& psi_b) {
    if (psi_a.rank != g.a().rank() || psi_b.rank != g.b().rank()) {
      throw Error(ErrorKind::RankMismatch, "factor map ranks do not match the factors");
    }
  }

  // Free factors: the kernels R, S of psi_a, psi_b are compatible when the
  // restrictions of psi_a and psi_b o phi to H have the same kernel.
  inline bool is_compatible(FreeAmalgam const& g, GenImages const& psi_a,
                            GenImages const& psi_b) {
    require_factor_maps(g, psi_a, psi_b);
    return kernels_equal(restrict_to(psi_a, g.a().subgroup_generators()),
                         restrict_to(psi_b, g.b().subgroup_generators()));
  }

  inline QuotientAmalgam<FreeFactor> build_quotient_amalgam(FreeAmalgam const& g,
                                                            GenImages const&   psi_a,
                                                            GenImages const&   psi_b) {
    if (!is_compatible(g, psi_a, psi_b)) {
      throw Error(ErrorKind::NotCompatible,
                  "the factor maps restricted to H and K have different kernels");
    }
    auto ia = induced_group(psi_a.image());
    auto ib = induced_group(psi_b.image());

    auto ra = restrict_to(psi_a, g.a().subgroup_generators());
    auto rb = restrict_to(psi_b, g.b().subgroup_generators());
    std::vector<std::vector<Elem>> pairs;
    for (std::size_t i = 0; i < ra.images.size(); ++i) {
      pairs.push_back({ra.images[i], rb.images[i]});
    }
    auto diag = generated_in_product({psi_a.target, psi_b.target}, pairs,
                                     psi_a.target.order() * psi_b.target.order());
    std::map<Elem, Elem> phi;
    std::vector<Elem>    hq, kq;
    for (auto const& t : diag.tuples) {
      Elem x = ia.local_of[t[0]], y = ib.local_of[t[1]];
      phi[x] = y;
      hq.push_back(x);
      kq.push_back(y);
    }
    auto quotient = build_amalgam(ia.group, ib.group, Subgroup::from_members(ia.group, hq),
                                  Subgroup::from_members(ib.group, kq), phi);
    return {quotient, psi_a, psi_b,
            [psi_a, local = ia.local_of](FreeWord const& w) { return local[psi_a(w)]; },
            [psi_b, local = ib.local_of](FreeWord const& w) { return local[psi_b(w)]; }};
  }

  // The quotient amalgam is residually p-finite exactly when (1, 1) is
  // p-compatible in it.
  template <typename F>
  bool is_residually_p(QuotientAmalgam<F> const& qa, std::uint64_t p) {
    return residually_p_certificate(qa.quotient, p).has_value();
  }

  inline bool is_residually_p(FiniteAmalgam const& g, std::uint64_t p) {
    return residually_p_certificate(g, p).has_value();
  }

  // Free factors, p-mode: the pair is in the p-family when both quotients
  // are p-groups and the quotient amalgam is residually p-finite.
  inline bool is_p_compatible(FreeAmalgam const& g, GenImages const& psi_a,
                              GenImages const& psi_b, std::uint64_t p) {
    if (!is_compatible(g, psi_a, psi_b)) {
      return false;
    }
    if (!is_p_power(psi_a.index(), p) || !is_p_power(psi_b.index(), p)) {
      return false;
    }
    return is_residually_p(build_quotient_amalgam(g, psi_a, psi_b), p);
  }

}  // namespace amalgsep
