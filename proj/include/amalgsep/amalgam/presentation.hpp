#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "amalgsep/amalgam/factor.hpp"
#include "amalgsep/core/error.hpp"
#include "amalgsep/fingrp/subgroups.hpp"

namespace amalgsep {

  enum class Side : std::uint8_t { A = 0, B = 1 };

  constexpr Side other(Side s) noexcept {
    return s == Side::A ? Side::B : Side::A;
  }

  inline char side_char(Side s) noexcept {
    return s == Side::A ? 'A' : 'B';
  }

  // A factor element tagged with the factor it comes from.
  template <typename E>
  struct Tagged {
    Side side = Side::A;
    E    value{};

    friend bool operator==(Tagged const&, Tagged const&) = default;
    friend auto operator<=>(Tagged const&, Tagged const&) = default;
  };

  template <typename F>
  class Amalgam;

  // Normal form core * s1 * ... * sn: the core lies in the amalgamated
  // subgroup (stored on the A side), the syllables are non-trivial coset
  // representatives alternating between the factors.
  template <typename F>
  class AmalgamElement {
   public:
    using E = typename F::Element;

    AmalgamElement() = default;

    E const& core() const noexcept {
      return _core;
    }
    std::vector<Tagged<E>> const& syllables() const noexcept {
      return _syllables;
    }
    std::size_t length() const noexcept {
      return _syllables.size();
    }
    void const* owner() const noexcept {
      return _owner;
    }

    friend bool operator==(AmalgamElement const& x, AmalgamElement const& y) {
      return x._owner == y._owner && x._core == y._core && x._syllables == y._syllables;
    }

    // Arbitrary but fixed total order, for containers.
    friend bool operator<(AmalgamElement const& x, AmalgamElement const& y) {
      if (x._syllables.size() != y._syllables.size()) {
        return x._syllables.size() < y._syllables.size();
      }
      if (x._core != y._core) {
        return x._core < y._core;
      }
      return x._syllables < y._syllables;
    }

   private:
    friend class Amalgam<F>;

    void const*            _owner = nullptr;
    E                      _core{};
    std::vector<Tagged<E>> _syllables;
  };

  template <typename F>
  struct CyclicReduction {
    AmalgamElement<F> reduced;    // y
    AmalgamElement<F> conjugator;  // c with x = c y c^-1
  };

  struct CyclicMembership {
    bool         member = false;
    std::int64_t exponent = 0;    // valid when member
    std::string  reason;          // tag when not a member

    static CyclicMembership yes(std::int64_t k) {
      return {true, k, {}};
    }
    static CyclicMembership no(std::string why) {
      return {false, 0, std::move(why)};
    }
  };

  // (A * B; H = K, phi). Copies share the immutable description.
  template <typename F>
  class Amalgam {
   public:
    using E       = typename F::Element;
    using Element = AmalgamElement<F>;
    using Letter  = Tagged<E>;
    using CoreMap = std::function<E(E const&)>;

    Amalgam() = default;

    // phi maps H (in A) onto K (in B); phi_inv is its inverse. Callers are
    // responsible for having checked that they are mutually inverse
    // isomorphisms; the build_* functions do.
    Amalgam(F a, F b, CoreMap phi, CoreMap phi_inv)
        : _d(std::make_shared<Data>(Data{std::move(a), std::move(b), std::move(phi),
                                         std::move(phi_inv)})) {}

    F const& factor(Side s) const noexcept {
      return s == Side::A ? _d->a : _d->b;
    }
    F const& a() const noexcept {
      return _d->a;
    }
    F const& b() const noexcept {
      return _d->b;
    }
    E phi(E const& h) const {
      return _d->phi(h);
    }
    E phi_inv(E const& k) const {
      return _d->phi_inv(k);
    }

    // An amalgamated-subgroup element, given on the A side, moved to side s.
    E core_to(Side s, E const& h) const {
      return s == Side::A ? h : _d->phi(h);
    }
    E core_from(Side s, E const& h) const {
      return s == Side::A ? h : _d->phi_inv(h);
    }

    Element identity() const {
      Element x;
      x._owner = _d.get();
      x._core  = _d->a.identity();
      return x;
    }

    bool is_identity(Element const& x) const {
      return x._syllables.empty() && _d->a.is_identity(x._core);
    }

    // letter * x
    Element left_multiply(Letter const& l, Element x) const {
      check(x);
      F const& f   = factor(l.side);
      E        y   = f.multiply(l.value, core_to(l.side, x._core));
      bool     joins = !x._syllables.empty() && x._syllables.front().side == l.side;
      if (joins) {
        y = f.multiply(y, x._syllables.front().value);
        x._syllables.erase(x._syllables.begin());
      }
      E t = f.transversal(y);
      x._core = core_from(l.side, f.subgroup_part(y));
      if (!f.is_identity(t)) {
        x._syllables.insert(x._syllables.begin(), Letter{l.side, std::move(t)});
      }
      return x;
    }

    Element letter(Side s, E const& value) const {
      return left_multiply(Letter{s, value}, identity());
    }

    Element normalize(std::span<Letter const> letters) const {
      Element x = identity();
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        x = left_multiply(*it, std::move(x));
      }
      return x;
    }

    Element normalize(std::vector<Letter> const& letters) const {
      return normalize(std::span<Letter const>(letters));
    }

    // The normal form spelled as letters: core (if non-trivial) then syllables.
    std::vector<Letter> letters(Element const& x) const {
      std::vector<Letter> out;
      if (!_d->a.is_identity(x._core)) {
        out.push_back({Side::A, x._core});
      }
      out.insert(out.end(), x._syllables.begin(), x._syllables.end());
      return out;
    }

    Element multiply(Element const& x, Element const& y) const {
      check(x);
      check(y);
      Element r  = y;
      auto    ls = letters(x);
      for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        r = left_multiply(*it, std::move(r));
      }
      return r;
    }

    Element invert(Element const& x) const {
      check(x);
      auto                ls = letters(x);
      std::vector<Letter> inv;
      for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        inv.push_back({it->side, factor(it->side).inverse(it->value)});
      }
      return normalize(inv);
    }

    Element power(Element const& x, std::int64_t k) const {
      Element base = k < 0 ? invert(x) : x;
      Element r    = identity();
      for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
        r = multiply(r, base);
      }
      return r;
    }

    // c^-1 x c
    Element conjugate(Element const& x, Element const& c) const {
      return multiply(multiply(invert(c), x), c);
    }

    std::size_t syllable_length(Element const& x) const {
      check(x);
      return x.length();
    }

    // Element made from a normal form; validates it.
    Element from_normal_form(E const& core, std::vector<Letter> const& syllables) const {
      std::vector<Letter> ls{{Side::A, core}};
      ls.insert(ls.end(), syllables.begin(), syllables.end());
      Element x = normalize(ls);
      if (!(x._core == core) || x._syllables != syllables) {
        throw Error(ErrorKind::InvalidInput, "not a normal form");
      }
      return x;
    }

    // Prefix core * s1 * ... * sm of the normal form.
    Element prefix(Element const& x, std::size_t m) const {
      Element r    = x;
      r._syllables.resize(std::min(m, x._syllables.size()));
      return r;
    }

    // For x of length at most one: the factor element it equals.
    Letter as_factor_element(Element const& x) const {
      if (x._syllables.empty()) {
        return {Side::A, x._core};
      }
      if (x._syllables.size() > 1) {
        throw Error(ErrorKind::InvalidInput, "element does not lie in a factor");
      }
      Side s = x._syllables.front().side;
      return {s, factor(s).multiply(core_to(s, x._core), x._syllables.front().value)};
    }

    std::string to_string(Element const& x) const {
      auto ls = letters(x);
      if (ls.empty()) {
        return "1";
      }
      std::string out;
      for (auto const& l : ls) {
        if (!out.empty()) {
          out += ' ';
        }
        out += side_char(l.side);
        out += ':';
        out += factor(l.side).name(l.value);
      }
      return out;
    }

    void check(Element const& x) const {
      if (x._owner != _d.get()) {
        throw Error(ErrorKind::PresentationMismatch,
                    "element belongs to a different amalgam presentation");
      }
    }

    friend bool operator==(Amalgam const& x, Amalgam const& y) noexcept {
      return x._d == y._d;
    }

    ////////////////////////////////////////////////////////////////////////
    // Cyclic reduction, orders, cyclic subgroup membership
    ////////////////////////////////////////////////////////////////////////

    // x = c y c^-1 with y cyclically reduced and of least length among
    // conjugates. While the first and last syllables share a factor, the
    // leading letter (with the core) is moved to the end.
    CyclicReduction<F> cyclically_reduce(Element const& x) const {
      check(x);
      Element y = x;
      Element c = identity();
      while (y._syllables.size() >= 2
             && y._syllables.front().side == y._syllables.back().side) {
        Element u = prefix(y, 1);
        y         = conjugate(y, u);
        c         = multiply(c, u);
      }
      if (y._syllables.size() == 1) {
        auto l = as_factor_element(y);
        if (auto z = factor(l.side).conjugator_into_subgroup(l.value)) {
          Element u = letter(l.side, *z);
          y         = conjugate(y, u);
          c         = multiply(c, u);
        }
      }
      return {y, c};
    }

    bool is_cyclically_reduced(Element const& x) const {
      return x._syllables.size() <= 1 || x._syllables.front().side != x._syllables.back().side;
    }

    // nullopt for infinite order.
    std::optional<std::uint64_t> element_order(Element const& x) const {
      auto y = cyclically_reduce(x).reduced;
      if (y.length() >= 2) {
        return std::nullopt;
      }
      auto l = as_factor_element(y);
      return factor(l.side).order(l.value);
    }

    CyclicMembership cyclic_member(Element const& h, Element const& g) const {
      check(h);
      check(g);
      if (is_identity(h)) {
        return CyclicMembership::yes(0);
      }
      if (is_identity(g)) {
        return CyclicMembership::no("trivial-subgroup");
      }
      auto [y, c] = cyclically_reduce(g);
      Element hy  = conjugate(h, c);
      if (y.length() >= 2) {
        if (hy.length() % y.length() != 0) {
          return CyclicMembership::no("length-not-multiple");
        }
        auto k = static_cast<std::int64_t>(hy.length() / y.length());
        for (auto kk : {k, -k}) {
          if (power(y, kk) == hy) {
            return CyclicMembership::yes(kk);
          }
        }
        return CyclicMembership::no("power-mismatch");
      }
      if (hy.length() > 1) {
        return CyclicMembership::no("length-exceeds-factor");
      }
      if (auto ord = element_order(y)) {
        Element p = identity();
        for (std::uint64_t k = 0; k < *ord; ++k) {
          if (p == hy) {
            return CyclicMembership::yes(static_cast<std::int64_t>(k));
          }
          p = multiply(p, y);
        }
        return CyclicMembership::no("not-a-power");
      }
      // Infinite cyclic subgroup of a free factor: both elements are words in
      // one factor and word length pins down the exponent.
      auto ly = as_factor_element(y);
      auto lh = as_factor_element(hy);
      if (hy.length() == 1 && lh.side != ly.side) {
        return CyclicMembership::no("different-factor");
      }
      if (hy.length() == 0) {
        lh = {ly.side, core_to(ly.side, hy._core)};
      }
      return free_cyclic_member(lh.value, ly.value);
    }

   private:
    struct Data {
      F       a, b;
      CoreMap phi, phi_inv;
    };

    CyclicMembership free_cyclic_member(E const& h, E const& g) const {
      if constexpr (std::is_same_v<E, FreeWord>) {
        if (auto k = free_power_exponent(h, g)) {
          return CyclicMembership::yes(*k);
        }
      }
      return CyclicMembership::no("not-a-power");
    }

    std::shared_ptr<Data const> _d;
  };

  using FiniteAmalgam = Amalgam<FiniteFactor>;
  using FreeAmalgam   = Amalgam<FreeFactor>;

  ////////////////////////////////////////////////////////////////////////
  // Construction with validation
  ////////////////////////////////////////////////////////////////////////

  // phi given on all members of H; checked to be an isomorphism onto K.
  inline FiniteAmalgam build_amalgam(FiniteGroup const&          a,
                                     FiniteGroup const&          b,
                                     Subgroup const&             h,
                                     Subgroup const&             k,
                                     std::map<Elem, Elem> const& phi) {
    if (!(h.parent() == a) || !(k.parent() == b)) {
      throw Error(ErrorKind::NotSubgroup, "H and K must be subgroups of A and B");
    }
    if (phi.size() != h.order()) {
      throw Error(ErrorKind::NotIsomorphism,
                  "phi is defined on " + std::to_string(phi.size()) + " elements, H has "
                      + std::to_string(h.order()));
    }
    std::vector<Elem> fwd(a.order(), 0), bwd(b.order(), 0);
    std::vector<bool> hit(b.order(), false);
    for (auto [x, y] : phi) {
      if (!h.contains(x)) {
        throw Error(ErrorKind::NotIsomorphism, "phi is defined at " + a.name(x)
                                                   + ", which is not in H");
      }
      if (!k.contains(y)) {
        throw Error(ErrorKind::NotIsomorphism,
                    "phi(" + a.name(x) + ") = " + b.name(y) + " is not in K");
      }
      if (hit[y]) {
        throw Error(ErrorKind::NotIsomorphism, "phi is not injective at " + b.name(y));
      }
      hit[y] = true;
      fwd[x] = y;
      bwd[y] = x;
    }
    if (h.order() != k.order()) {
      throw Error(ErrorKind::NotIsomorphism, "|H| = " + std::to_string(h.order())
                                                 + " but |K| = " + std::to_string(k.order()));
    }
    for (Elem x : h.members()) {
      for (Elem y : h.members()) {
        if (fwd[a.mul(x, y)] != b.mul(fwd[x], fwd[y])) {
          throw Error(ErrorKind::NotIsomorphism,
                      "phi(" + a.name(x) + " * " + a.name(y) + ") != phi(" + a.name(x)
                          + ") * phi(" + a.name(y) + ")");
        }
      }
    }
    return FiniteAmalgam(
        FiniteFactor(a, h), FiniteFactor(b, k), [fwd](Elem const& x) { return fwd[x]; },
        [bwd](Elem const& y) { return bwd[y]; });
  }

  // phi: H[i] -> K[i] on free bases of H and K.
  inline FreeAmalgam build_free_amalgam(std::vector<std::string> a_names,
                                        std::vector<FreeWord>    h_gens,
                                        std::vector<std::string> b_names,
                                        std::vector<FreeWord>    k_gens) {
    if (h_gens.size() != k_gens.size()) {
      throw Error(ErrorKind::NotIsomorphism, "H and K have different numbers of generators");
    }
    FreeFactor fa(std::move(a_names), h_gens);
    FreeFactor fb(std::move(b_names), k_gens);
    if (!fa.graph().freely_generated()) {
      throw Error(ErrorKind::NotIsomorphism, "the generators of H are not a free basis");
    }
    if (!fb.graph().freely_generated()) {
      throw Error(ErrorKind::NotIsomorphism, "the generators of K are not a free basis");
    }
    auto ga = fa.graph();
    auto gb = fb.graph();
    return FreeAmalgam(
        fa, fb,
        [ga, k_gens](FreeWord const& x) {
          auto e = ga.express(x);
          if (!e) {
            throw Error(ErrorKind::InvalidInput, "element is not in H");
          }
          return e->substitute(k_gens);
        },
        [gb, h_gens](FreeWord const& y) {
          auto e = gb.express(y);
          if (!e) {
            throw Error(ErrorKind::InvalidInput, "element is not in K");
          }
          return e->substitute(h_gens);
        });
  }

}  // namespace amalgsep
