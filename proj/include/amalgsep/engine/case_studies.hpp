#pragma once

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amalgsep/amalgam/isolation.hpp"
#include "amalgsep/compat/family.hpp"
#include "amalgsep/engine/witness.hpp"

namespace amalgsep {

  struct CaseAssertion {
    std::string name;
    std::string claim;  // the mathematical statement being checked
    bool        passed = false;
    std::string detail;
  };

  struct CaseStudyReport {
    std::string                                      case_id;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<CaseAssertion>                       assertions;
    std::vector<std::pair<std::string, std::string>> artifacts;

    bool passed() const {
      for (auto const& a : assertions) {
        if (!a.passed) {
          return false;
        }
      }
      return !assertions.empty();
    }
  };

  struct CaseParams {
    std::uint64_t p      = 2;
    std::uint64_t q      = 3;
    std::uint64_t n      = 2;
    std::size_t   bound  = 48;
    std::size_t   trials = 100;
    std::uint64_t seed   = 1;
  };

  namespace detail {

    inline std::string images_string(GenImages const& u, std::vector<std::string> const& names) {
      std::string out;
      for (std::size_t i = 0; i < u.images.size(); ++i) {
        if (i) {
          out += ", ";
        }
        out += names[i] + " -> " + u.target.name(u.images[i]);
      }
      return out;
    }

  }  // namespace detail

  // <a, b; a^p = b^p> as an amalgam of two infinite cyclic groups.
  inline FreeAmalgam power_amalgam(std::uint64_t p) {
    auto w = FreeWord::generator(0).power(static_cast<std::int64_t>(p));
    return build_free_amalgam({"a"}, {w}, {"b"}, {w});
  }

  // A = F(a, b), B = F(c, d), H = <a, b^-1 a b>, K = <c, d^-1 c^2 d>, with
  // a -> c and b^-1 a b -> d^-1 c^2 d.
  inline FreeAmalgam thm21_amalgam() {
    auto a = FreeWord::generator(0), b = FreeWord::generator(1);
    auto c = FreeWord::generator(0), d = FreeWord::generator(1);
    return build_free_amalgam({"a", "b"}, {a, b.inverse() * a * b}, {"c", "d"},
                              {c, d.inverse() * c.power(2) * d});
  }

  inline CaseStudyReport run_thm21(CaseParams const& params) {
    CaseStudyReport rep;
    rep.case_id    = "thm21";
    rep.parameters = {{"bound", std::to_string(params.bound)}};
    auto const g   = thm21_amalgam();
    FreePairCatalog cat(g, params.bound, CompatMode::Plain);
    auto const      a  = FreeWord::generator(0);
    auto const      a2 = a.power(2);

    std::size_t               pairs = 0, even = 0, outside = 0;
    std::map<std::size_t, std::size_t> order_counts;
    std::optional<std::pair<std::size_t, std::size_t>> seven;
    for (std::size_t i = 0; i < cat.a_side().size(); ++i) {
      auto const& partners = cat.partners_of_a(i);
      if (partners.empty()) {
        continue;
      }
      auto const& u     = cat.a_side()[i].map;
      auto const  order = u.target.element_order(u(a));
      pairs += partners.size();
      order_counts[order] += partners.size();
      if (order % 2 == 0) {
        even += partners.size();
      }
      if (!cyclic_subgroup(u.target, u(a2)).contains(u(a))) {
        outside += partners.size();
      }
      if (order == 7 && !seven) {
        seven = std::pair{i, partners.front()};
      }
    }

    std::string orders;
    for (auto [o, k] : order_counts) {
      orders += (orders.empty() ? "" : ", ") + std::to_string(o) + ":" + std::to_string(k);
    }
    rep.artifacts.push_back({"compatible_pairs", std::to_string(pairs)});
    rep.artifacts.push_back({"a_kernels", std::to_string(cat.a_side().size())});
    rep.artifacts.push_back({"b_kernels", std::to_string(cat.b_side().size())});
    rep.artifacts.push_back({"a_image_orders", orders});
    if (seven) {
      auto const& ka = cat.a_side()[seven->first];
      auto const& kb = cat.b_side()[seven->second];
      rep.artifacts.push_back({"order7_a_side", ka.target_label + ": "
                                                    + detail::images_string(ka.map, g.a().names())});
      rep.artifacts.push_back({"order7_b_side", kb.target_label + ": "
                                                    + detail::images_string(kb.map, g.b().names())});
    }

    rep.assertions.push_back({"order_seven_pair", "some compatible pair maps a to an element of order 7",
                              seven.has_value(),
                              seven ? cat.a_side()[seven->first].target_label : "none found"});
    rep.assertions.push_back({"odd_a_orders",
                              "the image of a has odd order under every compatible pair",
                              even == 0, std::to_string(even) + " pairs with even order"});
    rep.assertions.push_back({"a_in_a2", "the image of a lies in the cyclic group of the image of a^2",
                              outside == 0, std::to_string(outside) + " pairs violate it"});

    auto verdict = family_separability(cat, Side::A, a2);
    bool lambda  = verdict.outcome == FamilyOutcome::NotSeparated && verdict.certificate
                  && *verdict.certificate == a;
    rep.assertions.push_back(
        {"lambda_nonempty",
         "<a^2> is not separated in A by the compatible family: a lies in <a^2>M for every member M",
         lambda,
         std::string(to_string(verdict.outcome)) + " over " + std::to_string(verdict.members.size())
             + " members"
             + (verdict.certificate ? ", x = " + verdict.certificate->to_string(g.a().names()) : "")});
    return rep;
  }

  inline CaseStudyReport run_sec3(CaseParams const& params) {
    auto const p = params.p, q = params.q, n = params.n;
    if (!is_prime(p) || !is_prime(q) || p == q) {
      throw Error(ErrorKind::InvalidInput, "p and q must be distinct primes");
    }
    if (n < 1 || n > 8) {
      throw Error(ErrorKind::InvalidInput, "n must lie in 1..8");
    }
    CaseStudyReport rep;
    rep.case_id    = "sec3";
    rep.parameters = {{"p", std::to_string(p)}, {"q", std::to_string(q)}, {"n", std::to_string(n)}};

    auto const pn = ipow(p, n);
    if (pn > kMaxGroupOrder) {
      throw Error(ErrorKind::InvalidInput, "p^n exceeds the group order cap");
    }
    std::uint64_t xn = 0;
    for (std::uint64_t x = 1; x < pn; ++x) {
      if ((q * x) % pn == 1) {
        xn = x;
        break;
      }
    }

    auto const g  = power_amalgam(p);
    auto const a  = FreeWord::generator(0);
    auto       la = [&](std::int64_t k) { return g.letter(Side::A, a.power(k)); };
    auto       lb = [&](std::int64_t k) { return g.letter(Side::B, a.power(k)); };
    auto const ab = g.multiply(la(1), lb(1));
    auto const gg = g.multiply(g.power(ab, static_cast<std::int64_t>(q)),
                               la(static_cast<std::int64_t>(p)));
    auto const h  = g.multiply(ab, la(static_cast<std::int64_t>(p * xn)));

    auto named = [&](std::string const& x) {
      std::vector<std::string> names{"1", x};
      for (std::uint64_t i = 2; i < pn; ++i) {
        names.push_back(x + "^" + std::to_string(i));
      }
      return FiniteGroup::from_trusted_table(cyclic_group(pn).table(), std::move(names));
    };
    auto const qa = build_quotient_amalgam(g, GenImages{1, named("a"), {1}},
                                           GenImages{1, named("b"), {1}});
    auto const& quo = qa.quotient;
    auto const hq = qa.project(g, h);
    auto const gq = qa.project(g, gg);

    rep.artifacts.push_back({"x_n", std::to_string(xn)});
    rep.artifacts.push_back({"g", g.to_string(gg)});
    rep.artifacts.push_back({"h", g.to_string(h)});
    rep.artifacts.push_back({"quotient", "<a, b; a^" + std::to_string(pn) + " = b^" + std::to_string(pn)
                                             + " = 1, a^" + std::to_string(p) + " = b^"
                                             + std::to_string(p) + ">"});
    rep.artifacts.push_back({"g_image", quo.to_string(gq)});
    rep.artifacts.push_back({"h_image", quo.to_string(hq)});

    auto not_member = quo.cyclic_member(hq, gq);
    rep.assertions.push_back({"h_not_in_g", "the image of h is not in <image of g>", !not_member.member,
                              not_member.member ? "h = g^" + std::to_string(not_member.exponent)
                                                : not_member.reason});

    auto hq_pow = quo.power(hq, static_cast<std::int64_t>(q));
    auto power  = quo.cyclic_member(hq_pow, gq);
    rep.assertions.push_back({"h_power_in_g", "the q-th power of the image of h lies in <image of g>",
                              power.member,
                              power.member ? "h^q = g^" + std::to_string(power.exponent)
                                           : power.reason});

    auto root = isolation_obstruction(quo, gq, p);
    rep.assertions.push_back(
        {"not_isolated", "<image of g> is not p'-isolated in the quotient amalgam", root.has_value(),
         root ? "root " + quo.to_string(root->root) + " of prime " + std::to_string(root->prime)
              : "no root"});
    return rep;
  }

  // Random finite p-group amalgams over cyclic H and K: every compatible pair
  // of p-power index is p-compatible.
  inline CaseStudyReport run_cyclic_remark(CaseParams const& params) {
    CaseStudyReport rep;
    rep.case_id    = "cyclic_remark";
    rep.parameters = {{"trials", std::to_string(params.trials)},
                      {"seed", std::to_string(params.seed)}};

    std::vector<CatalogEntry> pool;
    for (auto const& e : catalog_entries(64)) {
      if (e.order > 1 && prime_divisors(e.order).size() == 1) {
        pool.push_back(e);
      }
    }
    std::mt19937_64 rng(params.seed);
    std::size_t     passed = 0, pairs_checked = 0;
    std::string     first_failure;
    for (std::size_t t = 0; t < params.trials; ++t) {
      auto const& ea = pool[rng() % pool.size()];
      auto const  p  = prime_divisors(ea.order).front();
      auto        ga = catalog_group(ea);
      Elem        x  = static_cast<Elem>(rng() % ga.order());
      auto const  o  = ga.element_order(x);

      std::vector<std::pair<CatalogEntry, std::vector<Elem>>> partners;
      for (auto const& eb : pool) {
        if (eb.order % p != 0) {
          continue;
        }
        auto              gb = catalog_group(eb);
        std::vector<Elem> ys;
        for (Elem y = 0; y < gb.order(); ++y) {
          if (gb.element_order(y) == o) {
            ys.push_back(y);
          }
        }
        if (!ys.empty()) {
          partners.emplace_back(eb, std::move(ys));
        }
      }
      auto const& [eb, ys] = partners[rng() % partners.size()];
      auto        gb       = catalog_group(eb);
      Elem        y        = ys[rng() % ys.size()];

      std::map<Elem, Elem> phi;
      Elem                 xi = 0, yi = 0;
      for (std::size_t i = 0; i < o; ++i) {
        phi[xi] = yi;
        xi      = ga.mul(xi, x);
        yi      = gb.mul(yi, y);
      }
      auto amalgam = build_amalgam(ga, gb, cyclic_subgroup(ga, x), cyclic_subgroup(gb, y), phi);

      std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> p_pairs;
      for (auto const& pair : enumerate_compatible_pairs(amalgam, CompatMode::P, p)) {
        p_pairs.insert({pair.r.members(), pair.s.members()});
      }
      bool ok = true;
      for (auto const& pair : enumerate_compatible_pairs(amalgam, CompatMode::Plain)) {
        if (!is_p_power(pair.r.index(), p) || !is_p_power(pair.s.index(), p)) {
          continue;
        }
        ++pairs_checked;
        if (!p_pairs.count({pair.r.members(), pair.s.members()})) {
          ok = false;
        }
      }
      if (ok) {
        ++passed;
      } else if (first_failure.empty()) {
        first_failure = ea.label + " *_{" + std::to_string(o) + "} " + eb.label;
      }
    }
    rep.artifacts.push_back({"pairs_checked", std::to_string(pairs_checked)});
    rep.assertions.push_back(
        {"cyclic_collapse",
         "over cyclic amalgamated subgroups every compatible pair of p-power index is p-compatible",
         passed == params.trials,
         std::to_string(passed) + "/" + std::to_string(params.trials) + " amalgams pass"
             + (first_failure.empty() ? "" : ", first failure " + first_failure)});
    return rep;
  }

  inline CaseStudyReport run_case_study(std::string const& id, CaseParams const& params = {}) {
    if (id == "thm21") {
      return run_thm21(params);
    }
    if (id == "sec3") {
      return run_sec3(params);
    }
    if (id == "cyclic_remark" || id == "cyclic-remark") {
      return run_cyclic_remark(params);
    }
    throw Error(ErrorKind::UnknownCase, "unknown case study '" + id + "'");
  }

}  // namespace amalgsep
