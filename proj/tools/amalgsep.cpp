// amalgsep: command-line front end. Reports go to the output file as JSON,
// a short summary to stdout.
//
// Exit codes: 0 success, 1 negative verdict (member, obstructed, failed
// assertion), 2 input error, 3 bound exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "amalgsep/amalgam/isolation.hpp"
#include "amalgsep/compat/compat.hpp"
#include "amalgsep/compat/family.hpp"
#include "amalgsep/engine/case_studies.hpp"
#include "amalgsep/engine/witness.hpp"
#include "amalgsep/fingrp/subgroups.hpp"
#include "amalgsep/io/parse.hpp"
#include "amalgsep/io/report.hpp"

using namespace amalgsep;
using io::Json;

namespace {

  constexpr int kOk        = 0;
  constexpr int kNegative  = 1;
  constexpr int kBadInput  = 2;
  constexpr int kExhausted = 3;

  struct Outcome {
    std::string status;
    int         code = kOk;
    Json        result;
    std::string summary;
  };

  struct Options {
    std::string   output = "amalgsep_report.json";
    std::string   file, pres, word, h, g;
    std::string   r, s;
    std::uint64_t p         = 0;
    std::size_t   max_order = 256;
    std::size_t   bound     = 48;
    std::uint64_t q = 3, n = 2;
    std::size_t   trials = 100;
    std::uint64_t seed   = 1;
    std::string   case_id;
  };

  std::vector<Elem> parse_members(FiniteGroup const& g, std::string const& text) {
    std::vector<Elem>  out;
    std::istringstream in(text);
    for (std::string t; in >> t;) {
      out.push_back(io::parse_group_element(g, t));
    }
    return out;
  }

  Json pres_summary(io::Presentation const& pres) {
    if (pres.is_finite()) {
      auto const& g = pres.finite();
      Json        phi = Json::object();
      for (Elem x : g.a().subgroup().members()) {
        phi[g.a().name(x)] = g.b().name(g.phi(x));
      }
      return {{"kind", "finite"},
              {"a_order", g.a().group().order()},
              {"b_order", g.b().group().order()},
              {"h", io::subgroup_json(g.a().subgroup())},
              {"k", io::subgroup_json(g.b().subgroup())},
              {"phi", phi}};
    }
    auto const& g = pres.free();
    Json        h = Json::array(), k = Json::array();
    for (auto const& w : g.a().subgroup_generators()) {
      h.push_back(w.to_string(g.a().names()));
    }
    for (auto const& w : g.b().subgroup_generators()) {
      k.push_back(w.to_string(g.b().names()));
    }
    return {{"kind", "free"},
            {"a_generators", g.a().names()},
            {"b_generators", g.b().names()},
            {"h", h},
            {"k", k}};
  }

  Outcome group_check(Options const& o) {
    auto g = io::load_group(o.file);
    Json r{{"order", g.order()},
           {"abelian", g.is_abelian()},
           {"exponent", g.exponent()},
           {"associativity", g.associativity_check() == AssociativityCheck::Exhaustive
                                 ? "exhaustive"
                                 : "sampled"},
           {"normal_subgroups", enumerate_normal_subgroups(g).size()}};
    return {"valid", kOk, r, "valid group of order " + std::to_string(g.order())};
  }

  Outcome amalgam_build(Options const& o) {
    auto pres = io::load_presentation(o.pres);
    return {"built", kOk, pres_summary(pres), "amalgam presentation is valid"};
  }

  template <typename F>
  Outcome reduce_in(Amalgam<F> const& g, Options const& o) {
    auto x      = io::parse_element(g, io::element_text(o.word));
    auto cr     = g.cyclically_reduce(x);
    auto order  = g.element_order(x);
    Json result{{"normal_form", io::element_json(g, x)},
                {"cyclically_reduced", io::element_json(g, cr.reduced)},
                {"conjugator", io::element_json(g, cr.conjugator)},
                {"order", order ? Json(*order) : Json("infinite")}};
    return {"reduced", kOk, result,
            g.to_string(x) + " (length " + std::to_string(x.length()) + ")"};
  }

  template <typename F>
  Outcome member_in(Amalgam<F> const& g, Options const& o) {
    auto h   = io::parse_element(g, io::element_text(o.h));
    auto gen = io::parse_element(g, io::element_text(o.g));
    auto m   = g.cyclic_member(h, gen);
    Json result{{"h", io::element_json(g, h)}, {"g", io::element_json(g, gen)}, {"member", m.member}};
    if (m.member) {
      result["exponent"] = m.exponent;
      return {"member", kNegative, result, "member: h = g^" + std::to_string(m.exponent)};
    }
    result["reason"] = m.reason;
    return {"not_member", kOk, result, "not a member (" + m.reason + ")"};
  }

  Outcome isolate(Options const& o) {
    auto pres = io::load_presentation(o.pres);
    if (!pres.is_finite()) {
      throw Error(ErrorKind::InvalidInput, "isolate needs finite factors");
    }
    auto const& g = pres.finite();
    auto        x = io::parse_element(g, io::element_text(o.g));
    auto        w = isolation_obstruction(g, x, o.p);
    auto        c = isolated_closure(g, x, o.p);
    Json result{{"g", io::element_json(g, x)},
                {"prime", o.p},
                {"isolated", !w.has_value()},
                {"closure", {{"generator", io::element_json(g, c.generator)}, {"index", c.index}}}};
    if (w) {
      result["root"]       = io::element_json(g, w->root);
      result["root_prime"] = w->prime;
      return {"not_isolated", kNegative, result,
              "not isolated: (" + g.to_string(w->root) + ")^" + std::to_string(w->prime) + " = g"};
    }
    return {"isolated", kOk, result, "<g> is " + std::to_string(o.p) + "'-isolated"};
  }

  Outcome compat_check(Options const& o) {
    auto pres = io::load_presentation(o.pres);
    if (!pres.is_finite()) {
      throw Error(ErrorKind::InvalidInput, "compat check needs finite factors");
    }
    auto const& g = pres.finite();
    auto        r = subgroup_generated(g.a().group(), parse_members(g.a().group(), o.r));
    auto        s = subgroup_generated(g.b().group(), parse_members(g.b().group(), o.s));
    bool        plain = is_compatible(g, r, s);
    Json        result{{"r", io::subgroup_json(r)}, {"s", io::subgroup_json(s)}, {"compatible", plain}};
    bool        ok = plain;
    if (o.p) {
      auto cert            = is_p_compatible(g, r, s, o.p);
      result["prime"]      = o.p;
      result["p_compatible"] = cert.has_value();
      if (cert) {
        result["certificate"] = io::certificate_json(g, *cert);
      }
      ok = ok && cert.has_value();
    }
    return {ok ? "compatible" : "not_compatible", ok ? kOk : kNegative, result,
            ok ? "pair is compatible" : "pair is not compatible"};
  }

  Outcome compat_enum(Options const& o) {
    auto pres = io::load_presentation(o.pres);
    auto mode = o.p ? CompatMode::P : CompatMode::Plain;
    if (pres.is_finite()) {
      auto const& g     = pres.finite();
      auto        pairs = enumerate_compatible_pairs(g, mode, o.p ? o.p : 2);
      Json        list  = Json::array();
      for (auto const& pair : pairs) {
        list.push_back(io::pair_json(g, pair));
      }
      return {"enumerated", kOk,
              {{"mode", o.p ? "p" : "plain"}, {"count", pairs.size()}, {"pairs", list}},
              std::to_string(pairs.size()) + " pairs"};
    }
    auto const&     g = pres.free();
    FreePairCatalog cat(g, o.bound, mode, o.p ? o.p : 2);
    auto            pairs = cat.pairs();
    Json            list  = Json::array();
    for (auto [i, j] : pairs) {
      list.push_back({{"a", io::gen_images_json(cat.a_side()[i].map, g.a().names(),
                                                cat.a_side()[i].target_label)},
                      {"b", io::gen_images_json(cat.b_side()[j].map, g.b().names(),
                                                cat.b_side()[j].target_label)}});
    }
    Json result{{"mode", o.p ? "p" : "plain"},
                {"bound", o.bound},
                {"count", pairs.size()},
                {"pairs", list},
                {"skipped_targets", cat.skipped()}};
    return {"enumerated", kOk, result,
            std::to_string(pairs.size()) + " pairs up to order " + std::to_string(o.bound)};
  }

  template <typename F>
  Outcome witness_in(Amalgam<F> const& g, Options const& o) {
    auto   h   = io::parse_element(g, io::element_text(o.h));
    auto   gen = io::parse_element(g, io::element_text(o.g));
    Bounds b;
    b.witness_order = o.max_order;
    b.catalog_order = o.bound;
    auto mode       = o.p ? CompatMode::P : CompatMode::Plain;
    auto r          = separate_from_cyclic(g, h, gen, mode, o.p ? o.p : 2, b);
    auto j          = io::witness_json(g, r);
    switch (r.outcome) {
      case WitnessOutcome::Separated:
        return {"separated", kOk, j,
                "separated in " + r.target_label + " (order " + std::to_string(r.target.order())
                    + ")"};
      case WitnessOutcome::Member:
        return {"member", kNegative, j, "member: h = g^" + std::to_string(r.exponent)};
      case WitnessOutcome::Obstructed:
        return {"obstructed", r.obstruction == Obstruction::BoundExhausted ? kExhausted : kNegative,
                j, "obstructed: " + std::string(to_string(r.obstruction))};
    }
    return {};
  }

  Outcome run_case(Options const& o) {
    CaseParams params;
    params.p      = o.p ? o.p : 2;
    params.q      = o.q;
    params.n      = o.n;
    params.bound  = o.bound;
    params.trials = o.trials;
    params.seed   = o.seed;
    auto rep      = run_case_study(o.case_id, params);
    std::string summary;
    for (auto const& a : rep.assertions) {
      summary += std::string(a.passed ? "  pass " : "  FAIL ") + a.name + ": " + a.detail + "\n";
    }
    summary += rep.passed() ? "all assertions passed" : "some assertions failed";
    return {rep.passed() ? "passed" : "failed", rep.passed() ? kOk : kNegative, io::case_json(rep),
            summary};
  }

  int finish(io::JobSpec const& job, Outcome const& out) {
    auto          report = io::report_json(job, out.status, out.code, out.result);
    std::ofstream file(job.output);
    if (!file) {
      std::cerr << "error: cannot write " << job.output << "\n";
      return kBadInput;
    }
    file << report.dump(2) << "\n";
    std::cout << out.summary << "\n";
    return out.code;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability of cyclic subgroups in amalgamated free products.\n"
               "Default bounds: catalog order <= 48 for kernels of free factors, "
               "witness target order <= 256."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--output", o.output, "report path")->capture_default_str();

  io::JobSpec job;
  std::function<Outcome()> action;

  auto* group = app.add_subcommand("group", "finite group tables");
  group->require_subcommand(1);
  auto* group_check_cmd = group->add_subcommand("check", "validate a group JSON file");
  group_check_cmd->add_option("file", o.file)->required();
  group_check_cmd->callback([&] {
    job    = {"group check", {o.file}, Json::object(), o.output};
    action = [&] { return group_check(o); };
  });

  auto* amalgam = app.add_subcommand("amalgam", "amalgam presentations and elements");
  amalgam->require_subcommand(1);
  auto* build = amalgam->add_subcommand("build", "validate a presentation");
  build->add_option("pres", o.pres)->required();
  build->callback([&] {
    job    = {"amalgam build", {o.pres}, Json::object(), o.output};
    action = [&] { return amalgam_build(o); };
  });
  auto* reduce = amalgam->add_subcommand("reduce", "normal form and cyclic reduction");
  reduce->add_option("pres", o.pres)->required();
  reduce->add_option("word", o.word)->required();
  reduce->callback([&] {
    job    = {"amalgam reduce", {o.pres}, {{"word", o.word}}, o.output};
    action = [&] {
      auto pres = io::load_presentation(o.pres);
      return pres.is_finite() ? reduce_in(pres.finite(), o) : reduce_in(pres.free(), o);
    };
  });
  auto* member = amalgam->add_subcommand("member", "is h a power of g");
  member->add_option("pres", o.pres)->required();
  member->add_option("h-element", o.h, "the element h")->required();
  member->add_option("g-element", o.g, "generator g of the cyclic subgroup")->required();
  member->callback([&] {
    job    = {"amalgam member", {o.pres}, {{"h", o.h}, {"g", o.g}}, o.output};
    action = [&] {
      auto pres = io::load_presentation(o.pres);
      return pres.is_finite() ? member_in(pres.finite(), o) : member_in(pres.free(), o);
    };
  });

  auto* iso = app.add_subcommand("isolate", "p'-isolation of <g> (finite factors)");
  iso->add_option("pres", o.pres)->required();
  iso->add_option("g-element", o.g, "generator g of the cyclic subgroup")->required();
  iso->add_option("--p", o.p, "prime")->required();
  iso->callback([&] {
    job    = {"isolate", {o.pres}, {{"g", o.g}, {"p", o.p}}, o.output};
    action = [&] { return isolate(o); };
  });

  auto* compat = app.add_subcommand("compat", "compatible pairs");
  compat->require_subcommand(1);
  auto* check = compat->add_subcommand("check", "test one pair (R, S), trivial by default");
  check->add_option("pres", o.pres)->required();
  check->add_option("--p", o.p, "prime for p-compatibility");
  check->add_option("--r", o.r, "generators of R, space separated");
  check->add_option("--s", o.s, "generators of S, space separated");
  check->callback([&] {
    job    = {"compat check", {o.pres}, {{"p", o.p}, {"r", o.r}, {"s", o.s}}, o.output};
    action = [&] { return compat_check(o); };
  });
  auto* enumerate = compat->add_subcommand("enum", "all compatible pairs");
  enumerate->add_option("pres", o.pres)->required();
  enumerate->add_option("--p", o.p, "prime for p-mode");
  enumerate->add_option("--bound", o.bound, "catalog order bound for free factors")
      ->capture_default_str();
  enumerate->callback([&] {
    job    = {"compat enum", {o.pres}, {{"p", o.p}, {"bound", o.bound}}, o.output};
    action = [&] { return compat_enum(o); };
  });

  auto* witness = app.add_subcommand("witness", "separate h from <g> in a finite quotient");
  witness->add_option("pres", o.pres)->required();
  witness->add_option("h-element", o.h, "the element h")->required();
  witness->add_option("g-element", o.g, "generator g of the cyclic subgroup")->required();
  witness->add_option("--p", o.p, "prime: search finite p-groups only");
  witness->add_option("--max-order", o.max_order, "largest witness target order")
      ->capture_default_str();
  witness->add_option("--bound", o.bound, "catalog order bound for kernels of free factors")
      ->capture_default_str();
  witness->callback([&] {
    job    = {"witness",
              {o.pres},
              {{"h", o.h}, {"g", o.g}, {"p", o.p}, {"max_order", o.max_order}, {"bound", o.bound}},
              o.output};
    action = [&] {
      auto pres = io::load_presentation(o.pres);
      return pres.is_finite() ? witness_in(pres.finite(), o) : witness_in(pres.free(), o);
    };
  });

  auto* cs = app.add_subcommand("case", "case studies: thm21, sec3, cyclic-remark");
  cs->add_option("id", o.case_id)->required();
  cs->add_option("--p", o.p, "prime (sec3)");
  cs->add_option("--q", o.q, "second prime (sec3)")->capture_default_str();
  cs->add_option("--n", o.n, "exponent (sec3)")->capture_default_str();
  cs->add_option("--bound", o.bound, "catalog order bound (thm21)")->capture_default_str();
  cs->add_option("--trials", o.trials, "random amalgams (cyclic-remark)")->capture_default_str();
  cs->add_option("--seed", o.seed, "random seed (cyclic-remark)")->capture_default_str();
  cs->callback([&] {
    job    = {"case",
              {},
              {{"id", o.case_id},
               {"p", o.p ? o.p : 2},
               {"q", o.q},
               {"n", o.n},
               {"bound", o.bound},
               {"trials", o.trials},
               {"seed", o.seed}},
              o.output};
    action = [&] { return run_case(o); };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kBadInput;
  }
  job.output = o.output;

  try {
    if (o.p && !is_prime(o.p)) {
      throw Error(ErrorKind::InvalidInput, std::to_string(o.p) + " is not prime");
    }
    return finish(job, action());
  } catch (Error const& e) {
    bool exhausted = e.kind() == ErrorKind::BoundExhausted || e.kind() == ErrorKind::SizeCap;
    int  code      = exhausted ? kExhausted : kBadInput;
    std::cerr << "error: " << e.what() << "\n";
    finish(job, {exhausted ? "bound_exhausted" : "input_error", code,
                 {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}},
                 std::string(exhausted ? "bound exhausted" : "input error")});
    return code;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
