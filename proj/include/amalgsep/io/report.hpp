#pragma once

#include <string>
#include <vector>

#include "amalgsep/compat/compat.hpp"
#include "amalgsep/compat/family.hpp"
#include "amalgsep/engine/case_studies.hpp"
#include "amalgsep/engine/witness.hpp"
#include "amalgsep/io/parse.hpp"

namespace amalgsep::io {

  inline Json names_of(FiniteGroup const& g, std::vector<Elem> const& xs) {
    Json out = Json::array();
    for (Elem x : xs) {
      out.push_back(g.name(x));
    }
    return out;
  }

  inline Json subgroup_json(Subgroup const& s) {
    return {{"order", s.order()}, {"members", names_of(s.parent(), s.members())}};
  }

  template <typename F>
  Json element_json(Amalgam<F> const& g, typename Amalgam<F>::Element const& x) {
    Json syl = Json::array();
    for (auto const& s : x.syllables()) {
      syl.push_back({{"side", std::string(1, side_char(s.side))},
                     {"value", g.factor(s.side).name(s.value)}});
    }
    return {{"text", g.to_string(x)},
            {"core", g.a().name(x.core())},
            {"syllables", syl},
            {"length", x.length()}};
  }

  inline Json certificate_json(FiniteAmalgam const& g, PCertificate const& c) {
    Json chain_a = Json::array(), chain_b = Json::array();
    for (auto const& s : c.chain_a.links) {
      chain_a.push_back(subgroup_json(s));
    }
    for (auto const& s : c.chain_b.links) {
      chain_b.push_back(subgroup_json(s));
    }
    Json ia = Json::array(), ib = Json::array();
    for (auto const& m : c.intersections_a) {
      std::vector<Elem> pre;
      for (Elem y : m) {
        pre.push_back(g.phi_inv(y));
      }
      std::sort(pre.begin(), pre.end());
      ia.push_back(names_of(g.a().group(), pre));
    }
    for (auto const& m : c.intersections_b) {
      ib.push_back(names_of(g.b().group(), m));
    }
    return {{"prime", c.prime},
            {"chain_a", chain_a},
            {"chain_b", chain_b},
            {"intersections_a", ia},
            {"intersections_b", ib}};
  }

  inline Json pair_json(FiniteAmalgam const& g, CompatiblePair const& p) {
    Json j{{"mode", p.mode == CompatMode::Plain ? "plain" : "p"},
           {"r", subgroup_json(p.r)},
           {"s", subgroup_json(p.s)}};
    if (p.certificate) {
      j["certificate"] = certificate_json(g, *p.certificate);
    }
    return j;
  }

  inline Json gen_images_json(GenImages const& u, std::vector<std::string> const& names,
                              std::string const& label) {
    Json images = Json::object();
    for (std::size_t i = 0; i < u.images.size(); ++i) {
      images[names.at(i)] = u.target.name(u.images[i]);
    }
    return {{"target", label}, {"target_order", u.target.order()}, {"images", images},
            {"index", u.index()}};
  }

  inline Json family_json(FiniteAmalgam const& g, FamilyVerdict<FiniteFactor> const& v) {
    auto const& x = g.factor(v.side).group();
    Json        members = Json::array();
    for (auto const& m : v.members) {
      members.push_back(subgroup_json(m));
    }
    Json witnesses = Json::array();
    for (auto const& [e, i] : v.witnesses) {
      witnesses.push_back({{"element", x.name(e)}, {"member", i}});
    }
    Json j{{"side", std::string(1, side_char(v.side))},
           {"mode", v.mode == CompatMode::Plain ? "plain" : "p"},
           {"subject", x.name(v.subject)},
           {"verdict", to_string(v.outcome)},
           {"members", members},
           {"witnesses", witnesses},
           {"elements_checked", v.elements_checked},
           {"bound", nullptr}};
    if (v.mode == CompatMode::P) {
      j["prime"] = v.prime;
    }
    if (v.certificate) {
      j["certificate"] = x.name(*v.certificate);
    }
    return j;
  }

  template <typename F>
  Json witness_json(Amalgam<F> const& g, WitnessReport<F> const& r) {
    Json j{{"h", element_json(g, r.h)},
           {"g", element_json(g, r.g)},
           {"mode", r.mode == CompatMode::Plain ? "plain" : "p"},
           {"outcome", to_string(r.outcome)},
           {"casework", {{"n", r.n}, {"m", r.m}, {"n_prime", r.n_prime}, {"route", r.route}}}};
    if (r.mode == CompatMode::P) {
      j["prime"] = r.prime;
    }
    switch (r.outcome) {
      case WitnessOutcome::Member: j["exponent"] = r.exponent; break;
      case WitnessOutcome::Obstructed: {
        Json o{{"reason", to_string(r.obstruction)}};
        if (r.root) {
          o["root"]       = element_json(g, *r.root);
          o["root_prime"] = r.root_prime;
        }
        if (r.obstruction == Obstruction::LambdaFamily) {
          o["side"] = std::string(1, side_char(r.lambda_side));
        }
        if (r.obstruction == Obstruction::BoundExhausted || r.obstruction == Obstruction::LambdaFamily) {
          o["bound"] = r.bound;
        }
        j["obstruction"] = o;
        break;
      }
      case WitnessOutcome::Separated: {
        Json a_map = Json::object(), b_map = Json::object();
        if constexpr (std::is_same_v<F, FiniteFactor>) {
          for (Elem x = 0; x < r.a_map.size(); ++x) {
            a_map[g.a().name(x)] = r.target.name(r.a_map[x]);
          }
          for (Elem x = 0; x < r.b_map.size(); ++x) {
            b_map[g.b().name(x)] = r.target.name(r.b_map[x]);
          }
        } else {
          for (std::size_t x = 0; x < r.a_map.size(); ++x) {
            a_map[g.a().names()[x]] = r.target.name(r.a_map[x]);
          }
          for (std::size_t x = 0; x < r.b_map.size(); ++x) {
            b_map[g.b().names()[x]] = r.target.name(r.b_map[x]);
          }
        }
        Json cyc = names_of(r.target, cyclic_subgroup(r.target, r.g_image).members());
        j["witness"] = {{"target_label", r.target_label},
                        {"target_order", r.target.order()},
                        {"image_order", r.image_order},
                        {"target", group_to_json(r.target)},
                        {"a_map", a_map},
                        {"b_map", b_map},
                        {"h_image", r.target.name(r.h_image)},
                        {"g_image", r.target.name(r.g_image)},
                        {"g_image_powers", cyc},
                        {"verified", r.verified}};
        if constexpr (std::is_same_v<F, FreeFactor>) {
          j["witness"]["kernel_pair"] = {{"a", r.pair_a}, {"b", r.pair_b}};
        }
        break;
      }
    }
    j["quotients_tried"] = r.quotients_tried;
    j["skipped_targets"] = r.skipped_targets;
    return j;
  }

  inline Json case_json(CaseStudyReport const& r) {
    Json params = Json::object(), artifacts = Json::object(), assertions = Json::array();
    for (auto const& [k, v] : r.parameters) {
      params[k] = v;
    }
    for (auto const& [k, v] : r.artifacts) {
      artifacts[k] = v;
    }
    for (auto const& a : r.assertions) {
      assertions.push_back(
          {{"name", a.name}, {"claim", a.claim}, {"passed", a.passed}, {"detail", a.detail}});
    }
    return {{"case", r.case_id},
            {"parameters", params},
            {"assertions", assertions},
            {"artifacts", artifacts},
            {"passed", r.passed()}};
  }

  struct JobSpec {
    std::string              command;
    std::vector<std::string> inputs;
    Json                     parameters = Json::object();
    std::string              output;
  };

  inline Json job_json(JobSpec const& job) {
    return {{"command", job.command},
            {"inputs", job.inputs},
            {"parameters", job.parameters},
            {"output", job.output}};
  }

  inline JobSpec job_from_json(Json const& j) {
    detail::check_object(j, {"command", "inputs", "parameters", "output"}, "job");
    JobSpec job;
    job.command = detail::get_as<std::string>(detail::require(j, "command", "job"), "command");
    job.inputs  = detail::get_as<std::vector<std::string>>(detail::require(j, "inputs", "job"),
                                                          "inputs");
    job.parameters = detail::require(j, "parameters", "job");
    if (!job.parameters.is_object()) {
      throw Error(ErrorKind::InvalidInput, "job: parameters must be an object");
    }
    job.output = detail::get_as<std::string>(detail::require(j, "output", "job"), "output");
    return job;
  }

  // {"schema": 1, "job": {...}, "status": ..., "exit_code": ..., "result": {...}}
  inline Json report_json(JobSpec const& job, std::string const& status, int exit_code,
                          Json result) {
    return {{"schema", kSchemaVersion},
            {"job", job_json(job)},
            {"status", status},
            {"exit_code", exit_code},
            {"result", std::move(result)}};
  }

  // Structural check of a report as written by report_json.
  inline void validate_report(Json const& j) {
    detail::check_object(j, {"job", "status", "exit_code", "result"}, "report");
    if (!j.contains("schema")) {
      throw Error(ErrorKind::InvalidInput, "report: missing field 'schema'");
    }
    job_from_json(detail::require(j, "job", "report"));
    detail::get_as<std::string>(detail::require(j, "status", "report"), "status");
    auto code = detail::get_as<int>(detail::require(j, "exit_code", "report"), "exit_code");
    if (code < 0 || code > 3) {
      throw Error(ErrorKind::InvalidInput, "report: exit_code out of range");
    }
    if (!detail::require(j, "result", "report").is_object()) {
      throw Error(ErrorKind::InvalidInput, "report: result must be an object");
    }
  }

}  // namespace amalgsep::io
