#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "amalgsep/amalgam/presentation.hpp"
#include "amalgsep/core/error.hpp"
#include "amalgsep/fingrp/group.hpp"
#include "amalgsep/freegrp/word.hpp"

namespace amalgsep::io {

  using Json = nlohmann::json;

  inline constexpr int kSchemaVersion = 1;

  inline Json read_json_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
    }
    try {
      return Json::parse(in);
    } catch (Json::parse_error const& e) {
      throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
    }
  }

  namespace detail {

    // Rejects keys outside `allowed`, checks "schema" when present.
    inline void check_object(Json const& j, std::set<std::string> const& allowed,
                             std::string const& what) {
      if (!j.is_object()) {
        throw Error(ErrorKind::InvalidInput, what + " must be a JSON object");
      }
      for (auto const& [key, value] : j.items()) {
        if (key == "schema") {
          if (!value.is_number_integer() || value.get<int>() != kSchemaVersion) {
            throw Error(ErrorKind::InvalidInput,
                        what + ": unsupported schema version " + value.dump());
          }
          continue;
        }
        if (!allowed.count(key)) {
          throw Error(ErrorKind::InvalidInput, what + ": unknown field '" + key + "'");
        }
      }
    }

    inline Json const& require(Json const& j, std::string const& key, std::string const& what) {
      if (!j.contains(key)) {
        throw Error(ErrorKind::InvalidInput, what + ": missing field '" + key + "'");
      }
      return j.at(key);
    }

    template <typename T>
    T get_as(Json const& j, std::string const& what) {
      try {
        return j.get<T>();
      } catch (Json::exception const& e) {
        throw Error(ErrorKind::InvalidInput, what + ": " + e.what());
      }
    }

    inline std::vector<std::string> split_ws(std::string const& s) {
      std::istringstream       in(s);
      std::vector<std::string> out;
      for (std::string t; in >> t;) {
        out.push_back(t);
      }
      return out;
    }

    // "name" or "name^k".
    inline std::pair<std::string, std::int64_t> split_power(std::string const& token,
                                                            std::string const& what) {
      auto caret = token.find('^');
      if (caret == std::string::npos) {
        return {token, 1};
      }
      std::string base = token.substr(0, caret);
      std::string exp  = token.substr(caret + 1);
      try {
        std::size_t used = 0;
        auto        k    = std::stoll(exp, &used);
        if (used != exp.size() || base.empty()) {
          throw std::invalid_argument(exp);
        }
        return {base, k};
      } catch (std::logic_error const&) {
        throw Error(ErrorKind::InvalidInput, what + ": bad exponent in '" + token + "'");
      }
    }

  }  // namespace detail

  // {"schema": 1, "order": n, "table": [[...]], "names": [...]}; schema and
  // names optional.
  inline FiniteGroup group_from_json(Json const& j) {
    detail::check_object(j, {"order", "table", "names"}, "group");
    auto table = detail::get_as<Table>(detail::require(j, "table", "group"), "group table");
    if (j.contains("order")) {
      auto order = detail::get_as<std::size_t>(j.at("order"), "group order");
      if (order != table.size()) {
        throw Error(ErrorKind::InvalidInput, "group: order " + std::to_string(order)
                                                 + " but the table has "
                                                 + std::to_string(table.size()) + " rows");
      }
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      names = detail::get_as<std::vector<std::string>>(j.at("names"), "group names");
    }
    return construct_group(table, std::move(names));
  }

  inline Json group_to_json(FiniteGroup const& g) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["order"]  = g.order();
    j["table"]  = g.table();
    if (g.has_names()) {
      j["names"] = g.names();
    }
    return j;
  }

  inline FiniteGroup load_group(std::filesystem::path const& path) {
    return group_from_json(read_json_file(path));
  }

  inline Elem parse_group_element(FiniteGroup const& g, std::string const& token) {
    auto [name, k] = detail::split_power(token, "element");
    if (name == "1") {
      return FiniteGroup::identity();
    }
    auto x = g.find(name);
    if (!x) {
      throw Error(ErrorKind::InvalidInput, "unknown element '" + name + "'");
    }
    return g.pow(*x, k);
  }

  // Whitespace-separated generator names with optional exponents, e.g.
  // "a b^-1 a b"; "1" is the empty word.
  inline FreeWord parse_word(std::string const& s, std::vector<std::string> const& names) {
    FreeWord w;
    for (auto const& token : detail::split_ws(s)) {
      auto [name, k] = detail::split_power(token, "word");
      if (name == "1") {
        continue;
      }
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        throw Error(ErrorKind::InvalidInput, "unknown generator '" + name + "'");
      }
      w *= FreeWord::generator(static_cast<std::uint32_t>(it - names.begin())).power(k);
    }
    return w;
  }

  // Tagged letters "A:a B:b^3 A:a3"; untagged tokens continue the previous
  // factor, so free syllables print and re-parse as "A:a b^-1".
  template <typename F>
  typename Amalgam<F>::Element parse_element(Amalgam<F> const& g, std::string const& s) {
    std::vector<typename Amalgam<F>::Letter> letters;
    std::optional<Side>                      current;
    for (auto token : detail::split_ws(s)) {
      if (token.size() >= 2 && token[1] == ':') {
        if (token[0] == 'A') {
          current = Side::A;
        } else if (token[0] == 'B') {
          current = Side::B;
        } else {
          throw Error(ErrorKind::InvalidInput, "bad factor tag in '" + token + "'");
        }
        token = token.substr(2);
      } else if (token == "1") {
        continue;
      }
      if (!current) {
        throw Error(ErrorKind::InvalidInput,
                    "element '" + s + "' must start with a factor tag A: or B:");
      }
      if constexpr (std::is_same_v<F, FiniteFactor>) {
        letters.push_back({*current, parse_group_element(g.factor(*current).group(), token)});
      } else {
        letters.push_back({*current, parse_word(token, g.factor(*current).names())});
      }
    }
    return g.normalize(letters);
  }

  struct Presentation {
    std::variant<FiniteAmalgam, FreeAmalgam> amalgam;
    Json                                     source;  // the presentation file as read

    bool is_finite() const noexcept {
      return amalgam.index() == 0;
    }
    FiniteAmalgam const& finite() const {
      return std::get<FiniteAmalgam>(amalgam);
    }
    FreeAmalgam const& free() const {
      return std::get<FreeAmalgam>(amalgam);
    }
  };

  namespace detail {

    inline FiniteGroup factor_group(Json const& spec, std::filesystem::path const& base,
                                    std::string const& what) {
      if (spec.is_string()) {
        std::filesystem::path p = spec.get<std::string>();
        return load_group(p.is_absolute() ? p : base / p);
      }
      if (!spec.is_object()) {
        throw Error(ErrorKind::InvalidInput, "presentation: " + what + " must be a path or a group");
      }
      return group_from_json(spec);
    }

    inline std::vector<std::string> string_list(Json const& j, std::string const& what) {
      return get_as<std::vector<std::string>>(j, what);
    }

  }  // namespace detail

  // Finite factors:
  //   {"schema": 1, "kind": "finite", "a": "z4.json" | {group}, "b": ...,
  //    "h": [names], "k": [names], "phi": {"h-name": "k-name", ...}}
  // phi maps every member of H. Free factors:
  //   {"schema": 1, "kind": "free", "a": ["a"], "b": ["b"],
  //    "h": ["a^2"], "k": ["b^2"]}
  // with phi sending the i-th word of h to the i-th word of k.
  inline Presentation presentation_from_json(Json const& j, std::filesystem::path const& base = ".") {
    detail::check_object(j, {"kind", "a", "b", "h", "k", "phi", "name"}, "presentation");
    auto kind = detail::get_as<std::string>(detail::require(j, "kind", "presentation"), "kind");
    auto hs   = detail::string_list(detail::require(j, "h", "presentation"), "h");
    auto ks   = detail::string_list(detail::require(j, "k", "presentation"), "k");
    if (kind == "finite") {
      auto a = detail::factor_group(detail::require(j, "a", "presentation"), base, "a");
      auto b = detail::factor_group(detail::require(j, "b", "presentation"), base, "b");
      std::vector<Elem> hg, kg;
      for (auto const& s : hs) {
        hg.push_back(parse_group_element(a, s));
      }
      for (auto const& s : ks) {
        kg.push_back(parse_group_element(b, s));
      }
      auto const&          phi_json = detail::require(j, "phi", "presentation");
      std::map<Elem, Elem> phi;
      for (auto const& [x, y] : detail::get_as<std::map<std::string, std::string>>(phi_json, "phi")) {
        phi[parse_group_element(a, x)] = parse_group_element(b, y);
      }
      return {build_amalgam(a, b, subgroup_generated(a, hg), subgroup_generated(b, kg), phi), j};
    }
    if (kind == "free") {
      if (j.contains("phi")) {
        throw Error(ErrorKind::InvalidInput,
                    "presentation: free factors take phi from the order of h and k");
      }
      auto an = detail::string_list(detail::require(j, "a", "presentation"), "a");
      auto bn = detail::string_list(detail::require(j, "b", "presentation"), "b");
      std::vector<FreeWord> hw, kw;
      for (auto const& s : hs) {
        hw.push_back(parse_word(s, an));
      }
      for (auto const& s : ks) {
        kw.push_back(parse_word(s, bn));
      }
      return {build_free_amalgam(an, hw, bn, kw), j};
    }
    throw Error(ErrorKind::InvalidInput, "presentation: kind must be \"finite\" or \"free\"");
  }

  inline Presentation load_presentation(std::filesystem::path const& path) {
    return presentation_from_json(read_json_file(path), path.parent_path());
  }

  // An element argument: a tagged letter string, or a file holding
  // {"schema": 1, "element": "..."}.
  inline std::string element_text(std::string const& arg) {
    if (arg.size() > 5 && arg.compare(arg.size() - 5, 5, ".json") == 0) {
      auto j = read_json_file(arg);
      detail::check_object(j, {"element"}, "element");
      return detail::get_as<std::string>(detail::require(j, "element", "element"), "element");
    }
    return arg;
  }

}  // namespace amalgsep::io
