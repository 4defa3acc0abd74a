#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "amalgsep/freegrp/word.hpp"

namespace amalgsep {

  // Folded core graph of a finitely generated subgroup of a free group.
  //
  // Each edge also carries a label: a word in the subgroup generators. The
  // labels along any closed path at the base multiply to an expression of
  // the path's word in those generators, which is how elements of the
  // subgroup get rewritten in its own generators.
  class SubgroupGraph {
   public:
    struct Edge {
      std::uint32_t target = 0;
      FreeWord      label;
    };

    std::uint32_t rank() const noexcept {
      return _rank;
    }
    std::size_t state_count() const noexcept {
      return _trans.size();
    }
    static constexpr std::uint32_t base() noexcept {
      return 0;
    }
    std::size_t subgroup_generator_count() const noexcept {
      return _subgroup_gens.size();
    }
    std::vector<FreeWord> const& subgroup_generators() const noexcept {
      return _subgroup_gens;
    }

    // False when folding exposed a relation among the given generators; the
    // graph still decides membership, but expressions are not unique.
    bool freely_generated() const noexcept {
      return _free;
    }

    std::optional<Edge> const& edge(std::uint32_t state, Letter l) const {
      return _trans[state][l.slot()];
    }

    // Reads w from the base as far as the graph allows. Returns the state
    // reached and the number of letters consumed.
    std::pair<std::uint32_t, std::size_t> read(FreeWord const& w) const {
      std::uint32_t v = base();
      std::size_t   i = 0;
      for (; i < w.length(); ++i) {
        auto const& e = edge(v, w.letters()[i]);
        if (!e) {
          break;
        }
        v = e->target;
      }
      return {v, i};
    }

    bool member(FreeWord const& w) const {
      auto [v, used] = read(w);
      return used == w.length() && v == base();
    }

    // w as a word in the subgroup generators, if w is in the subgroup.
    std::optional<FreeWord> express(FreeWord const& w) const {
      std::uint32_t v = base();
      FreeWord      out;
      for (auto l : w.letters()) {
        auto const& e = edge(v, l);
        if (!e) {
          return std::nullopt;
        }
        out *= e->label;
        v = e->target;
      }
      if (v != base()) {
        return std::nullopt;
      }
      return out;
    }

    // A fixed reduced word leading from the base to each state (BFS tree).
    FreeWord const& spanning_path(std::uint32_t state) const {
      return _paths[state];
    }

    // Canonical representative of the right coset of the subgroup
    // containing w: the tree path to where reading stops, followed by the
    // unread suffix.
    FreeWord coset_representative(FreeWord const& w) const {
      auto [v, used] = read(w);
      return _paths[v] * w.suffix_from(used);
    }

    friend SubgroupGraph fold_subgroup(std::vector<FreeWord> const& gens, std::uint32_t rank);

   private:
    std::uint32_t                                 _rank = 0;
    std::vector<std::vector<std::optional<Edge>>> _trans;
    std::vector<FreeWord>                         _paths;
    std::vector<FreeWord>                         _subgroup_gens;
    bool                                          _free = true;
  };

  inline SubgroupGraph fold_subgroup(std::vector<FreeWord> const& gens, std::uint32_t rank) {
    for (auto const& g : gens) {
      if (g.support() > rank) {
        throw Error(ErrorKind::InvalidInput, "subgroup generator uses a letter beyond the rank");
      }
    }

    // Edges are stored in both directions; `partner` is the reverse copy.
    struct RawEdge {
      std::uint32_t from, to;
      Letter        letter;
      FreeWord      label;
      std::size_t   partner;
      bool          alive = true;
    };
    std::vector<RawEdge>  edges;
    std::uint32_t         states = 1;
    auto const            add = [&](std::uint32_t from, Letter l, std::uint32_t to, FreeWord label) {
      std::size_t i = edges.size();
      edges.push_back({from, to, l, label, i + 1});
      edges.push_back({to, from, l.inverse(), label.inverse(), i});
    };
    bool free = true;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      auto const& w = gens[gi];
      if (w.empty()) {
        free = false;  // the identity is a relation by itself
        continue;
      }
      auto          label = FreeWord::generator(static_cast<std::uint32_t>(gi));
      std::uint32_t v     = 0;
      for (std::size_t i = 0; i < w.length(); ++i) {
        std::uint32_t to = i + 1 == w.length() ? 0 : states++;
        add(v, w.letters()[i], to, i == 0 ? label : FreeWord{});
        v = to;
      }
    }

    std::vector<bool> dead(states, false);
    // Twisting w by c keeps every path value through w.
    auto const twist = [&](std::uint32_t w, FreeWord const& c) {
      auto cinv = c.inverse();
      for (auto& e : edges) {
        if (!e.alive) {
          continue;
        }
        if (e.from == w) {
          e.label = cinv * e.label;
        }
        if (e.to == w) {
          e.label = e.label * c;
        }
      }
    };

    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < edges.size() && !changed; ++i) {
        if (!edges[i].alive) {
          continue;
        }
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
          auto& a = edges[i];
          auto& b = edges[j];
          if (!b.alive || a.from != b.from || a.letter != b.letter) {
            continue;
          }
          if (a.to == b.to) {
            if (a.label != b.label) {
              free = false;
            }
            b.alive                = false;
            edges[b.partner].alive = false;
          } else {
            // Merge the non-base endpoint into the other.
            std::uint32_t keep = a.to, drop = b.to;
            FreeWord      c = b.label.inverse() * a.label;
            if (drop == 0) {
              std::swap(keep, drop);
              c = a.label.inverse() * b.label;
            }
            twist(drop, c);
            for (auto& e : edges) {
              if (e.from == drop) {
                e.from = keep;
              }
              if (e.to == drop) {
                e.to = keep;
              }
            }
            dead[drop] = true;
          }
          changed = true;
          break;
        }
      }
    }

    // Renumber live states in BFS order from the base.
    std::vector<std::vector<std::size_t>> out(states);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].alive) {
        out[edges[i].from].push_back(i);
      }
    }
    for (auto& o : out) {
      std::sort(o.begin(), o.end(), [&](std::size_t x, std::size_t y) {
        return edges[x].letter < edges[y].letter;
      });
    }
    constexpr std::uint32_t    kNone = ~std::uint32_t{0};
    std::vector<std::uint32_t> number(states, kNone);
    std::vector<std::uint32_t> order{0};
    std::vector<FreeWord>      paths{FreeWord{}};
    number[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (auto ei : out[order[k]]) {
        auto const& e = edges[ei];
        if (number[e.to] == kNone) {
          number[e.to] = static_cast<std::uint32_t>(order.size());
          order.push_back(e.to);
          paths.push_back(paths[k] * FreeWord({e.letter}));
        }
      }
    }

    SubgroupGraph g;
    g._rank          = rank;
    g._subgroup_gens = gens;
    g._free          = free;
    g._paths         = std::move(paths);
    g._trans.assign(order.size(), std::vector<std::optional<SubgroupGraph::Edge>>(2 * rank));
    for (auto const& e : edges) {
      if (e.alive && number[e.from] != kNone) {
        g._trans[number[e.from]][e.letter.slot()] = SubgroupGraph::Edge{number[e.to], e.label};
      }
    }
    return g;
  }

  inline bool graph_member(SubgroupGraph const& g, FreeWord const& w) {
    return g.member(w);
  }

}  // namespace amalgsep
