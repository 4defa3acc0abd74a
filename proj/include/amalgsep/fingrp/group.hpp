#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amalgsep/core/error.hpp"

namespace amalgsep {

  using Elem = std::uint32_t;

  // Tables are stored with 16-bit entries; witness targets go up to order 256
  // and direct-product images a little beyond, so 1024 leaves headroom.
  inline constexpr std::size_t kMaxGroupOrder = 1024;

  // Orders up to this are checked on every triple; above it a fixed-seed
  // sample of triples is checked instead.
  inline constexpr std::size_t kExhaustiveAssociativityOrder = 64;
  inline constexpr std::size_t kSampledAssociativityTriples  = 10'000;

  enum class AssociativityCheck { Exhaustive, Sampled, ByConstruction };

  using Table = std::vector<std::vector<Elem>>;

  ////////////////////////////////////////////////////////////////////////
  // FiniteGroup
  ////////////////////////////////////////////////////////////////////////

  // A finite group given by its full multiplication table. Element 0 is the
  // identity. Copies share the immutable table.
  class FiniteGroup {
   public:
    // The trivial group.
    FiniteGroup() : FiniteGroup(Table{{0}}, {}, AssociativityCheck::ByConstruction) {}

    // Validating constructor: shape, identity at 0, two-sided inverses and
    // associativity. Errors name the offending element or triple.
    static FiniteGroup from_table(Table const& table, std::vector<std::string> names = {}) {
      validate_shape(table, names);
      std::size_t const n = table.size();
      for (Elem x = 0; x < n; ++x) {
        if (table[0][x] != x || table[x][0] != x) {
          for (Elem e = 1; e < n; ++e) {
            bool unit = true;
            for (Elem y = 0; y < n && unit; ++y) {
              unit = table[e][y] == y && table[y][e] == y;
            }
            if (unit) {
              throw Error(ErrorKind::NoIdentity,
                          "element 0 is not the identity (element " + std::to_string(e)
                              + " is); reorder the table so the identity comes first");
            }
          }
          throw Error(ErrorKind::NoIdentity,
                      "no two-sided identity: 0*" + std::to_string(x) + " = "
                          + std::to_string(table[0][x]) + ", " + std::to_string(x)
                          + "*0 = " + std::to_string(table[x][0]));
        }
      }
      for (Elem x = 0; x < n; ++x) {
        bool found = false;
        for (Elem y = 0; y < n && !found; ++y) {
          found = table[x][y] == 0 && table[y][x] == 0;
        }
        if (!found) {
          throw Error(ErrorKind::NotInvertible,
                      "element " + std::to_string(x) + " has no two-sided inverse");
        }
      }
      auto const check_triple = [&](Elem x, Elem y, Elem z) {
        if (table[table[x][y]][z] != table[x][table[y][z]]) {
          throw Error(ErrorKind::NotAssociative,
                      "(" + std::to_string(x) + "*" + std::to_string(y) + ")*"
                          + std::to_string(z) + " != " + std::to_string(x) + "*("
                          + std::to_string(y) + "*" + std::to_string(z) + ")");
        }
      };
      AssociativityCheck check;
      if (n <= kExhaustiveAssociativityOrder) {
        for (Elem x = 0; x < n; ++x) {
          for (Elem y = 0; y < n; ++y) {
            for (Elem z = 0; z < n; ++z) {
              check_triple(x, y, z);
            }
          }
        }
        check = AssociativityCheck::Exhaustive;
      } else {
        std::mt19937_64                      rng(0x5eed'a55cULL);
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
        for (std::size_t i = 0; i < kSampledAssociativityTriples; ++i) {
          check_triple(pick(rng), pick(rng), pick(rng));
        }
        check = AssociativityCheck::Sampled;
      }
      return FiniteGroup(table, std::move(names), check);
    }

    // For tables produced internally (quotients, products, catalog members)
    // which are groups by construction. Shape is still checked.
    static FiniteGroup from_trusted_table(Table const& table, std::vector<std::string> names = {}) {
      validate_shape(table, names);
      return FiniteGroup(table, std::move(names), AssociativityCheck::ByConstruction);
    }

    std::size_t order() const noexcept {
      return _data->n;
    }

    static constexpr Elem identity() noexcept {
      return 0;
    }

    Elem mul(Elem x, Elem y) const noexcept {
      return _data->table[static_cast<std::size_t>(x) * _data->n + y];
    }

    Elem inv(Elem x) const noexcept {
      return _data->inverse[x];
    }

    Elem pow(Elem x, std::int64_t k) const noexcept {
      if (k < 0) {
        x = inv(x);
        k = -k;
      }
      k %= static_cast<std::int64_t>(_data->orders[x]);
      Elem r = identity();
      for (std::int64_t i = 0; i < k; ++i) {
        r = mul(r, x);
      }
      return r;
    }

    Elem conj(Elem x, Elem by) const noexcept {  // by^-1 x by
      return mul(mul(inv(by), x), by);
    }

    std::uint64_t element_order(Elem x) const noexcept {
      return _data->orders[x];
    }

    std::uint64_t exponent() const noexcept {
      return _data->exponent;
    }

    AssociativityCheck associativity_check() const noexcept {
      return _data->assoc;
    }

    std::string name(Elem x) const {
      if (x < _data->names.size()) {
        return _data->names[x];
      }
      return std::to_string(x);
    }

    bool has_names() const noexcept {
      return !_data->names.empty();
    }

    std::vector<std::string> const& names() const noexcept {
      return _data->names;
    }

    // Lookup by name, falling back to a decimal index.
    std::optional<Elem> find(std::string_view token) const {
      auto const& names = _data->names;
      auto        it    = std::find(names.begin(), names.end(), token);
      if (it != names.end()) {
        return static_cast<Elem>(it - names.begin());
      }
      if (!token.empty()
          && std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })
          && token.size() < 6) {
        auto v = static_cast<std::size_t>(std::stoul(std::string(token)));
        if (v < order()) {
          return static_cast<Elem>(v);
        }
      }
      return std::nullopt;
    }

    Table table() const {
      Table t(order(), std::vector<Elem>(order()));
      for (Elem x = 0; x < order(); ++x) {
        for (Elem y = 0; y < order(); ++y) {
          t[x][y] = mul(x, y);
        }
      }
      return t;
    }

    bool is_abelian() const noexcept {
      for (Elem x = 0; x < order(); ++x) {
        for (Elem y = x + 1; y < order(); ++y) {
          if (mul(x, y) != mul(y, x)) {
            return false;
          }
        }
      }
      return true;
    }

    // Same underlying table (not isomorphism).
    friend bool operator==(FiniteGroup const& a, FiniteGroup const& b) noexcept {
      return a._data == b._data
             || (a._data->n == b._data->n && a._data->table == b._data->table);
    }

   private:
    struct Data {
      std::size_t                n = 1;
      std::vector<std::uint16_t> table;
      std::vector<Elem>          inverse;
      std::vector<std::uint64_t> orders;
      std::uint64_t              exponent = 1;
      std::vector<std::string>   names;
      AssociativityCheck         assoc = AssociativityCheck::ByConstruction;
    };

    FiniteGroup(Table const& table, std::vector<std::string> names, AssociativityCheck check) {
      auto        data = std::make_shared<Data>();
      std::size_t n    = table.size();
      data->n          = n;
      data->table.resize(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          data->table[x * n + y] = static_cast<std::uint16_t>(table[x][y]);
        }
      }
      data->inverse.assign(n, 0);
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          if (table[x][y] == 0) {
            data->inverse[x] = y;
            break;
          }
        }
      }
      data->orders.assign(n, 1);
      for (Elem x = 1; x < n; ++x) {
        Elem          y = x;
        std::uint64_t k = 1;
        while (y != 0 && k <= n) {
          y = table[y][x];
          ++k;
        }
        data->orders[x] = k;
        data->exponent  = std::lcm(data->exponent, k);
      }
      data->names = std::move(names);
      data->assoc = check;
      _data       = std::move(data);
    }

    static void validate_shape(Table const& table, std::vector<std::string> const& names) {
      std::size_t const n = table.size();
      if (n == 0) {
        throw Error(ErrorKind::InvalidInput, "empty multiplication table");
      }
      if (n > kMaxGroupOrder) {
        throw Error(ErrorKind::SizeCap,
                    "group order " + std::to_string(n) + " exceeds the cap "
                        + std::to_string(kMaxGroupOrder));
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (table[x].size() != n) {
          throw Error(ErrorKind::InvalidInput,
                      "row " + std::to_string(x) + " has " + std::to_string(table[x].size())
                          + " entries, expected " + std::to_string(n));
        }
        for (std::size_t y = 0; y < n; ++y) {
          if (table[x][y] >= n) {
            throw Error(ErrorKind::InvalidInput,
                        "entry [" + std::to_string(x) + "][" + std::to_string(y)
                            + "] = " + std::to_string(table[x][y]) + " is out of range");
          }
        }
      }
      if (!names.empty() && names.size() != n) {
        throw Error(ErrorKind::InvalidInput,
                    "names has " + std::to_string(names.size()) + " entries, expected "
                        + std::to_string(n));
      }
    }

    std::shared_ptr<Data const> _data;
  };

  inline FiniteGroup construct_group(Table const& table, std::vector<std::string> names = {}) {
    return FiniteGroup::from_table(table, std::move(names));
  }

  ////////////////////////////////////////////////////////////////////////
  // ElemSet: a bitset over element indices
  ////////////////////////////////////////////////////////////////////////

  class ElemSet {
   public:
    ElemSet() = default;
    explicit ElemSet(std::size_t universe) : _size(universe), _words((universe + 63) / 64, 0) {}

    std::size_t universe() const noexcept {
      return _size;
    }

    bool contains(Elem x) const noexcept {
      return x < _size && ((_words[x >> 6] >> (x & 63)) & 1U);
    }

    bool insert(Elem x) noexcept {
      auto& w   = _words[x >> 6];
      auto  bit = std::uint64_t{1} << (x & 63);
      bool  new_elem = (w & bit) == 0;
      w |= bit;
      return new_elem;
    }

    std::size_t count() const noexcept {
      std::size_t c = 0;
      for (auto w : _words) {
        c += static_cast<std::size_t>(__builtin_popcountll(w));
      }
      return c;
    }

    std::vector<Elem> to_vector() const {
      std::vector<Elem> out;
      for (Elem x = 0; x < _size; ++x) {
        if (contains(x)) {
          out.push_back(x);
        }
      }
      return out;
    }

    ElemSet intersect(ElemSet const& other) const {
      ElemSet r(_size);
      for (std::size_t i = 0; i < _words.size(); ++i) {
        r._words[i] = _words[i] & other._words[i];
      }
      return r;
    }

    bool is_subset_of(ElemSet const& other) const noexcept {
      for (std::size_t i = 0; i < _words.size(); ++i) {
        if ((_words[i] & ~other._words[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(ElemSet const&, ElemSet const&) = default;

   private:
    std::size_t                _size = 0;
    std::vector<std::uint64_t> _words;
  };

  ////////////////////////////////////////////////////////////////////////
  // Subgroup
  ////////////////////////////////////////////////////////////////////////

  class Subgroup {
   public:
    Subgroup() = default;

    // Checks membership of identity, closure and inverses.
    static Subgroup from_members(FiniteGroup const& g, std::vector<Elem> members) {
      ElemSet set(g.order());
      for (Elem x : members) {
        if (x >= g.order()) {
          throw Error(ErrorKind::InvalidInput, "element " + std::to_string(x) + " out of range");
        }
        set.insert(x);
      }
      if (!set.contains(FiniteGroup::identity())) {
        throw Error(ErrorKind::NotSubgroup, "subgroup does not contain the identity");
      }
      auto sorted = set.to_vector();
      for (Elem x : sorted) {
        if (!set.contains(g.inv(x))) {
          throw Error(ErrorKind::NotSubgroup,
                      "not closed under inverses at element " + std::to_string(x));
        }
        for (Elem y : sorted) {
          if (!set.contains(g.mul(x, y))) {
            throw Error(ErrorKind::NotSubgroup,
                        "not closed: " + std::to_string(x) + "*" + std::to_string(y));
          }
        }
      }
      return Subgroup(g, std::move(set));
    }

    // No closure check; callers guarantee the set is a subgroup.
    static Subgroup trusted(FiniteGroup const& g, ElemSet set) {
      return Subgroup(g, std::move(set));
    }

    static Subgroup trivial(FiniteGroup const& g) {
      ElemSet s(g.order());
      s.insert(FiniteGroup::identity());
      return Subgroup(g, std::move(s));
    }

    static Subgroup whole(FiniteGroup const& g) {
      ElemSet s(g.order());
      for (Elem x = 0; x < g.order(); ++x) {
        s.insert(x);
      }
      return Subgroup(g, std::move(s));
    }

    FiniteGroup const& parent() const noexcept {
      return _parent;
    }

    std::vector<Elem> const& members() const noexcept {
      return _members;
    }

    ElemSet const& set() const noexcept {
      return _set;
    }

    std::size_t order() const noexcept {
      return _members.size();
    }

    std::size_t index() const noexcept {
      return _parent.order() / _members.size();
    }

    bool contains(Elem x) const noexcept {
      return _set.contains(x);
    }

    bool is_trivial() const noexcept {
      return order() == 1;
    }

    bool is_whole() const noexcept {
      return order() == _parent.order();
    }

    bool is_subgroup_of(Subgroup const& other) const noexcept {
      return _set.is_subset_of(other._set);
    }

    friend bool operator==(Subgroup const& a, Subgroup const& b) noexcept {
      return a._members == b._members;
    }

    // Canonical order: by order, then by sorted member list.
    friend bool operator<(Subgroup const& a, Subgroup const& b) noexcept {
      if (a.order() != b.order()) {
        return a.order() < b.order();
      }
      return a._members < b._members;
    }

   private:
    Subgroup(FiniteGroup const& g, ElemSet set)
        : _parent(g), _set(std::move(set)), _members(_set.to_vector()) {}

    FiniteGroup       _parent;
    ElemSet           _set;
    std::vector<Elem> _members;
  };

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism
  ////////////////////////////////////////////////////////////////////////

  class Homomorphism {
   public:
    Homomorphism() = default;

    // Checks map(xy) = map(x)map(y) on all pairs.
    static Homomorphism checked(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
      if (map.size() != source.order()) {
        throw Error(ErrorKind::InvalidInput, "homomorphism map has the wrong length");
      }
      for (Elem x = 0; x < source.order(); ++x) {
        if (map[x] >= target.order()) {
          throw Error(ErrorKind::InvalidInput, "homomorphism image out of range");
        }
      }
      for (Elem x = 0; x < source.order(); ++x) {
        for (Elem y = 0; y < source.order(); ++y) {
          if (map[source.mul(x, y)] != target.mul(map[x], map[y])) {
            throw Error(ErrorKind::InvalidInput,
                        "map is not a homomorphism at (" + std::to_string(x) + ", "
                            + std::to_string(y) + ")");
          }
        }
      }
      return Homomorphism(std::move(source), std::move(target), std::move(map));
    }

    static Homomorphism trusted(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
      return Homomorphism(std::move(source), std::move(target), std::move(map));
    }

    FiniteGroup const& source() const noexcept {
      return _source;
    }
    FiniteGroup const& target() const noexcept {
      return _target;
    }
    std::vector<Elem> const& map() const noexcept {
      return _map;
    }
    Elem operator()(Elem x) const noexcept {
      return _map[x];
    }

    Subgroup kernel() const {
      ElemSet s(_source.order());
      for (Elem x = 0; x < _source.order(); ++x) {
        if (_map[x] == FiniteGroup::identity()) {
          s.insert(x);
        }
      }
      return Subgroup::trusted(_source, std::move(s));
    }

   private:
    Homomorphism(FiniteGroup s, FiniteGroup t, std::vector<Elem> m)
        : _source(std::move(s)), _target(std::move(t)), _map(std::move(m)) {}

    FiniteGroup       _source;
    FiniteGroup       _target;
    std::vector<Elem> _map;
  };

}  // namespace amalgsep
