#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amalgsep/core/error.hpp"

namespace amalgsep {

  struct Letter {
    std::uint32_t gen  = 0;
    std::int8_t   sign = 1;  // +1 or -1

    Letter inverse() const noexcept {
      return {gen, static_cast<std::int8_t>(-sign)};
    }

    // Index into per-letter tables: x0, x0^-1, x1, x1^-1, ...
    std::size_t slot() const noexcept {
      return 2 * static_cast<std::size_t>(gen) + (sign < 0 ? 1 : 0);
    }

    static Letter from_slot(std::size_t s) noexcept {
      return {static_cast<std::uint32_t>(s / 2), static_cast<std::int8_t>(s % 2 ? -1 : 1)};
    }

    friend bool operator==(Letter, Letter) = default;
    friend auto operator<=>(Letter a, Letter b) noexcept {
      return a.slot() <=> b.slot();
    }
  };

  // A freely reduced word. Every constructor reduces, so equality of words is
  // equality in the free group.
  class FreeWord {
   public:
    FreeWord() = default;

    explicit FreeWord(std::vector<Letter> raw) {
      for (auto l : raw) {
        push(l);
      }
    }

    static FreeWord generator(std::uint32_t gen, int sign = 1) {
      FreeWord w;
      w._letters.push_back({gen, static_cast<std::int8_t>(sign < 0 ? -1 : 1)});
      return w;
    }

    std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }
    std::size_t length() const noexcept {
      return _letters.size();
    }
    bool empty() const noexcept {
      return _letters.empty();
    }

    // Largest generator index used, plus one.
    std::uint32_t support() const noexcept {
      std::uint32_t r = 0;
      for (auto l : _letters) {
        r = std::max(r, l.gen + 1);
      }
      return r;
    }

    FreeWord inverse() const {
      FreeWord w;
      w._letters.reserve(_letters.size());
      for (auto it = _letters.rbegin(); it != _letters.rend(); ++it) {
        w._letters.push_back(it->inverse());
      }
      return w;
    }

    FreeWord& operator*=(FreeWord const& rhs) {
      for (auto l : rhs._letters) {
        push(l);
      }
      return *this;
    }

    friend FreeWord operator*(FreeWord lhs, FreeWord const& rhs) {
      lhs *= rhs;
      return lhs;
    }

    FreeWord power(std::int64_t k) const {
      FreeWord base = k < 0 ? inverse() : *this;
      FreeWord r;
      for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
        r *= base;
      }
      return r;
    }

    // Substitutes a word for each generator.
    FreeWord substitute(std::vector<FreeWord> const& images) const {
      FreeWord r;
      for (auto l : _letters) {
        if (l.gen >= images.size()) {
          throw Error(ErrorKind::InvalidInput, "generator index out of range in substitution");
        }
        r *= l.sign > 0 ? images[l.gen] : images[l.gen].inverse();
      }
      return r;
    }

    FreeWord prefix(std::size_t n) const {
      FreeWord w;
      w._letters.assign(_letters.begin(), _letters.begin() + static_cast<std::ptrdiff_t>(n));
      return w;
    }

    FreeWord suffix_from(std::size_t n) const {
      FreeWord w;
      w._letters.assign(_letters.begin() + static_cast<std::ptrdiff_t>(n), _letters.end());
      return w;
    }

    std::string to_string(std::vector<std::string> const& names) const {
      if (_letters.empty()) {
        return "1";
      }
      std::string out;
      for (std::size_t i = 0; i < _letters.size();) {
        std::size_t j = i;
        while (j < _letters.size() && _letters[j] == _letters[i]) {
          ++j;
        }
        auto const  l    = _letters[i];
        std::string name = l.gen < names.size() ? names[l.gen] : "x" + std::to_string(l.gen);
        auto        exp  = static_cast<long>(j - i) * l.sign;
        if (!out.empty()) {
          out += ' ';
        }
        out += name;
        if (exp != 1) {
          out += "^" + std::to_string(exp);
        }
        i = j;
      }
      return out;
    }

    friend bool operator==(FreeWord const&, FreeWord const&) = default;

    // Shortlex.
    friend std::strong_ordering operator<=>(FreeWord const& a, FreeWord const& b) {
      if (a.length() != b.length()) {
        return a.length() <=> b.length();
      }
      return std::lexicographical_compare_three_way(a._letters.begin(), a._letters.end(),
                                                    b._letters.begin(), b._letters.end());
    }

   private:
    void push(Letter l) {
      if (!_letters.empty() && _letters.back() == l.inverse()) {
        _letters.pop_back();
      } else {
        _letters.push_back(l);
      }
    }

    std::vector<Letter> _letters;
  };

  inline FreeWord reduce_word(std::vector<Letter> raw) {
    return FreeWord(std::move(raw));
  }

  struct FreeWordHash {
    std::size_t operator()(FreeWord const& w) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (auto l : w.letters()) {
        h = (h ^ l.slot()) * 1099511628211ULL;
      }
      return h;
    }
  };

  // All reduced words over `rank` generators of length exactly n, in
  // shortlex order.
  inline std::vector<FreeWord> words_of_length(std::uint32_t rank, std::size_t n) {
    std::vector<FreeWord> level{FreeWord{}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<FreeWord> next;
      for (auto const& w : level) {
        for (std::size_t s = 0; s < 2 * static_cast<std::size_t>(rank); ++s) {
          auto l = Letter::from_slot(s);
          if (!w.empty() && w.letters().back() == l.inverse()) {
            continue;
          }
          auto letters = w.letters();
          letters.push_back(l);
          next.emplace_back(std::move(letters));
        }
      }
      level = std::move(next);
    }
    return level;
  }

  // k with h = g^k, if any. Writing g = u g0 u^-1 with g0 cyclically
  // reduced, |g^k| = 2|u| + |k||g0| for k != 0, which pins down |k|.
  inline std::optional<std::int64_t> free_power_exponent(FreeWord const& h, FreeWord const& g) {
    if (h.empty()) {
      return 0;
    }
    if (g.empty()) {
      return std::nullopt;
    }
    auto const& ls = g.letters();
    std::size_t k  = 0;
    while (2 * k + 1 < ls.size() && ls[k] == ls[ls.size() - 1 - k].inverse()) {
      ++k;
    }
    std::size_t const core = ls.size() - 2 * k;
    if (h.length() < 2 * k || (h.length() - 2 * k) % core != 0) {
      return std::nullopt;
    }
    auto e = static_cast<std::int64_t>((h.length() - 2 * k) / core);
    for (auto ee : {e, -e}) {
      if (g.power(ee) == h) {
        return ee;
      }
    }
    return std::nullopt;
  }

}  // namespace amalgsep
