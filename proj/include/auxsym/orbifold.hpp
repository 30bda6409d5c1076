#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "auxsym/errors.hpp"

namespace auxsym {

/// The 17 plane symmetry groups, in a fixed canonical order. Enumerator
/// names transliterate the orbifold symbol: a leading `W` stands in for a
/// digit start, `Star` for `*`, `X` for the cross-cap.
enum class WallpaperGroup : std::uint8_t {
  O,         // o
  XX,        // xx
  StarX,     // *x
  StarStar,  // **
  W2222,     // 2222
  W22X,      // 22x
  W22Star,   // 22*
  Star2222,  // *2222
  W2Star22,  // 2*22
  W442,      // 442
  W4Star2,   // 4*2
  Star442,   // *442
  W333,      // 333
  W3Star3,   // 3*3
  Star333,   // *333
  W632,      // 632
  Star632,   // *632
};

inline constexpr int kGroupCount = 17;

inline constexpr std::array<WallpaperGroup, kGroupCount> all_groups() {
  return {WallpaperGroup::O,        WallpaperGroup::XX,
          WallpaperGroup::StarX,    WallpaperGroup::StarStar,
          WallpaperGroup::W2222,    WallpaperGroup::W22X,
          WallpaperGroup::W22Star,  WallpaperGroup::Star2222,
          WallpaperGroup::W2Star22, WallpaperGroup::W442,
          WallpaperGroup::W4Star2,  WallpaperGroup::Star442,
          WallpaperGroup::W333,     WallpaperGroup::W3Star3,
          WallpaperGroup::Star333,  WallpaperGroup::W632,
          WallpaperGroup::Star632};
}

/// Structured orbifold symbol. Cones are rotation centers off mirror lines,
/// each kaleidoscope is one mirror boundary with its corner orders, a
/// cross-cap is a glide, and the handle is the all-translations feature.
struct OrbifoldSymbol {
  std::vector<int> cones;
  std::vector<std::vector<int>> kaleidoscopes;
  int cross_caps = 0;
  bool handle = false;

  bool operator==(const OrbifoldSymbol&) const = default;
};

using Rational = boost::rational<long long>;

/// Feature cost of a symbol: handle 2, kaleidoscope 1, cross-cap 1, cone of
/// order n (n-1)/n, corner of order n (n-1)/(2n). Exactly 2 for the plane
/// groups; evaluated in exact rational arithmetic.
inline Rational euler_cost(const OrbifoldSymbol& sym) {
  Rational cost(0);
  if (sym.handle) cost += Rational(2);
  cost += Rational(sym.cross_caps);
  for (int n : sym.cones) cost += Rational(n - 1, n);
  for (const auto& corners : sym.kaleidoscopes) {
    cost += Rational(1);
    for (int n : corners) cost += Rational(n - 1, 2 * n);
  }
  return cost;
}

inline std::string format_symbol(const OrbifoldSymbol& sym) {
  std::string out;
  if (sym.handle) out += 'o';
  for (int n : sym.cones) out += static_cast<char>('0' + n);
  for (const auto& corners : sym.kaleidoscopes) {
    out += '*';
    for (int n : corners) out += static_cast<char>('0' + n);
  }
  out.append(static_cast<std::size_t>(sym.cross_caps), 'x');
  return out;
}

namespace detail {

inline const std::array<std::string_view, kGroupCount>& canonical_symbols() {
  static const std::array<std::string_view, kGroupCount> table = {
      "o",    "xx",  "*x",   "**",  "2222", "22x", "22*", "*2222", "2*22",
      "442",  "4*2", "*442", "333", "3*3",  "*333", "632", "*632"};
  return table;
}

// Lowercases ASCII letters and rewrites the UTF-8 multiplication sign to the
// ASCII cross-cap 'x'. Surrounding whitespace is dropped.
inline std::string normalize_symbol_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == 0xC3 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x97) {
      out += 'x';  // U+00D7
      ++i;
      continue;
    }
    out += static_cast<char>(std::tolower(c));
  }
  std::size_t b = out.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = out.find_last_not_of(" \t\r\n");
  return out.substr(b, e - b + 1);
}

inline void canonicalize(OrbifoldSymbol& sym) {
  std::sort(sym.cones.begin(), sym.cones.end(), std::greater<>());
  for (auto& corners : sym.kaleidoscopes)
    std::sort(corners.begin(), corners.end(), std::greater<>());
  std::sort(sym.kaleidoscopes.begin(), sym.kaleidoscopes.end(), std::greater<>());
}

}  // namespace detail

inline std::string to_string(WallpaperGroup g) {
  return std::string(detail::canonical_symbols()[static_cast<int>(g)]);
}

inline std::optional<WallpaperGroup> group_from_canonical(std::string_view s) {
  const auto& table = detail::canonical_symbols();
  for (int i = 0; i < kGroupCount; ++i)
    if (table[i] == s) return static_cast<WallpaperGroup>(i);
  return std::nullopt;
}

/// Parses an orbifold symbol in the ASCII convention (`*` mirror, `x`
/// cross-cap, `o` handle, digits 2/3/4/6). Digits before the first `*`
/// are cones; digits after each `*` are that kaleidoscope's corners.
inline OrbifoldSymbol parse_symbol(std::string_view text) {
  const std::string s = detail::normalize_symbol_text(text);
  if (s.empty())
    throw Error(ErrorCode::NotAWallpaperGroup, "empty orbifold symbol");

  OrbifoldSymbol sym;
  int handles = 0;
  bool seen_cross_cap = false;
  bool in_kaleidoscope = false;
  for (char c : s) {
    if (c == 'o') {
      ++handles;
      continue;
    }
    if (c == '*') {
      if (seen_cross_cap)
        throw Error(ErrorCode::NotAWallpaperGroup,
                    "'*' may not follow a cross-cap in '" + s + "'");
      sym.kaleidoscopes.emplace_back();
      in_kaleidoscope = true;
      continue;
    }
    if (c == 'x') {
      ++sym.cross_caps;
      seen_cross_cap = true;
      continue;
    }
    if (c >= '0' && c <= '9') {
      int n = c - '0';
      if (n != 2 && n != 3 && n != 4 && n != 6)
        throw Error(ErrorCode::DigitOutOfRestriction,
                    "rotation order " + std::string(1, c) +
                        " violates the crystallographic restriction {2,3,4,6}");
      if (seen_cross_cap)
        throw Error(ErrorCode::NotAWallpaperGroup,
                    "digits may not follow a cross-cap in '" + s + "'");
      if (in_kaleidoscope)
        sym.kaleidoscopes.back().push_back(n);
      else
        sym.cones.push_back(n);
      continue;
    }
    throw Error(ErrorCode::UnknownCharacter,
                "unexpected character '" + std::string(1, c) + "' in '" + s + "'");
  }
  if (handles > 1)
    throw Error(ErrorCode::NotAWallpaperGroup,
                "more than one handle in '" + s + "'");
  sym.handle = handles == 1;

  detail::canonicalize(sym);
  const Rational cost = euler_cost(sym);
  if (cost != Rational(2))
    throw Error(ErrorCode::NotAWallpaperGroup,
                "'" + s + "' has feature cost " +
                    std::to_string(cost.numerator()) + "/" +
                    std::to_string(cost.denominator()) + ", not 2");
  if (!group_from_canonical(format_symbol(sym)))
    throw Error(ErrorCode::NotAWallpaperGroup,
                "'" + s + "' is not one of the 17 plane groups");
  return sym;
}

inline WallpaperGroup group_of(const OrbifoldSymbol& sym) {
  OrbifoldSymbol c = sym;
  detail::canonicalize(c);
  auto g = group_from_canonical(format_symbol(c));
  if (!g)
    throw Error(ErrorCode::NotAWallpaperGroup,
                "'" + format_symbol(c) + "' is not one of the 17 plane groups");
  return *g;
}

inline OrbifoldSymbol symbol_of(WallpaperGroup g) {
  return parse_symbol(detail::canonical_symbols()[static_cast<int>(g)]);
}

/// Parses a group name as used in CLI arguments and dataset files.
inline WallpaperGroup parse_group(std::string_view text) {
  try {
    return group_of(parse_symbol(text));
  } catch (const Error& e) {
    throw Error(ErrorCode::UnknownGroup,
                "'" + std::string(text) + "' is not a wallpaper group (" +
                    e.what() + ")");
  }
}

enum class Chirality { Chiral, Achiral };

struct GroupFeatures {
  int highest_rotation_order = 1;  // 1 when no rotation is present
  bool has_reflection = false;
  bool has_cross_cap = false;
  bool has_cone_points = false;
  bool has_corner_points = false;
  Chirality chirality = Chirality::Chiral;
};

/// A group is chiral exactly when its symbol contains no mirror; glide-only
/// groups (22x, xx) therefore count as chiral.
inline GroupFeatures features(const OrbifoldSymbol& sym) {
  GroupFeatures f;
  for (int n : sym.cones) f.highest_rotation_order = std::max(f.highest_rotation_order, n);
  for (const auto& corners : sym.kaleidoscopes)
    for (int n : corners) f.highest_rotation_order = std::max(f.highest_rotation_order, n);
  f.has_reflection = !sym.kaleidoscopes.empty();
  f.has_cross_cap = sym.cross_caps > 0;
  f.has_cone_points = !sym.cones.empty();
  f.has_corner_points = std::any_of(sym.kaleidoscopes.begin(), sym.kaleidoscopes.end(),
                                    [](const auto& c) { return !c.empty(); });
  f.chirality = f.has_reflection ? Chirality::Achiral : Chirality::Chiral;
  return f;
}

inline GroupFeatures features(WallpaperGroup g) { return features(symbol_of(g)); }

inline std::vector<std::pair<WallpaperGroup, OrbifoldSymbol>> enumerate_groups() {
  std::vector<std::pair<WallpaperGroup, OrbifoldSymbol>> out;
  out.reserve(kGroupCount);
  for (WallpaperGroup g : all_groups()) out.emplace_back(g, symbol_of(g));
  return out;
}

}  // namespace auxsym
