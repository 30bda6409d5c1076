#pragma once

#include <array>
#include <bitset>
#include <string>
#include <utility>
#include <vector>

#include "auxsym/orbifold.hpp"

namespace auxsym {

/// One node of the symmetry order: a set of mutually-embedding wallpaper
/// groups. Only three nodes have two members (3*3/*333, 2*22/*2222, **/*x);
/// the remaining eleven are singletons.
struct SymmetryClass {
  std::vector<WallpaperGroup> members;
  std::string label;

  bool contains(WallpaperGroup g) const {
    for (WallpaperGroup m : members)
      if (m == g) return true;
    return false;
  }
};

enum class RotationCategory { SixAndThreeFold, FourFold, TwoFold, NoRotation };

inline const char* to_string(RotationCategory c) {
  switch (c) {
    case RotationCategory::SixAndThreeFold: return "6&3-fold";
    case RotationCategory::FourFold: return "4-fold";
    case RotationCategory::TwoFold: return "2-fold";
    case RotationCategory::NoRotation: return "none";
  }
  return "?";
}

/// Buckets a group by its highest rotation order: 6 and 3 together, 4 alone,
/// 2 alone, and no rotation.
inline RotationCategory rotation_category(WallpaperGroup g) {
  switch (features(g).highest_rotation_order) {
    case 6:
    case 3: return RotationCategory::SixAndThreeFold;
    case 4: return RotationCategory::FourFold;
    case 2: return RotationCategory::TwoFold;
    default: return RotationCategory::NoRotation;
  }
}

struct PosetAxiomReport {
  bool reflexive = false;
  bool antisymmetric = false;
  bool transitive = false;
  bool all_pass() const { return reflexive && antisymmetric && transitive; }
};

/// The "more symmetric than" order on the 14 equivalence classes of
/// wallpaper groups. Cover edges are fixed data; queries run on the
/// precomputed reflexive-transitive closure, so omitted-but-implied or
/// redundant covers would not change any answer.
///
/// The 632 -> 2222 cover is a genuine embedding even though it is often
/// drawn as a secondary (dotted) relation; it is an ordinary cover here.
class SymmetryPoset {
 public:
  static constexpr int kClassCount = 14;

  static const SymmetryPoset& instance() {
    static const SymmetryPoset poset;
    return poset;
  }

  const std::vector<SymmetryClass>& nodes() const { return nodes_; }

  /// Cover edges as (more symmetric, less symmetric) node-index pairs.
  const std::vector<std::pair<int, int>>& cover_edges() const { return covers_; }

  int class_index(WallpaperGroup g) const {
    return group_class_[static_cast<int>(g)];
  }

  const SymmetryClass& class_of(WallpaperGroup g) const {
    return nodes_[class_index(g)];
  }

  /// True iff h's class is reachable downward from g's class (reflexive).
  bool is_more_symmetric(WallpaperGroup g, WallpaperGroup h) const {
    return reach_[class_index(g)][class_index(h)];
  }

  bool leq_classes(int lower, int higher) const { return reach_[higher][lower]; }

  std::vector<int> maximal_class_indices() const {
    std::vector<int> out;
    for (int i = 0; i < kClassCount; ++i) {
      bool has_incoming = false;
      for (const auto& [from, to] : covers_)
        if (to == i) has_incoming = true;
      if (!has_incoming) out.push_back(i);
    }
    return out;
  }

  std::vector<int> minimal_class_indices() const {
    std::vector<int> out;
    for (int i = 0; i < kClassCount; ++i) {
      bool has_outgoing = false;
      for (const auto& [from, to] : covers_)
        if (from == i) has_outgoing = true;
      if (!has_outgoing) out.push_back(i);
    }
    return out;
  }

  /// Re-derives reflexivity, antisymmetry, and transitivity of the closure
  /// over all class pairs (triples for transitivity).
  PosetAxiomReport axioms_check() const {
    PosetAxiomReport r;
    r.reflexive = true;
    for (int i = 0; i < kClassCount; ++i)
      if (!reach_[i][i]) r.reflexive = false;
    r.antisymmetric = true;
    for (int i = 0; i < kClassCount; ++i)
      for (int j = 0; j < kClassCount; ++j)
        if (i != j && reach_[i][j] && reach_[j][i]) r.antisymmetric = false;
    r.transitive = true;
    for (int i = 0; i < kClassCount; ++i)
      for (int j = 0; j < kClassCount; ++j)
        for (int k = 0; k < kClassCount; ++k)
          if (reach_[i][j] && reach_[j][k] && !reach_[i][k]) r.transitive = false;
    return r;
  }

  /// Graphviz description of the Hasse diagram, top to bottom.
  std::string to_dot() const {
    std::string out = "digraph symmetry_order {\n  rankdir=TB;\n  node [shape=box];\n";
    for (int i = 0; i < kClassCount; ++i)
      out += "  n" + std::to_string(i) + " [label=\"" + nodes_[i].label + "\"];\n";
    for (const auto& [from, to] : covers_) {
      out += "  n" + std::to_string(from) + " -> n" + std::to_string(to);
      // conventionally drawn dotted in hand drawings of this order
      if (nodes_[from].label == "632" && nodes_[to].label == "2222")
        out += " [style=dotted]";
      out += ";\n";
    }
    out += "}\n";
    return out;
  }

 private:
  SymmetryPoset() {
    using G = WallpaperGroup;
    auto node = [&](std::vector<G> members, std::string label) {
      nodes_.push_back(SymmetryClass{std::move(members), std::move(label)});
    };
    node({G::O}, "o");                          // 0
    node({G::XX}, "xx");                        // 1
    node({G::StarX, G::StarStar}, "**/*x");     // 2
    node({G::W2222}, "2222");                   // 3
    node({G::W22X}, "22x");                     // 4
    node({G::W22Star}, "22*");                  // 5
    node({G::Star2222, G::W2Star22}, "2*22/*2222");  // 6
    node({G::W442}, "442");                     // 7
    node({G::W4Star2}, "4*2");                  // 8
    node({G::Star442}, "*442");                 // 9
    node({G::W333}, "333");                     // 10
    node({G::W3Star3, G::Star333}, "3*3/*333"); // 11
    node({G::W632}, "632");                     // 12
    node({G::Star632}, "*632");                 // 13

    covers_ = {
        {13, 12}, {13, 6}, {13, 11},            // *632
        {12, 10}, {12, 3},                      // 632 (incl. the dotted cover)
        {11, 10}, {11, 2},                      // 3*3/*333
        {9, 8},                                 // *442
        {8, 7},  {8, 5},  {8, 6},               // 4*2
        {7, 3},                                 // 442
        {6, 5},  {6, 2},                        // 2*22/*2222
        {5, 4},  {5, 2},                        // 22*
        {4, 3},  {4, 1},                        // 22x
        {3, 0},                                 // 2222
        {2, 1},                                 // **/*x
        {1, 0},                                 // xx
        {10, 0},                                // 333
    };

    group_class_.fill(-1);
    for (int i = 0; i < kClassCount; ++i)
      for (WallpaperGroup g : nodes_[i].members)
        group_class_[static_cast<int>(g)] = i;

    // reflexive-transitive closure by saturation
    for (int i = 0; i < kClassCount; ++i) reach_[i][i] = true;
    for (const auto& [from, to] : covers_) reach_[from][to] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < kClassCount; ++i)
        for (int j = 0; j < kClassCount; ++j)
          if (reach_[i][j])
            for (int k = 0; k < kClassCount; ++k)
              if (reach_[j][k] && !reach_[i][k]) {
                reach_[i][k] = true;
                changed = true;
              }
    }
  }

  std::vector<SymmetryClass> nodes_;
  std::vector<std::pair<int, int>> covers_;
  std::array<int, kGroupCount> group_class_{};
  std::array<std::bitset<kClassCount>, kClassCount> reach_{};
};

inline const SymmetryClass& class_of(WallpaperGroup g) {
  return SymmetryPoset::instance().class_of(g);
}

inline std::vector<std::pair<const SymmetryClass*, const SymmetryClass*>> covers() {
  const auto& poset = SymmetryPoset::instance();
  std::vector<std::pair<const SymmetryClass*, const SymmetryClass*>> out;
  for (const auto& [from, to] : poset.cover_edges())
    out.emplace_back(&poset.nodes()[from], &poset.nodes()[to]);
  return out;
}

/// True iff g is at least as symmetric as h.
inline bool is_more_symmetric(WallpaperGroup g, WallpaperGroup h) {
  return SymmetryPoset::instance().is_more_symmetric(g, h);
}

inline PosetAxiomReport poset_axioms_check() {
  return SymmetryPoset::instance().axioms_check();
}

}  // namespace auxsym
