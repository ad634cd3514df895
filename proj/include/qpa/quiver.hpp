#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qpa/scalar.hpp"

// Quivers, length-2 relations, and validated quadratic presentations.
//
// Composition convention, fixed once for the whole engine: in a word written
// [a, b] the right factor b acts first, so the word is composable iff
// source(a) == target(b); it runs from source(b) to target(a). Products of
// longer words follow the same rule.

namespace qpa {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  std::array<int, 2> weight{0, 0};
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    throw error("unknown vertex '" + name + "'");
  }
  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    throw error("unknown arrow '" + name + "'");
  }

  void validate() const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (vertices[i] == vertices[j])
          throw error("duplicate vertex '" + vertices[i] + "'");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const Arrow& a = arrows[i];
      if (a.source < 0 || a.source >= static_cast<int>(vertices.size()) ||
          a.target < 0 || a.target >= static_cast<int>(vertices.size()))
        throw error("arrow '" + a.name + "' has an endpoint outside the quiver");
      for (std::size_t j = i + 1; j < arrows.size(); ++j)
        if (arrows[j].name == a.name)
          throw error("duplicate arrow '" + a.name + "'");
    }
  }
};

// One summand coeff * (arrow[first] . arrow[second]); second acts first.
struct RelationTerm {
  Scalar coeff;
  int first = 0;
  int second = 0;
};

struct Relation {
  std::vector<RelationTerm> terms;
};

// A basis path: leftmost arrow last applied. Degree 0 words are the vertex
// idempotents (empty arrow list, from == to).
struct BasisWord {
  int from = 0;
  int to = 0;
  std::vector<int> arrows;

  int degree() const { return static_cast<int>(arrows.size()); }

  friend bool operator==(const BasisWord& x, const BasisWord& y) {
    return x.from == y.from && x.arrows == y.arrows;
  }
  friend bool operator<(const BasisWord& x, const BasisWord& y) {
    if (x.arrows != y.arrows) return x.arrows < y.arrows;
    return x.from < y.from;
  }

  std::string str(const Quiver& q) const {
    if (arrows.empty()) return "e(" + q.vertices[from] + ")";
    std::string s;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (i) s += ".";
      s += q.arrows[arrows[i]].name;
    }
    return s;
  }
};

struct QuadraticPresentation {
  Quiver quiver;
  Field field;
  std::vector<Relation> relations;

  // Composability and block consistency; throws naming the offending relation.
  void validate() const {
    quiver.validate();
    for (std::size_t ri = 0; ri < relations.size(); ++ri) {
      const Relation& r = relations[ri];
      const std::string where = "relation " + std::to_string(ri);
      if (r.terms.empty()) throw error(where + " has no terms");
      int from = -1, to = -1;
      for (const RelationTerm& t : r.terms) {
        if (t.coeff.characteristic() != field.characteristic())
          throw error(where + " has a coefficient from the wrong field");
        if (t.first < 0 ||
            t.first >= static_cast<int>(quiver.arrows.size()) ||
            t.second < 0 || t.second >= static_cast<int>(quiver.arrows.size()))
          throw error(where + " references an unknown arrow");
        const Arrow& a = quiver.arrows[t.first];
        const Arrow& b = quiver.arrows[t.second];
        if (a.source != b.target)
          throw error(where + ": path [" + a.name + ", " + b.name +
                      "] is not composable");
        if (from == -1) {
          from = b.source;
          to = a.target;
        } else if (from != b.source || to != a.target) {
          throw error(where + " mixes vertex blocks");
        }
      }
    }
  }

  std::pair<int, int> relation_block(std::size_t ri) const {
    const RelationTerm& t = relations[ri].terms.front();
    return {quiver.arrows[t.second].source, quiver.arrows[t.first].target};
  }
};

struct HomogeneityReport {
  bool ok = true;
  std::string diagnostic;  // names the first offending relation
};

inline HomogeneityReport is_weight_homogeneous(const QuadraticPresentation& p) {
  for (std::size_t ri = 0; ri < p.relations.size(); ++ri) {
    const Relation& r = p.relations[ri];
    std::array<int, 2> w{0, 0};
    bool first = true;
    for (const RelationTerm& t : r.terms) {
      const Arrow& a = p.quiver.arrows[t.first];
      const Arrow& b = p.quiver.arrows[t.second];
      std::array<int, 2> tw{a.weight[0] + b.weight[0],
                            a.weight[1] + b.weight[1]};
      if (first) {
        w = tw;
        first = false;
      } else if (tw != w) {
        HomogeneityReport rep;
        rep.ok = false;
        rep.diagnostic = "relation " + std::to_string(ri) +
                         " mixes weights (" + std::to_string(w[0]) + "," +
                         std::to_string(w[1]) + ") and (" +
                         std::to_string(tw[0]) + "," + std::to_string(tw[1]) +
                         ")";
        return rep;
      }
    }
  }
  return {};
}

// All composable words of n arrows, in lexicographic arrow-sequence order.
inline std::vector<BasisWord> enumerate_paths(const Quiver& q, int n) {
  std::vector<BasisWord> out;
  if (n == 0) {
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
      out.push_back(BasisWord{static_cast<int>(v), static_cast<int>(v), {}});
    return out;
  }
  std::vector<int> word;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      BasisWord w;
      w.arrows = word;
      w.from = q.arrows[word.back()].source;
      w.to = q.arrows[word.front()].target;
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (!word.empty() &&
          q.arrows[word.back()].source != q.arrows[a].target)
        continue;
      word.push_back(static_cast<int>(a));
      self(self, remaining - 1);
      word.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

// Opposite presentation: arrows reversed (names kept), relation words
// reversed. Left-module data over it mirrors right-module data over p.
inline QuadraticPresentation opposite_presentation(
    const QuadraticPresentation& p) {
  QuadraticPresentation op = p;
  for (Arrow& a : op.quiver.arrows) {
    std::swap(a.source, a.target);
  }
  for (Relation& r : op.relations)
    for (RelationTerm& t : r.terms) std::swap(t.first, t.second);
  return op;
}

}  // namespace qpa
