#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "qpa/matrix.hpp"
#include "qpa/poly.hpp"
#include "qpa/quiver.hpp"

// Degreewise construction of T(V)/(R): each layer n is the cokernel of the
// relation slice image(R (x) Layer_{n-2}) inside V (x) Layer_{n-1}, computed
// block by block with deterministic elimination on lex-ordered words. The
// surviving (non-pivot) words form the normal-form basis; pivot words carry
// their expansion, which is exactly left multiplication by an arrow.

namespace qpa {

using SparseVec = std::vector<std::pair<int, Scalar>>;

struct Layer {
  std::vector<BasisWord> basis;  // lex-sorted
  std::map<BasisWord, int> index;
  std::map<std::pair<int, int>, std::vector<int>> blocks;  // (from,to) -> ids

  int dim() const { return static_cast<int>(basis.size()); }
  int block_dim(int from, int to) const {
    auto it = blocks.find({from, to});
    return it == blocks.end() ? 0 : static_cast<int>(it->second.size());
  }
};

struct ArrowAction {
  // cols[i]: expansion of arrow * basis[i] of the layer below; empty when the
  // pair is not composable or the product is zero.
  std::vector<SparseVec> cols;
};

class GradedAlgebra {
 public:
  QuadraticPresentation pres;
  int max_degree = 0;
  bool reached_zero = false;
  std::vector<Layer> layers;                 // 0 .. built degree
  std::vector<std::vector<ArrowAction>> lmul;  // lmul[n][arrow], n >= 1

  int built_degree() const { return static_cast<int>(layers.size()) - 1; }

  int dim(int n) const {
    if (n < 0) return 0;
    if (n <= built_degree()) return layers[n].dim();
    if (reached_zero) return 0;
    throw error("degree " + std::to_string(n) + " not built");
  }

  // Largest degree with a nonzero component; requires a certified vanishing
  // degree so the answer cannot silently truncate.
  int top_degree() const {
    require_finite();
    for (int n = built_degree(); n >= 0; --n)
      if (layers[n].dim() > 0) return n;
    return -1;
  }

  int total_dimension() const {
    require_finite();
    int t = 0;
    for (const Layer& l : layers) t += l.dim();
    return t;
  }

  void require_finite() const {
    if (!reached_zero)
      throw error(
          "algebra not built to a vanishing degree; raise the degree bound");
  }

  std::vector<Scalar> zero_vector(int n) const {
    return std::vector<Scalar>(static_cast<std::size_t>(dim(n)),
                               pres.field.zero());
  }

  // Left multiplication by one arrow: layer n -> layer n+1.
  std::vector<Scalar> apply_arrow(int arrow, int n,
                                  const std::vector<Scalar>& v) const {
    if (n + 1 > built_degree()) {
      if (reached_zero) return {};
      throw error("product exceeds the built degree range");
    }
    std::vector<Scalar> out = zero_vector(n + 1);
    const ArrowAction& act = lmul[n + 1][arrow];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      for (const auto& [j, c] : act.cols[i]) out[j] += v[i] * c;
    }
    return out;
  }

  // Normal form of (basis word x) * (vector in layer n).
  std::vector<Scalar> word_times_vector(const BasisWord& x, int n,
                                        std::vector<Scalar> v) const {
    if (x.degree() == 0) {
      // idempotent: keep components whose target is x.from
      std::vector<Scalar> out = v;
      for (std::size_t i = 0; i < out.size(); ++i)
        if (layers[n].basis[i].to != x.from) out[i] = pres.field.zero();
      return out;
    }
    int deg = n;
    for (auto it = x.arrows.rbegin(); it != x.arrows.rend(); ++it) {
      v = apply_arrow(*it, deg, v);
      ++deg;
      if (v.empty() && reached_zero && deg > built_degree()) return {};
    }
    return v;
  }

  friend GradedAlgebra build_algebra(const QuadraticPresentation& p,
                                     int max_degree);
};

inline GradedAlgebra build_algebra(const QuadraticPresentation& p,
                                   int max_degree = 8) {
  p.validate();
  GradedAlgebra A;
  A.pres = p;
  A.max_degree = max_degree;
  const Field& F = p.field;
  const Quiver& Q = p.quiver;
  const int nv = static_cast<int>(Q.vertices.size());
  const int na = static_cast<int>(Q.arrows.size());

  Layer l0;
  for (int v = 0; v < nv; ++v) l0.basis.push_back(BasisWord{v, v, {}});
  std::sort(l0.basis.begin(), l0.basis.end());
  for (int i = 0; i < l0.dim(); ++i) {
    l0.index[l0.basis[i]] = i;
    l0.blocks[{l0.basis[i].from, l0.basis[i].to}].push_back(i);
  }
  A.layers.push_back(std::move(l0));
  A.lmul.push_back({});  // unused slot for degree 0

  for (int n = 1; n <= max_degree; ++n) {
    const Layer& prev = A.layers[n - 1];

    struct Gen {
      BasisWord word;
      int arrow;
      int prev_index;
    };
    std::map<std::pair<int, int>, std::vector<Gen>> gens;
    for (int bi = 0; bi < prev.dim(); ++bi)
      for (int a = 0; a < na; ++a) {
        if (Q.arrows[a].source != prev.basis[bi].to) continue;
        BasisWord w;
        w.from = prev.basis[bi].from;
        w.to = Q.arrows[a].target;
        w.arrows.reserve(n);
        w.arrows.push_back(a);
        for (int x : prev.basis[bi].arrows) w.arrows.push_back(x);
        gens[{w.from, w.to}].push_back(Gen{std::move(w), a, bi});
      }
    for (auto& [blk, gs] : gens)
      std::sort(gs.begin(), gs.end(),
                [](const Gen& x, const Gen& y) { return x.word < y.word; });

    // Per block: eliminate the relation slice, keep free words as the basis,
    // record pivot-word expansions over the free words.
    struct BlockOut {
      std::vector<Gen> gs;
      std::vector<int> status;  // -1 = free; otherwise pivot row id
      DenseMatrix reduced;
      std::vector<std::size_t> pivot_cols, free_cols;
    };
    std::map<std::pair<int, int>, BlockOut> outs;

    for (auto& [blk, gs] : gens) {
      std::map<std::pair<int, int>, int> colpos;  // (arrow, prev_index) -> col
      for (std::size_t c = 0; c < gs.size(); ++c)
        colpos[{gs[c].arrow, gs[c].prev_index}] = static_cast<int>(c);

      std::vector<std::vector<Scalar>> rows;
      if (n >= 2) {
        const Layer& below = A.layers[n - 2];
        for (std::size_t ri = 0; ri < p.relations.size(); ++ri) {
          auto [rs, rt] = p.relation_block(ri);
          if (rt != blk.second) continue;
          auto mit = below.blocks.find({blk.first, rs});
          if (mit == below.blocks.end()) continue;
          for (int mi : mit->second) {
            std::vector<Scalar> row(gs.size(), F.zero());
            bool nonzero = false;
            for (const RelationTerm& t : p.relations[ri].terms) {
              const SparseVec& vm = A.lmul[n - 1][t.second].cols[mi];
              for (const auto& [bj, c] : vm) {
                auto cit = colpos.find({t.first, bj});
                if (cit == colpos.end())
                  throw error("internal: generator lookup failed");
                row[cit->second] += t.coeff * c;
                nonzero = true;
              }
            }
            if (nonzero) rows.push_back(std::move(row));
          }
        }
      }

      BlockOut out;
      out.gs = std::move(gs);
      DenseMatrix m(F, rows.size(), out.gs.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < out.gs.size(); ++j)
          m.at(i, j) = rows[i][j];
      RrefResult rr = rref(m);
      out.reduced = std::move(rr.reduced);
      out.pivot_cols = rr.pivot_cols;
      out.status.assign(out.gs.size(), -1);
      for (std::size_t pi = 0; pi < out.pivot_cols.size(); ++pi)
        out.status[out.pivot_cols[pi]] = static_cast<int>(pi);
      for (std::size_t c = 0; c < out.gs.size(); ++c)
        if (out.status[c] == -1) out.free_cols.push_back(c);
      outs[blk] = std::move(out);
    }

    Layer layer;
    for (auto& [blk, out] : outs)
      for (std::size_t c : out.free_cols) layer.basis.push_back(out.gs[c].word);
    std::sort(layer.basis.begin(), layer.basis.end());
    for (int i = 0; i < layer.dim(); ++i) {
      layer.index[layer.basis[i]] = i;
      layer.blocks[{layer.basis[i].from, layer.basis[i].to}].push_back(i);
    }

    std::vector<ArrowAction> acts(na);
    for (int a = 0; a < na; ++a)
      acts[a].cols.assign(prev.dim(), SparseVec{});
    for (auto& [blk, out] : outs) {
      for (std::size_t c = 0; c < out.gs.size(); ++c) {
        const Gen& g = out.gs[c];
        SparseVec expansion;
        if (out.status[c] == -1) {
          expansion.push_back({layer.index.at(g.word), F.one()});
        } else {
          const int prow = out.status[c];
          for (std::size_t f : out.free_cols) {
            const Scalar& coeff = out.reduced.at(prow, f);
            if (!coeff.is_zero())
              expansion.push_back(
                  {layer.index.at(out.gs[f].word), -coeff});
          }
          std::sort(expansion.begin(), expansion.end(),
                    [](const auto& x, const auto& y) {
                      return x.first < y.first;
                    });
        }
        acts[g.arrow].cols[g.prev_index] = std::move(expansion);
      }
    }

    const bool empty = layer.dim() == 0;
    A.layers.push_back(std::move(layer));
    A.lmul.push_back(std::move(acts));
    if (empty) {
      A.reached_zero = true;
      break;
    }
  }
  return A;
}

// --- elements -------------------------------------------------------------

struct Element {
  const GradedAlgebra* alg = nullptr;
  std::map<int, std::vector<Scalar>> comp;  // degree -> dense coordinates

  bool is_zero() const {
    for (const auto& [d, v] : comp)
      for (const Scalar& c : v)
        if (!c.is_zero()) return false;
    return true;
  }

  Element& prune() {
    for (auto it = comp.begin(); it != comp.end();) {
      bool z = true;
      for (const Scalar& c : it->second)
        if (!c.is_zero()) {
          z = false;
          break;
        }
      it = z ? comp.erase(it) : std::next(it);
    }
    return *this;
  }

  friend Element operator+(const Element& x, const Element& y) {
    if (x.alg != y.alg) throw error("elements of different algebras");
    Element z = x;
    for (const auto& [d, v] : y.comp) {
      auto it = z.comp.find(d);
      if (it == z.comp.end()) {
        z.comp[d] = v;
      } else {
        for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
      }
    }
    return z.prune();
  }
  friend Element operator-(const Element& x, const Element& y) {
    return x + scaled(y, y.alg->pres.field.from_int(-1));
  }
  static Element scaled(const Element& x, const Scalar& c) {
    Element z = x;
    for (auto& [d, v] : z.comp)
      for (Scalar& e : v) e *= c;
    return z.prune();
  }
  friend bool operator==(const Element& x, const Element& y) {
    return (x - y).is_zero();
  }
};

inline Element zero_element(const GradedAlgebra& A) { return Element{&A, {}}; }

inline Element basis_element(const GradedAlgebra& A, int degree, int index) {
  Element e{&A, {}};
  e.comp[degree] = A.zero_vector(degree);
  e.comp[degree][index] = A.pres.field.one();
  return e;
}

inline Element idempotent_element(const GradedAlgebra& A,
                                  const std::string& vertex) {
  int v = A.pres.quiver.vertex_index(vertex);
  return basis_element(A, 0, A.layers[0].index.at(BasisWord{v, v, {}}));
}

// Normal form of a path given by arrow names (leftmost name applied last).
inline Element path_element(const GradedAlgebra& A,
                            const std::vector<std::string>& names) {
  if (names.empty()) throw error("empty path");
  std::vector<int> ids;
  for (const std::string& s : names) ids.push_back(A.pres.quiver.arrow_index(s));
  for (std::size_t i = 0; i + 1 < ids.size(); ++i)
    if (A.pres.quiver.arrows[ids[i]].source !=
        A.pres.quiver.arrows[ids[i + 1]].target)
      throw error("path [" + names[i] + ", " + names[i + 1] +
                  "] is not composable");
  int last = ids.back();
  std::vector<Scalar> v = A.zero_vector(1);
  v[A.layers[1].index.at(
      BasisWord{A.pres.quiver.arrows[last].source,
                A.pres.quiver.arrows[last].target,
                {last}})] = A.pres.field.one();
  BasisWord rest;
  rest.arrows.assign(ids.begin(), ids.end() - 1);
  if (!rest.arrows.empty()) {
    rest.from = A.pres.quiver.arrows[rest.arrows.back()].source;
    rest.to = A.pres.quiver.arrows[rest.arrows.front()].target;
    v = A.word_times_vector(rest, 1, std::move(v));
  }
  Element e{&A, {}};
  if (!v.empty()) e.comp[static_cast<int>(ids.size())] = std::move(v);
  return e.prune();
}

inline Element multiply(const Element& x, const Element& y) {
  if (x.alg != y.alg || x.alg == nullptr)
    throw error("elements of different algebras");
  const GradedAlgebra& A = *x.alg;
  Element z{&A, {}};
  for (const auto& [dx, vx] : x.comp)
    for (const auto& [dy, vy] : y.comp) {
      const int d = dx + dy;
      if (d > A.built_degree()) {
        if (A.reached_zero) continue;
        throw error("product exceeds the built degree range");
      }
      for (std::size_t i = 0; i < vx.size(); ++i) {
        if (vx[i].is_zero()) continue;
        std::vector<Scalar> part =
            A.word_times_vector(A.layers[dx].basis[i], dy, vy);
        if (part.empty()) continue;
        auto it = z.comp.find(d);
        if (it == z.comp.end()) {
          it = z.comp.emplace(d, A.zero_vector(d)).first;
        }
        for (std::size_t j = 0; j < part.size(); ++j)
          it->second[j] += vx[i] * part[j];
      }
    }
  return z.prune();
}

// --- derived presentations and Hilbert data --------------------------------

inline PolyMatrix hilbert_matrix(const GradedAlgebra& A) {
  A.require_finite();
  const Quiver& Q = A.pres.quiver;
  PolyMatrix pm(Q.vertices.size(), Q.vertices);
  for (std::size_t from = 0; from < Q.vertices.size(); ++from)
    for (std::size_t to = 0; to < Q.vertices.size(); ++to) {
      std::vector<bigrat> c;
      for (const Layer& l : A.layers)
        c.push_back(
            bigrat(l.block_dim(static_cast<int>(from), static_cast<int>(to))));
      pm.at(from, to) = Poly(std::move(c));
    }
  return pm;
}

struct BlockSpan {
  std::vector<BasisWord> words;  // lex-ordered length-2 paths of the block
  DenseMatrix mat;               // rows = relations of the block
};

// Relation coefficient rows per (from,to) block of the length-2 path space.
inline std::map<std::pair<int, int>, BlockSpan> relation_spans(
    const QuadraticPresentation& p) {
  std::map<std::pair<int, int>, BlockSpan> out;
  std::vector<BasisWord> paths = enumerate_paths(p.quiver, 2);
  for (const BasisWord& w : paths) out[{w.from, w.to}].words.push_back(w);
  std::map<std::pair<int, int>, std::vector<std::size_t>> rel_ids;
  for (std::size_t ri = 0; ri < p.relations.size(); ++ri)
    rel_ids[p.relation_block(ri)].push_back(ri);
  for (auto& [blk, span] : out) {
    std::map<BasisWord, int> col;
    for (std::size_t c = 0; c < span.words.size(); ++c)
      col[span.words[c]] = static_cast<int>(c);
    const auto& ids = rel_ids[blk];
    span.mat = DenseMatrix(p.field, ids.size(), span.words.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (const RelationTerm& t : p.relations[ids[i]].terms) {
        BasisWord w;
        w.arrows = {t.first, t.second};
        w.from = p.quiver.arrows[t.second].source;
        w.to = p.quiver.arrows[t.first].target;
        span.mat.at(i, col.at(w)) += t.coeff;
      }
  }
  return out;
}

// Quadratic dual: reversed starred arrows with negated weights; the dual
// relation space is the annihilator of R under the reversed-word pairing
// <[u*,v*], [v,u]> = 1 (no signs), computed blockwise as an exact kernel.
inline QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
  p.validate();
  QuadraticPresentation d;
  d.field = p.field;
  d.quiver.vertices = p.quiver.vertices;
  for (const Arrow& a : p.quiver.arrows)
    d.quiver.arrows.push_back(Arrow{a.name + "*", a.target, a.source,
                                    {-a.weight[0], -a.weight[1]}});
  for (auto& [blk, span] : relation_spans(p)) {
    DenseMatrix k = kernel_basis(span.mat);
    for (std::size_t i = 0; i < k.rows; ++i) {
      Relation r;
      for (std::size_t j = 0; j < k.cols; ++j) {
        if (k.at(i, j).is_zero()) continue;
        // original word [u, v] pairs with dual word [v*, u*]
        const BasisWord& w = span.words[j];
        r.terms.push_back(RelationTerm{k.at(i, j), w.arrows[1], w.arrows[0]});
      }
      d.relations.push_back(std::move(r));
    }
  }
  d.validate();
  return d;
}

}  // namespace qpa
