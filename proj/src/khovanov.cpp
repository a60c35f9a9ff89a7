#include "khdetect/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace kh {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CircleDecomposition smooth(const PlanarDiagram& d, std::uint32_t vertex) {
  const int n = d.n_crossings();
  if (n > 0 && (vertex >> n) != 0)
    throw std::invalid_argument("smooth: vertex has more bits than crossings");

  CircleDecomposition out;
  out.vertex = vertex;
  out.circle_of_arc.assign(d.n_arcs + 1, -1);

  UnionFind uf(d.n_arcs + 1);
  for (int i = 0; i < n; i++) {
    const auto& t = d.crossings[i].arcs;
    if (vertex >> i & 1) {
      uf.unite(t[0], t[1]);  // a-b, c-d
      uf.unite(t[2], t[3]);
    } else {
      uf.unite(t[0], t[3]);  // a-d, b-c
      uf.unite(t[1], t[2]);
    }
  }
  // Circle index = rank of the minimal arc label in the component.
  {
    std::map<int, int> min_of_root;
    for (int arc = 1; arc <= d.n_arcs; arc++) {
      int r = uf.find(arc);
      auto it = min_of_root.find(r);
      if (it == min_of_root.end() || arc < it->second) min_of_root[r] = arc;
    }
    std::map<int, int> by_min;  // min arc -> placeholder
    for (auto& [r, m] : min_of_root) by_min[m] = 0;
    int idx = 0;
    for (auto& [m, v] : by_min) v = idx++;
    out.n_circles = idx;
    for (int arc = 1; arc <= d.n_arcs; arc++)
      out.circle_of_arc[arc] = by_min[min_of_root[uf.find(arc)]];
  }
  out.marked_circle = out.circle_of_arc[d.basepoint];
  return out;
}

int GradedComplex::total_dim() const {
  int t = 0;
  for (auto& [h, qs] : gen_q) t += static_cast<int>(qs.size());
  return t;
}

std::map<int, std::vector<std::pair<int, int>>> GradedComplex::groups() const {
  std::map<int, std::vector<std::pair<int, int>>> out;
  for (auto& [h, qs] : gen_q) {
    std::map<int, int> counts;
    for (int q : qs) counts[q]++;
    out[h] = {counts.begin(), counts.end()};
  }
  return out;
}

namespace {

// Generator labeling -> index offset within its vertex block.  In the
// reduced complex the marked circle is pinned to x and dropped from the
// enumeration.
int labeling_offset(std::uint32_t labeling, int marked, bool reduced) {
  if (!reduced) return static_cast<int>(labeling);
  std::uint32_t low = labeling & ((1u << marked) - 1);
  std::uint32_t high = labeling >> (marked + 1);
  return static_cast<int>(low | (high << marked));
}

}  // namespace

GradedComplex build_complex(const PlanarDiagram& d, bool reduced) {
  {
    auto bad = validate(d);
    if (!bad.empty()) {
      std::string msg = "build_complex: invalid diagram:";
      for (auto& v : bad) msg += "\n  " + v;
      throw ValidationError(msg);
    }
  }
  const int n = d.n_crossings();
  if (n > 30) throw std::invalid_argument("build_complex: too many crossings");

  GradedComplex cx;
  cx.reduced = reduced;
  cx.n_plus = d.n_plus;
  cx.n_minus = d.n_minus;

  const std::uint32_t n_vertices = 1u << n;
  std::vector<CircleDecomposition> cube(n_vertices);
  std::vector<int> base_index(n_vertices);  // within the h-level of the vertex

  std::map<int, int> level_size;
  for (std::uint32_t v = 0; v < n_vertices; v++) {
    cube[v] = smooth(d, v);
    int h = std::popcount(v) - d.n_minus;
    int n_gens = 1 << (cube[v].n_circles - (reduced ? 1 : 0));
    base_index[v] = level_size[h];
    level_size[h] += n_gens;
  }

  const int q_shift = d.n_plus - 2 * d.n_minus + (reduced ? 1 : 0);
  for (std::uint32_t v = 0; v < n_vertices; v++) {
    const auto& cd = cube[v];
    int h = std::popcount(v) - d.n_minus;
    auto& qs = cx.gen_q[h];
    for (std::uint32_t l = 0; l < (1u << cd.n_circles); l++) {
      if (reduced && !(l >> cd.marked_circle & 1)) continue;
      int deg = cd.n_circles - 2 * std::popcount(l);  // 1 counts +1, x counts -1
      qs.push_back(deg + std::popcount(v) + q_shift);
    }
  }

  for (auto it = cx.gen_q.begin(); it != cx.gen_q.end(); ++it) {
    int h = it->first;
    int rows = cx.dim_at(h + 1);
    cx.differentials.emplace(h, SparseIntMatrix(rows, cx.dim_at(h)));
  }

  // Edge maps: flip one 0-bit to 1; merge or split the affected circles.
  for (std::uint32_t v = 0; v < n_vertices; v++) {
    if (std::popcount(v) == n) continue;  // no outgoing edges
    const auto& cv = cube[v];
    int h = std::popcount(v) - d.n_minus;
    auto& diff = cx.differentials.at(h);
    const auto& qs_src = cx.gen_q.at(h);
    const auto& qs_dst = cx.gen_q.at(h + 1);

    for (int i = 0; i < n; i++) {
      if (v >> i & 1) continue;
      std::uint32_t w = v | (1u << i);
      const auto& cw = cube[w];
      int sign = (std::popcount(v & ((1u << i) - 1)) % 2 == 0) ? 1 : -1;

      // Correspondence of unaffected circles via shared arcs; the circles
      // through the flipped crossing's arcs merge (2 -> 1) or split (1 -> 2).
      const auto& t = d.crossings[i].arcs;
      int p = cv.circle_of_arc[t[0]];   // circle through a (= through d)
      int p2 = cv.circle_of_arc[t[1]];  // circle through b (= through c)
      int q1 = cw.circle_of_arc[t[0]];  // in w: a joined to b
      int q2 = cw.circle_of_arc[t[2]];  // in w: c joined to d
      bool is_merge;
      if (p != p2 && q1 == q2)
        is_merge = true;
      else if (p == p2 && q1 != q2)
        is_merge = false;
      else
        throw std::logic_error("edge map: unexpected circle configuration");

      // old circle -> new circle for circles untouched by the crossing.
      std::vector<int> fwd(cv.n_circles, -1);
      for (int arc = 1; arc <= d.n_arcs; arc++)
        fwd[cv.circle_of_arc[arc]] = cw.circle_of_arc[arc];
      // (For the touched circles fwd is many-to-one or ambiguous; handled
      // separately below.)

      for (std::uint32_t l = 0; l < (1u << cv.n_circles); l++) {
        if (reduced && !(l >> cv.marked_circle & 1)) continue;
        int src = base_index[v] + labeling_offset(l, cv.marked_circle, reduced);

        auto emit = [&](std::uint32_t lw) {
          if (reduced && !(lw >> cw.marked_circle & 1))
            throw std::logic_error("reduced subcomplex not preserved");
          int dst =
              base_index[w] + labeling_offset(lw, cw.marked_circle, reduced);
          if (qs_src[src] != qs_dst[dst])
            throw std::logic_error("edge map does not preserve q");
          diff.add(dst, src, sign);
        };

        if (is_merge) {
          bool xa = l >> p & 1, xb = l >> p2 & 1;
          if (xa && xb) continue;  // x.x -> 0
          std::uint32_t lw = 0;
          for (int c = 0; c < cv.n_circles; c++)
            if (c != p && c != p2 && (l >> c & 1)) lw |= 1u << fwd[c];
          if (xa || xb) lw |= 1u << q1;
          emit(lw);
        } else {
          int r = q1;
          int s = q2;
          if (r == s) throw std::logic_error("split circles coincide");
          std::uint32_t lw0 = 0;
          for (int c = 0; c < cv.n_circles; c++)
            if (c != p && (l >> c & 1)) lw0 |= 1u << fwd[c];
          if (l >> p & 1) {
            emit(lw0 | (1u << r) | (1u << s));  // x -> x(x)x
          } else {
            emit(lw0 | (1u << r));  // 1 -> 1(x) + (x)1
            emit(lw0 | (1u << s));
          }
        }
      }
    }
  }
  return cx;
}

bool chain_condition_holds(const GradedComplex& c) {
  for (auto& [h, d_h] : c.differentials) {
    auto it = c.differentials.find(h + 1);
    if (it == c.differentials.end()) continue;
    if (!compose(it->second, d_h).is_zero()) return false;
  }
  return true;
}

int BigradedDimensions::total_dim() const {
  int t = 0;
  for (auto& [qh, dim] : dims) t += dim;
  return t;
}

BigradedDimensions homology(const GradedComplex& c) {
  if (!chain_condition_holds(c))
    throw std::logic_error("homology: d*d != 0, complex construction is broken");

  // Extract the q-blocks of each differential once; rank each block once.
  // block_rank[(h,q)] = rank of d_h restricted to quantum grading q.
  std::map<std::pair<int, int>, int> block_rank;
  auto rank_block = [&](int h, int q) -> int {
    auto key = std::make_pair(h, q);
    auto found = block_rank.find(key);
    if (found != block_rank.end()) return found->second;
    auto dit = c.differentials.find(h);
    int r = 0;
    if (dit != c.differentials.end()) {
      const auto& src = c.gen_q.at(h);
      auto tgt_it = c.gen_q.find(h + 1);
      std::vector<int> col_local(src.size(), -1), row_local;
      int n_cols = 0, n_rows = 0;
      for (size_t j = 0; j < src.size(); j++)
        if (src[j] == q) col_local[j] = n_cols++;
      if (tgt_it != c.gen_q.end()) {
        row_local.assign(tgt_it->second.size(), -1);
        for (size_t i = 0; i < tgt_it->second.size(); i++)
          if (tgt_it->second[i] == q) row_local[i] = n_rows++;
      }
      SparseIntMatrix block(n_rows, n_cols);
      for (const auto& [rc, v] : dit->second.entries()) {
        if (col_local[rc.second] < 0) continue;
        block.set(row_local[rc.first], col_local[rc.second], v);
      }
      r = rank(block);
    }
    block_rank[key] = r;
    return r;
  };

  BigradedDimensions out;
  for (auto& [h, qs] : c.gen_q) {
    std::map<int, int> count;
    for (int q : qs) count[q]++;
    for (auto& [q, n] : count) {
      int b = n - rank_block(h, q) - rank_block(h - 1, q);
      if (b < 0) throw std::logic_error("negative Betti number");
      if (b > 0) out.dims[{q, h}] = b;
    }
  }
  return out;
}

std::set<mpq_class> delta_support(const BigradedDimensions& b) {
  std::set<mpq_class> out;
  for (auto& [qh, dim] : b.dims) {
    mpq_class delta(qh.first, 2);
    delta.canonicalize();
    delta -= qh.second;
    out.insert(delta);
  }
  return out;
}

bool is_thin_candidate(const BigradedDimensions& b, int dim) {
  return b.total_dim() == dim && delta_support(b).size() == 1;
}

LaurentPoly graded_euler_char(const BigradedDimensions& b) {
  LaurentPoly p('q');
  for (auto& [qh, dim] : b.dims)
    p.add_term(qh.first, (qh.second % 2 == 0) ? dim : -dim);
  return p;
}

std::string homology_to_json(const BigradedDimensions& b) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [qh, dim] : b.dims) {  // map order is (q, h) ascending
    arr.push_back({{"q", qh.first}, {"h", qh.second}, {"dim", dim}});
  }
  return arr.dump();
}

BigradedDimensions homology_from_json(const std::string& text) {
  BigradedDimensions b;
  auto arr = nlohmann::json::parse(text);
  for (auto& rec : arr)
    b.dims[{rec.at("q").get<int>(), rec.at("h").get<int>()}] =
        rec.at("dim").get<int>();
  return b;
}

}  // namespace kh
