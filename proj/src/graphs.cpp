#include "symlie/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace symlie {

namespace {

std::vector<std::vector<int>> endpoint_lists(const OddGraph& g) {
  // endpoints are numbered 2e (first end) and 2e+1 (second end)
  std::vector<std::vector<int>> per_vertex(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    per_vertex[g.edges[e].first].push_back(2 * (int)e);
    per_vertex[g.edges[e].second].push_back(2 * (int)e + 1);
  }
  return per_vertex;
}

}  // namespace

void validate_graph(const OddGraph& g) {
  int d = (int)g.vertices.size();
  if (d == 0) throw ValidationError("graph: no vertices");
  for (const auto& v : g.vertices) {
    if (v.valence < 3 || v.valence % 2 == 0)
      throw ValidationError("graph: valences must be odd and >= 3");
    if (v.alt && v.valence != 3) throw ValidationError("graph: alt vertices have valence 3");
  }
  for (const auto& [a, b] : g.edges)
    if (a < 0 || a >= d || b < 0 || b >= d) throw ValidationError("graph: edge endpoint out of range");
  auto ep = endpoint_lists(g);
  for (int v = 0; v < d; ++v)
    if ((int)ep[v].size() != g.vertices[v].valence)
      throw ValidationError("graph: valence mismatch at vertex " + std::to_string(v));
  // connectivity
  std::vector<int> comp(d);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& [a, b] : g.edges) comp[find(a)] = find(b);
  for (int v = 1; v < d; ++v)
    if (find(v) != find(0)) throw ValidationError("graph: not connected");
}

Bidegree bidegree(const OddGraph& g) {
  validate_graph(g);
  Bidegree b;
  b.d = (int)g.vertices.size();
  int v3a = 0;
  for (const auto& v : g.vertices) {
    if (v.alt) {
      b.n += 1;
      ++v3a;
    } else {
      b.n += v.valence;
    }
  }
  if (b.n + 2 * v3a != 2 * (int)g.edges.size())
    throw ValidationError("graph: bidegree identity violated");
  return b;
}

std::string canonical_form(const OddGraph& g) {
  int d = (int)g.vertices.size();
  if (d > 8) throw CapExceeded("canonical_form: too many vertices");
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string enc;
    for (int v = 0; v < d; ++v) {
      // vertex occupying new position v is perm^{-1}... iterate new labels:
      // find old vertex u with perm[u] == v
      for (int u = 0; u < d; ++u)
        if (perm[u] == v) {
          enc += g.vertices[u].alt ? "a" : ("s" + std::to_string(g.vertices[u].valence));
          enc += ";";
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges) {
      int x = perm[a], y = perm[b];
      edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) enc += std::to_string(a) + "-" + std::to_string(b) + ";";
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

// edge multisets realizing the valence sequence, as symmetric count matrices
void edge_fill(std::vector<int>& rem, int i, int j, std::vector<std::vector<int>>& mat,
               const std::function<void()>& emit) {
  int d = (int)rem.size();
  if (i == d) {
    bool ok = true;
    for (int v : rem)
      if (v != 0) ok = false;
    if (ok) emit();
    return;
  }
  int ni = (j == d - 1) ? i + 1 : i;
  int nj = (j == d - 1) ? ((i + 1 == d - 1) ? d - 1 : i + 1) : j + 1;
  if (i == j) {
    // loops: each consumes 2 from rem[i]
    for (int L = 0; 2 * L <= rem[i]; ++L) {
      mat[i][i] = L;
      rem[i] -= 2 * L;
      if (i == d - 1) {
        // last vertex: no further off-diagonal entries
        bool ok = true;
        for (int v : rem)
          if (v != 0) ok = false;
        if (ok) emit();
      } else {
        edge_fill(rem, i, i + 1, mat, emit);
      }
      rem[i] += 2 * L;
      mat[i][i] = 0;
    }
    return;
  }
  int cap = std::min(rem[i], rem[j]);
  for (int m = 0; m <= cap; ++m) {
    mat[i][j] = m;
    rem[i] -= m;
    rem[j] -= m;
    if (j == d - 1)
      edge_fill(rem, i + 1, i + 1, mat, emit);
    else
      edge_fill(rem, i, j + 1, mat, emit);
    rem[i] += m;
    rem[j] += m;
    mat[i][j] = 0;
  }
  (void)ni;
  (void)nj;
}

}  // namespace

std::vector<OddGraph> enumerate_graphs(int d_max, int n_max) {
  if (d_max < 1 || n_max < 1) throw ValidationError("enumerate_graphs: positive caps expected");
  if (d_max > 6 || n_max > 30) throw CapExceeded("enumerate_graphs: caps too large");
  // vertex types: 0 = alt3 (weight 1), m = sym(m) (weight m)
  std::vector<int> type_pool = {0};
  for (int m = 3; m <= n_max; m += 2) type_pool.push_back(m);

  std::set<std::string> seen;
  std::vector<std::pair<std::tuple<int, int, std::string>, OddGraph>> found;

  for (int d = 1; d <= d_max; ++d) {
    // nondecreasing type sequences
    std::vector<int> types(d);
    std::function<void(int, int, int)> rec_types = [&](int pos, int min_t, int weight) {
      if (pos == d) {
        // enumerate edge multisets for this valence sequence
        std::vector<int> val(d);
        for (int v = 0; v < d; ++v) val[v] = types[v] == 0 ? 3 : types[v];
        std::vector<std::vector<int>> mat(d, std::vector<int>(d, 0));
        std::vector<int> rem = val;
        edge_fill(rem, 0, 0, mat, [&]() {
          OddGraph g;
          for (int v = 0; v < d; ++v)
            g.vertices.push_back(OddVertex{types[v] == 0, types[v] == 0 ? 3 : types[v]});
          for (int i = 0; i < d; ++i) {
            for (int L = 0; L < mat[i][i]; ++L) g.edges.emplace_back(i, i);
            for (int j = i + 1; j < d; ++j)
              for (int m = 0; m < mat[i][j]; ++m) g.edges.emplace_back(i, j);
          }
          try {
            validate_graph(g);
          } catch (const ValidationError&) {
            return;  // disconnected
          }
          Bidegree b = bidegree(g);
          if (b.n > n_max) return;
          std::string canon = canonical_form(g);
          if (seen.insert(canon).second)
            found.emplace_back(std::make_tuple(b.d, b.n, canon), std::move(g));
        });
        return;
      }
      for (std::size_t t = 0; t < type_pool.size(); ++t) {
        int ty = type_pool[t];
        if (ty < min_t) continue;
        int w = ty == 0 ? 1 : ty;
        if (weight + w > n_max) continue;
        types[pos] = ty;
        rec_types(pos + 1, ty, weight + w);
      }
    };
    rec_types(0, 0, 0);
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<OddGraph> out;
  for (auto& [k, g] : found) out.push_back(std::move(g));
  return out;
}

namespace {

int perm_sign(const std::vector<int>& p) {
  int n = (int)p.size(), sign = 1;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

Cochain phi_cochain(const OddGraph& graph, int g, long long cap) {
  validate_graph(graph);
  Bidegree bid = bidegree(graph);
  Ctx ctx = symplectic_context(g);
  bool has_alt = false;
  for (const auto& v : graph.vertices)
    if (v.alt) has_alt = true;
  if (has_alt && g < 3)
    throw ValidationError("phi_cochain: alt3 vertices need g >= 3");
  if (g < 2) throw ValidationError("phi_cochain: needs g >= 2");

  const ComplexSlice& slice = build_slice(g, bid.d, bid.n, cap);
  int d = bid.d;

  // vertex tensors per needed degree: word/coefficient lists per h index
  struct VertexTensor {
    std::vector<Word> words;
    std::vector<Rational> coeffs;
  };
  // tensors[v][h_index]
  std::vector<int> req(d);
  for (int v = 0; v < d; ++v) req[v] = graph.vertices[v].alt ? 1 : graph.vertices[v].valence;
  std::map<std::pair<bool, int>, std::vector<VertexTensor>> pools;
  for (int v = 0; v < d; ++v) {
    auto key = std::make_pair(graph.vertices[v].alt, req[v]);
    if (pools.count(key)) continue;
    std::vector<VertexTensor> pool;
    int hk = req[v];
    const HSlice& h = h_basis(g, hk);
    for (int i = 0; i < h.dim(); ++i) {
      VertexTensor vt;
      if (graph.vertices[v].alt) {
        ExtPoly t = tau1_bar(g, h_vector(g, 1, i));
        for (const auto& [w, c] : t.terms) {
          vt.words.push_back(w);
          vt.coeffs.push_back(c);
        }
      } else {
        SymPoly t = trace_k(h_vector(g, hk, i));
        for (const auto& [w, c] : t.terms) {
          vt.words.push_back(w);
          vt.coeffs.push_back(c);
        }
      }
      pool.push_back(std::move(vt));
    }
    pools.emplace(key, std::move(pool));
  }

  auto ep = endpoint_lists(graph);
  int E = (int)graph.edges.size();

  Cochain out{g, bid.d, bid.n, {}};
  for (int b = 0; b < slice.dim(); ++b) {
    const WedgeTuple& w = slice.basis[b];
    // group slots and vertices by degree
    std::map<int, std::vector<int>> slots_by_deg, verts_by_deg;
    for (int s = 0; s < d; ++s) slots_by_deg[w[s].first].push_back(s);
    for (int v = 0; v < d; ++v) verts_by_deg[req[v]].push_back(v);
    if (slots_by_deg.size() != verts_by_deg.size()) continue;
    bool compatible = true;
    for (const auto& [k, vs] : verts_by_deg) {
      auto it = slots_by_deg.find(k);
      if (it == slots_by_deg.end() || it->second.size() != vs.size()) compatible = false;
    }
    if (!compatible) continue;

    Rational value(0);
    // iterate over per-degree bijections vertices <-> slots
    std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
    for (const auto& [k, vs] : verts_by_deg) groups.emplace_back(vs, slots_by_deg[k]);
    std::vector<std::vector<int>> perms(groups.size());
    std::function<void(std::size_t)> assign = [&](std::size_t gi) {
      if (gi == groups.size()) {
        // build global permutation pi: vertex -> slot
        std::vector<int> pi(d);
        for (std::size_t q = 0; q < groups.size(); ++q)
          for (std::size_t r = 0; r < groups[q].first.size(); ++r)
            pi[groups[q].first[r]] = groups[q].second[perms[q][r]];
        int sgn = perm_sign(pi);
        // contract: per-vertex tensors of the assigned h vectors
        std::vector<const VertexTensor*> vt(d);
        bool zero = false;
        for (int v = 0; v < d; ++v) {
          auto key = std::make_pair(graph.vertices[v].alt, req[v]);
          const auto& pool = pools.at(key);
          const VertexTensor& t = pool[w[pi[v]].second];
          if (t.words.empty()) zero = true;
          vt[v] = &t;
        }
        if (zero) return;
        // iterate term combinations
        std::vector<std::size_t> term(d, 0);
        while (true) {
          Rational coeff(sgn);
          for (int v = 0; v < d; ++v) coeff *= vt[v]->coeffs[term[v]];
          // sum over per-vertex endpoint->position bijections
          std::function<Rational(int, std::vector<std::vector<int>>&)> slot_sum =
              [&](int v, std::vector<std::vector<int>>& chosen) -> Rational {
            if (v == d) {
              // evaluate product over edges
              int prod = 1;
              std::vector<int> pos_of_endpoint(2 * E, -1);
              for (int vv = 0; vv < d; ++vv)
                for (std::size_t r = 0; r < ep[vv].size(); ++r)
                  pos_of_endpoint[ep[vv][r]] = chosen[vv][r];
              for (int e = 0; e < E && prod != 0; ++e) {
                int u_vertex = graph.edges[e].first;
                int v_vertex = graph.edges[e].second;
                char lu = vt[u_vertex]->words[term[u_vertex]][pos_of_endpoint[2 * e]];
                char lv = vt[v_vertex]->words[term[v_vertex]][pos_of_endpoint[2 * e + 1]];
                prod *= ctx.omega_basis((unsigned char)lu, (unsigned char)lv);
              }
              return Rational(prod);
            }
            int m = (int)ep[v].size();
            std::vector<int> perm(m);
            std::iota(perm.begin(), perm.end(), 0);
            Rational acc(0);
            do {
              int s = graph.vertices[v].alt ? perm_sign(perm) : 1;
              chosen[v] = perm;
              Rational sub = slot_sum(v + 1, chosen);
              if (!sub.is_zero()) acc += Rational(s) * sub;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return acc;
          };
          std::vector<std::vector<int>> chosen(d);
          Rational contracted = slot_sum(0, chosen);
          value += coeff * contracted;
          // advance odometer
          int v = d - 1;
          while (v >= 0) {
            if (++term[v] < vt[v]->words.size()) break;
            term[v] = 0;
            --v;
          }
          if (v < 0) break;
        }
        return;
      }
      std::vector<int> p(groups[gi].first.size());
      std::iota(p.begin(), p.end(), 0);
      do {
        perms[gi] = p;
        assign(gi + 1);
      } while (std::next_permutation(p.begin(), p.end()));
    };
    assign(0);
    if (!value.is_zero()) out.coords.emplace_back(b, value);
  }
  return out;
}

}  // namespace symlie
