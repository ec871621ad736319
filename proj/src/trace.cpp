#include "symlie/trace.hpp"

#include <algorithm>

namespace symlie {

FoxRow fox_partials(const TensorPoly& eta) {
  if (eta.degree < 1) throw ValidationError("fox_partials: degree >= 1 expected");
  FoxRow out;
  out.ctx = eta.ctx;
  out.degree = eta.degree - 1;
  for (int i = 0; i < eta.ctx.n; ++i) out.partials.push_back(tensor_zero(eta.ctx, eta.degree - 1));
  for (const auto& [w, c] : eta.terms) {
    int last = (unsigned char)w.back();
    add_term(out.partials[last].terms, w.substr(0, w.size() - 1), c);
  }
  return out;
}

SymPoly trace_k(const Derivation& d) {
  SymPoly out{d.ctx, d.degree, {}};
  for (int i = 0; i < d.ctx.n; ++i) {
    if (d.images[i].is_zero()) continue;
    FoxRow row = fox_partials(embed_to_tensor(d.images[i]));
    SymPoly ab = abelianize(row.partials[i]);
    add_scaled(out.terms, ab.terms, Rational(1));
  }
  return out;
}

SymPoly trace_via_contraction(const Derivation& d, ContractionRoute route) {
  // D = sum_i x_i^* (x) embed(D(x_i)) inside H^* (x) H^{(x)(k+1)}
  SymPoly out{d.ctx, d.degree, {}};
  for (int i = 0; i < d.ctx.n; ++i) {
    for (const auto& [w, c] : embed_to_tensor(d.images[i]).terms) {
      if (route == ContractionRoute::CkPlus1) {
        // C_{k+1}(f (x) u_1...u_{k+1}) = f(u_{k+1}) u_1...u_k
        if ((unsigned char)w.back() != i) continue;
        Word rest = w.substr(0, w.size() - 1);
        std::sort(rest.begin(), rest.end());
        add_term(out.terms, rest, c);
      } else {
        // C_1(f (x) u_1...u_{k+1}) = f(u_1) u_2...u_{k+1}
        if ((unsigned char)w.front() != i) continue;
        Word rest = w.substr(1);
        std::sort(rest.begin(), rest.end());
        add_term(out.terms, rest, c);
      }
    }
  }
  return out;
}

SparseMatrix trace_matrix(const Ctx& ctx, int k) {
  const auto& words = lyndon_words(ctx.n, k + 1);
  const auto& sbasis = sym_words(ctx, k);
  auto sindex = index_of(sbasis);
  long long w = (long long)words.size();
  std::vector<std::tuple<int, int, Rational>> trips;
  for (int i = 0; i < ctx.n; ++i)
    for (long long j = 0; j < w; ++j) {
      SymPoly t = trace_k(der_basis_elem(ctx, k, i, words[j]));
      for (const auto& [word, c] : t.terms)
        trips.emplace_back(sindex.at(word), (int)(i * w + j), c);
    }
  return SparseMatrix::from_triplets((int)sbasis.size(), (int)(ctx.n * w), trips);
}

int trace_odd_rank(int g, int degree) {
  if (degree % 2 == 0) throw ValidationError("trace_odd_rank: odd degree expected");
  Ctx ctx = symplectic_context(g);
  const HSlice& h = h_basis(g, degree);
  SparseMatrix tm = trace_matrix(ctx, degree);
  const auto& sbasis = sym_words(ctx, degree);
  // columns = traces of the h basis vectors
  std::vector<std::tuple<int, int, Rational>> trips;
  SparseMatrix tmt = tm.transpose();
  for (int i = 0; i < h.dim(); ++i) {
    SparseVec acc;
    for (const auto& [c, x] : h.sub.basis[i]) acc = sv_axpy(acc, x, tmt.row(c));
    for (const auto& [r, v] : acc) trips.emplace_back(r, i, v);
  }
  SparseMatrix restricted =
      SparseMatrix::from_triplets((int)sbasis.size(), h.dim(), trips);
  return rank(restricted);
}

}  // namespace symlie
