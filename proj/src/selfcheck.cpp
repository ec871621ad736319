#include <sstream>

#include "symlie/cli.hpp"
#include "symlie/graphs.hpp"
#include "symlie/johnson.hpp"

namespace symlie {

namespace {

// the omega-action matrix with an optionally corrupted sign convention
SparseMatrix omega_map_mutated(int g, int k, bool flip) {
  Ctx ctx = symplectic_context(g);
  const auto& cols_words = lyndon_words(ctx.n, k + 1);
  const auto& rows_words = lyndon_words(ctx.n, k + 2);
  auto row_index = index_of(rows_words);
  long long w = (long long)cols_words.size();
  std::vector<std::tuple<int, int, Rational>> trips;
  for (int i = 0; i < ctx.n; ++i) {
    int partner = ctx.omega_partner(i);
    for (long long j = 0; j < w; ++j) {
      const TensorPoly& emb = embed_lyndon(ctx, cols_words[j]);
      TensorPoly other = tensor_word(ctx, Word(1, (char)partner));
      TensorPoly t;
      if (i % 2 == 0) {
        t = tensor_commutator(emb, other);
      } else {
        t = tensor_commutator(other, emb);
        if (flip) t = tensor_scale(t, Rational(-1));
      }
      for (const auto& [word, c] : lie_from_tensor(t).terms)
        trips.emplace_back(row_index.at(word), (int)(i * w + j), c);
    }
  }
  return SparseMatrix::from_triplets((int)rows_words.size(), (int)(ctx.n * w), trips);
}

}  // namespace

std::vector<CheckResult> selfcheck(const SelfcheckMutations& mut) {
  std::vector<CheckResult> out;
  auto check = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    CheckResult r;
    r.name = name;
    try {
      r.pass = fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };

  check("trace-power-example", [&](std::string&) {
    // D(x2) = ad_{x2}(x1)^k, trace must be x1^k
    for (int n = 2; n <= 3; ++n)
      for (int k = 2; k <= 4; ++k) {
        Ctx ctx = make_context(n, false);
        Word w(k, (char)0);
        w.push_back((char)1);  // x1^k x2 is Lyndon
        Derivation d = der_basis_elem(ctx, k, 1, w);
        SymPoly t = trace_k(d);
        if (t.terms.size() != 1) return false;
        if (t.terms.begin()->first != Word(k, (char)0)) return false;
        if (t.terms.begin()->second != Rational(1)) return false;
      }
    return true;
  });

  check("commutator-trace-vanishing", [&](std::string&) {
    Ctx ctx = make_context(3, false);
    const auto& w1 = lyndon_words(3, 2);
    const auto& w2 = lyndon_words(3, 3);
    for (int i = 0; i < 3; ++i)
      for (const auto& u : w1)
        for (const auto& v : w2) {
          Derivation a = der_basis_elem(ctx, 1, i, u);
          Derivation b = der_basis_elem(ctx, 2, (i + 1) % 3, v);
          if (!trace_k(bracket_der(a, b)).is_zero()) return false;
        }
    return true;
  });

  check("even-trace-on-h", [&](std::string& detail) {
    Subspace ker = kernel_basis(omega_map_mutated(2, 2, mut.flip_omega_sign));
    Ctx ctx = symplectic_context(2);
    for (const auto& v : ker.basis) {
      if (!trace_k(der_from_vec(ctx, 2, v)).is_zero()) {
        detail = "trace(2) nonzero on a kernel vector";
        return false;
      }
    }
    return true;
  });

  check("contraction-sign", [&](std::string&) {
    Ctx ctx = make_context(2, false);
    Word w(3, (char)0);
    w.push_back((char)1);
    Derivation d = der_basis_elem(ctx, 3, 1, w);
    SymPoly a = trace_via_contraction(d, ContractionRoute::CkPlus1);
    SymPoly b = trace_via_contraction(d, ContractionRoute::C1);
    SymPoly t = trace_k(d);
    if (!(a == t)) return false;
    SymPoly bneg{b.ctx, b.degree, {}};
    add_scaled(bneg.terms, b.terms, Rational(-1));
    return bneg == t;
  });

  check("delta-squared", [&](std::string&) {
    for (int n = 2; n <= 3; ++n) {
      const SparseMatrix& d1 = differential(2, 1, n, mut.cap);
      const SparseMatrix& d2 = differential(2, 2, n, mut.cap);
      if (!(d2 * d1).is_zero()) return false;
    }
    return true;
  });

  check("e1-invariant-cocycle", [&](std::string&) {
    Cochain e1 = build_e1(3, mut.cap);
    if (e1.is_zero()) return false;
    return is_sp_invariant(e1, mut.cap) && is_cocycle(e1, mut.cap);
  });

  check("t3-pairing-invariance", [&](std::string&) {
    // sp-invariance of iota_3 composed with traces at the pairing level
    Ctx ctx = symplectic_context(2);
    const HSlice& h = h_basis(2, 3);
    auto gens = sp_generators(ctx);
    std::vector<SymPoly> traces;
    for (int i = 0; i < h.dim(); ++i) traces.push_back(trace_k(h_vector(2, 3, i)));
    for (std::size_t a : {std::size_t(0), gens.size() / 2, gens.size() - 1}) {
      const SparseMatrix& M = h_action(2, 3, (int)a);
      // check iota(trace(Xu), trace(v)) + iota(trace(u), trace(Xv)) = 0
      for (int i = 0; i < std::min(h.dim(), 6); ++i)
        for (int j = 0; j < std::min(h.dim(), 6); ++j) {
          Rational s(0);
          for (int t = 0; t < h.dim(); ++t) {
            Rational mi = M.at(t, i), mj = M.at(t, j);
            if (!mi.is_zero()) s += mi * iota_pairing_sym(traces[t], traces[j]);
            if (!mj.is_zero()) s += mj * iota_pairing_sym(traces[i], traces[t]);
          }
          if (!s.is_zero()) return false;
        }
    }
    return true;
  });

  check("cap-abort", [&](std::string&) {
    try {
      build_slice(2, 2, 2, 1);
      return false;
    } catch (const CapExceeded&) {
      return true;
    }
  });

  return out;
}

}  // namespace symlie
