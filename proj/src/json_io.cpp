#include "symlie/json_io.hpp"

namespace symlie {

json ctx_to_json(const Ctx& ctx) { return json{{"n", ctx.n}, {"symplectic", ctx.symplectic}}; }

Ctx ctx_from_json(const json& j) {
  return make_context(j.at("n").get<int>(), j.value("symplectic", false));
}

namespace {

json terms_to_json(const Ctx& ctx, const TermMap& terms, const char* key, bool compact) {
  json arr = json::array();
  for (const auto& [w, c] : terms)
    arr.push_back(json{{key, render_word(ctx, w, compact)}, {"coeff", c.str()}});
  return arr;
}

TermMap terms_from_json(const Ctx& ctx, const json& arr, const char* key, int degree) {
  TermMap terms;
  for (const auto& item : arr) {
    Word w = parse_word(ctx, item.at(key).get<std::string>());
    if ((int)w.size() != degree) throw ValidationError("term degree mismatch");
    add_term(terms, w, Rational::parse(item.at("coeff").get<std::string>()));
  }
  return terms;
}

}  // namespace

json tensor_to_json(const TensorPoly& t) {
  json j = ctx_to_json(t.ctx);
  j["degree"] = t.degree;
  j["terms"] = terms_to_json(t.ctx, t.terms, "word", false);
  return j;
}

TensorPoly tensor_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  int degree = j.at("degree").get<int>();
  return TensorPoly{ctx, degree, terms_from_json(ctx, j.at("terms"), "word", degree)};
}

json sym_to_json(const SymPoly& t) {
  json j = ctx_to_json(t.ctx);
  j["degree"] = t.degree;
  j["terms"] = terms_to_json(t.ctx, t.terms, "word", false);
  return j;
}

SymPoly sym_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  int degree = j.at("degree").get<int>();
  SymPoly out{ctx, degree, {}};
  for (const auto& item : j.at("terms")) {
    Word w = parse_word(ctx, item.at("word").get<std::string>());
    if ((int)w.size() != degree) throw ValidationError("term degree mismatch");
    std::sort(w.begin(), w.end());
    add_term(out.terms, w, Rational::parse(item.at("coeff").get<std::string>()));
  }
  return out;
}

json ext_to_json(const ExtPoly& t) {
  json j = ctx_to_json(t.ctx);
  j["degree"] = t.degree;
  j["terms"] = terms_to_json(t.ctx, t.terms, "word", false);
  return j;
}

ExtPoly ext_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  int degree = j.at("degree").get<int>();
  ExtPoly out{ctx, degree, {}};
  for (const auto& item : j.at("terms")) {
    Word w = parse_word(ctx, item.at("word").get<std::string>());
    if ((int)w.size() != degree) throw ValidationError("term degree mismatch");
    Rational c = Rational::parse(item.at("coeff").get<std::string>());
    int s = ext_normalize(w);
    if (s != 0) add_term(out.terms, w, s == 1 ? c : -c);
  }
  return out;
}

json lie_to_json(const LiePoly& t) {
  json j = ctx_to_json(t.ctx);
  j["degree"] = t.degree;
  j["terms"] = terms_to_json(t.ctx, t.terms, "lyndon", true);
  return j;
}

LiePoly lie_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  int degree = j.at("degree").get<int>();
  LiePoly out{ctx, degree, {}};
  for (const auto& item : j.at("terms")) {
    Word w = parse_word(ctx, item.at("lyndon").get<std::string>());
    if ((int)w.size() != degree) throw ValidationError("term degree mismatch");
    if (!is_lyndon(w)) throw ValidationError("term is not a Lyndon word");
    add_term(out.terms, w, Rational::parse(item.at("coeff").get<std::string>()));
  }
  return out;
}

BracketExpr bracket_expr_from_json(const Ctx& ctx, const json& j) {
  BracketExpr e;
  if (j.is_string()) {
    e.leaf = ctx.letter_index(j.get<std::string>());
    return e;
  }
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("bracket expression: string or pair expected");
  e.children.push_back(bracket_expr_from_json(ctx, j[0]));
  e.children.push_back(bracket_expr_from_json(ctx, j[1]));
  return e;
}

json derivation_to_json(const Derivation& d) {
  json j = ctx_to_json(d.ctx);
  j["degree"] = d.degree;
  json images = json::object();
  for (int i = 0; i < d.ctx.n; ++i)
    images[d.ctx.letter_name(i)] = lie_to_json(d.images[i]);
  j["images"] = images;
  return j;
}

Derivation derivation_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  int degree = j.at("degree").get<int>();
  Derivation d = der_zero(ctx, degree);
  for (const auto& [name, val] : j.at("images").items()) {
    int idx = ctx.letter_index(name);
    LiePoly img;
    if (val.is_array() || val.is_string()) {
      img = eval_bracket_expr(ctx, bracket_expr_from_json(ctx, val));
    } else {
      json jj = val;
      if (!jj.contains("n")) jj["n"] = ctx.n;
      if (!jj.contains("symplectic")) jj["symplectic"] = ctx.symplectic;
      if (!jj.contains("degree")) jj["degree"] = degree + 1;
      img = lie_from_json(jj);
      if (img.ctx != ctx) throw ValidationError("derivation image context mismatch");
    }
    if (img.degree != degree + 1) throw ValidationError("derivation image degree mismatch");
    d.images[idx] = img;
  }
  return d;
}

json endo_to_json(const Endomorphism& e) {
  json j = ctx_to_json(e.ctx);
  json images = json::object();
  for (int i = 0; i < e.ctx.n; ++i) images[e.ctx.letter_name(i)] = gw_render(e.images[i]);
  j["images"] = images;
  return j;
}

Endomorphism endo_from_json(const json& j) {
  Ctx ctx = ctx_from_json(j);
  Endomorphism e = endo_identity(ctx);
  for (const auto& [name, val] : j.at("images").items()) {
    int idx = ctx.letter_index(name);
    e.images[idx] = gw_parse(ctx, val.get<std::string>());
  }
  return e;
}

json graph_to_json(const OddGraph& g) {
  json verts = json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    json v{{"id", (int)i}};
    if (g.vertices[i].alt) {
      v["type"] = "alt3";
    } else {
      v["type"] = "sym";
      v["valence"] = g.vertices[i].valence;
    }
    verts.push_back(v);
  }
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back(json::array({a, b}));
  return json{{"vertices", verts}, {"edges", edges}};
}

OddGraph graph_from_json(const json& j) {
  OddGraph g;
  std::map<int, OddVertex> by_id;
  for (const auto& v : j.at("vertices")) {
    std::string type = v.at("type").get<std::string>();
    OddVertex ov;
    if (type == "alt3") {
      ov.alt = true;
      ov.valence = 3;
    } else if (type == "sym") {
      ov.alt = false;
      ov.valence = v.value("valence", 3);
    } else {
      throw ValidationError("graph vertex type must be alt3 or sym");
    }
    by_id.emplace(v.at("id").get<int>(), ov);
  }
  int next = 0;
  for (const auto& [id, ov] : by_id) {
    if (id != next++) throw ValidationError("graph vertex ids must be 0..d-1");
    g.vertices.push_back(ov);
  }
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("graph edge must be a pair");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  validate_graph(g);
  return g;
}

json subspace_to_json(const Subspace& s) {
  json basis = json::array();
  for (const auto& row : s.basis) {
    json r = json::array();
    for (const auto& [i, c] : row) r.push_back(json::array({i, c.str()}));
    basis.push_back(r);
  }
  return json{{"ambient", s.ambient}, {"basis", basis}, {"pivots", s.pivots}};
}

Subspace subspace_from_json(const json& j) {
  Subspace s;
  s.ambient = j.at("ambient").get<int>();
  for (const auto& row : j.at("basis")) {
    SparseVec v;
    for (const auto& entry : row)
      v.emplace_back(entry[0].get<int>(), Rational::parse(entry[1].get<std::string>()));
    sv_check(v, s.ambient);
    s.basis.push_back(std::move(v));
  }
  s.pivots = j.at("pivots").get<std::vector<int>>();
  if (s.pivots.size() != s.basis.size()) throw ValidationError("subspace: pivot count mismatch");
  return s;
}

json cochain_to_json(const Cochain& c) {
  json coords = json::array();
  for (const auto& [i, x] : c.coords) coords.push_back(json::array({i, x.str()}));
  return json{{"g", c.g}, {"d", c.d}, {"n", c.n}, {"coords", coords}};
}

Cochain cochain_from_json(const json& j) {
  Cochain c{j.at("g").get<int>(), j.at("d").get<int>(), j.at("n").get<int>(), {}};
  for (const auto& entry : j.at("coords"))
    c.coords.emplace_back(entry[0].get<int>(), Rational::parse(entry[1].get<std::string>()));
  return c;
}

}  // namespace symlie
