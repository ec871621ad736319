#include "symlie/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symlie/graphs.hpp"
#include "symlie/johnson.hpp"
#include "symlie/json_io.hpp"
#include "symlie/sha256.hpp"

namespace symlie {

namespace {

const char* kUsage = R"(usage: symlie <verb> [flags]

verbs:
  lie dim        --n N --deg K              dim L_N(K) (Witt formula)
  lie basis      --n N --deg K              Lyndon-word basis of L_N(K)
  trace          --deriv FILE [--route def|c1|ck1]
  hslice         --g G --deg K [--basis]    h_{G,1}(K) dimension / basis
  johnson tau    --endo FILE --k K          Johnson homomorphism tau_k
  johnson level  --endo FILE [--kmax K]     filtration level
  johnson boundary --endo FILE --k K        boundary-fixing test
  cohomology     --g G --d D --weight N [--invariant] [--classes]
  graph phi      --graph FILE --g G [--check]
  graph enum     --dmax D --nmax N
  invariants     --g G --space DESC         e.g. ext(2), sym(3), ext(2,ext(3))
  selfcheck      [--flip-omega]

common flags: --format text|json|csv   --out PATH   --cap N   --cache DIR
)";

struct Flags {
  std::map<std::string, std::string> kv;
  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string get(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) throw ValidationError("missing required flag --" + k);
    return it->second;
  }
  int geti(const std::string& k) const { return std::stoi(get(k)); }
  int geti(const std::string& k, int dflt) const { return has(k) ? geti(k) : dflt; }
};

std::string join_params(const RunConfig& cfg) {
  std::string s = cfg.verb;
  for (const auto& [k, v] : cfg.params) s += " --" + k + (v.empty() ? "" : " " + v);
  return s;
}

json config_json(const RunConfig& cfg) {
  json p = json::object();
  for (const auto& [k, v] : cfg.params) p[k] = v;
  return json{{"verb", cfg.verb}, {"params", p},     {"cap", cfg.cap},
              {"format", cfg.format}, {"out", cfg.out_path}, {"cache", cfg.cache_dir}};
}

// Report envelope: config echo + result payload + content hash.
void emit(const RunConfig& cfg, const json& result, const std::string& text_body,
          const std::string& csv_body, std::ostream& out) {
  std::string payload;
  std::string rendered;
  if (cfg.format == "json") {
    json rep{{"config", config_json(cfg)}, {"result", result}};
    payload = rep.dump();
    rep["hash"] = sha256_hex(payload);
    rendered = rep.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    payload = "# " + join_params(cfg) + "\n" + csv_body;
    rendered = payload + "# hash: " + sha256_hex(payload) + "\n";
  } else {
    payload = "# " + join_params(cfg) + "\n" + text_body;
    rendered = payload + "hash: " + sha256_hex(payload) + "\n";
  }
  if (cfg.out_path.empty()) {
    out << rendered;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + cfg.out_path);
    f << rendered;
  }
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read " + path);
  json j;
  f >> j;
  return j;
}

// ---- disk cache for h slices -------------------------------------------

void load_cached_hslice(const std::string& dir, int g, int k) {
  if (dir.empty()) return;
  std::string path = dir + "/hslice-g" + std::to_string(g) + "-k" + std::to_string(k) + ".json";
  std::ifstream f(path);
  if (!f) return;
  try {
    json j;
    f >> j;
    std::string body = j.at("subspace").dump();
    if (j.at("hash").get<std::string>() != sha256_hex(body)) return;  // stale
    h_basis_install(g, k, subspace_from_json(j.at("subspace")));
  } catch (...) {
    // unreadable cache entries are ignored
  }
}

void store_cached_hslice(const std::string& dir, int g, int k) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string path = dir + "/hslice-g" + std::to_string(g) + "-k" + std::to_string(k) + ".json";
  if (std::filesystem::exists(path)) return;
  json sub = subspace_to_json(h_basis(g, k).sub);
  json j{{"g", g}, {"k", k}, {"subspace", sub}, {"hash", sha256_hex(sub.dump())}};
  std::ofstream f(path, std::ios::binary);
  f << j.dump() << "\n";
}

// ---- invariants space descriptor ----------------------------------------

SpaceDesc parse_space(const std::string& s) {
  auto fail = [&]() -> SpaceDesc {
    throw ValidationError("bad space descriptor '" + s + "'");
  };
  if (s == "H") return SpaceDesc{SpaceDesc::Kind::Tensor, 1, 0};
  auto paren = s.find('(');
  if (paren == std::string::npos || s.back() != ')') return fail();
  std::string head = s.substr(0, paren);
  std::string inner = s.substr(paren + 1, s.size() - paren - 2);
  auto comma = inner.find(',');
  if (comma != std::string::npos) {
    if (head != "ext") return fail();
    SpaceDesc base = parse_space(inner.substr(comma + 1));
    if (base.kind != SpaceDesc::Kind::Ext) return fail();
    return SpaceDesc{SpaceDesc::Kind::ExtOfExt, base.k, std::stoi(inner.substr(0, comma))};
  }
  int k = std::stoi(inner);
  if (head == "tensor") return SpaceDesc{SpaceDesc::Kind::Tensor, k, 0};
  if (head == "sym") return SpaceDesc{SpaceDesc::Kind::Sym, k, 0};
  if (head == "ext") return SpaceDesc{SpaceDesc::Kind::Ext, k, 0};
  if (head == "der") return SpaceDesc{SpaceDesc::Kind::Der, k, 0};
  return fail();
}

// ---- verb implementations ------------------------------------------------

int verb_lie_dim(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int n = f.geti("n"), k = f.geti("deg");
  long long dim = witt_dim(n, k);
  emit(cfg, json{{"dim", dim}}, std::to_string(dim) + "\n",
       "n,deg,dim\n" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(dim) +
           "\n",
       out);
  return 0;
}

int verb_lie_basis(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int n = f.geti("n"), k = f.geti("deg");
  Ctx ctx = make_context(std::max(n, 2), false);
  const auto& words = lyndon_words(n, k);
  json arr = json::array();
  std::string text, csv = "word\n";
  for (const auto& w : words) {
    std::string r = render_word(ctx, w, true);
    arr.push_back(r);
    text += r + "\n";
    csv += r + "\n";
  }
  emit(cfg, json{{"count", (int)words.size()}, {"basis", arr}}, text, csv, out);
  return 0;
}

int verb_trace(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  Derivation d = derivation_from_json(read_json_file(f.get("deriv")));
  std::string route = f.has("route") ? f.get("route") : "def";
  SymPoly t;
  if (route == "def")
    t = trace_k(d);
  else if (route == "c1")
    t = trace_via_contraction(d, ContractionRoute::C1);
  else if (route == "ck1")
    t = trace_via_contraction(d, ContractionRoute::CkPlus1);
  else
    throw ValidationError("route must be def, c1 or ck1");
  std::string text, csv = "word,coeff\n";
  for (const auto& [w, c] : t.terms) {
    text += render_word(t.ctx, w, !t.ctx.symplectic) + " " + c.str() + "\n";
    csv += render_word(t.ctx, w, false) + "," + c.str() + "\n";
  }
  if (t.terms.empty()) text = "0\n";
  emit(cfg, sym_to_json(t), text, csv, out);
  return 0;
}

int verb_hslice(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int g = f.geti("g"), k = f.geti("deg");
  Ctx ctx = symplectic_context(g);
  if (der_dim(ctx, k) > cfg.cap)
    throw CapExceeded("hslice coordinate space exceeds cap");
  load_cached_hslice(cfg.cache_dir, g, k);
  const HSlice& h = h_basis(g, k);
  store_cached_hslice(cfg.cache_dir, g, k);
  json result{{"g", g}, {"k", k}, {"dim", h.dim()},
              {"ambient", (long long)der_dim(ctx, k)}};
  std::string text = "dim h_{" + std::to_string(g) + ",1}(" + std::to_string(k) +
                     ") = " + std::to_string(h.dim()) + "\n";
  if (f.has("basis")) result["basis"] = subspace_to_json(h.sub);
  std::string csv = "g,k,dim,ambient\n" + std::to_string(g) + "," + std::to_string(k) + "," +
                    std::to_string(h.dim()) + "," + std::to_string(der_dim(ctx, k)) + "\n";
  emit(cfg, result, text, csv, out);
  return 0;
}

int verb_johnson_tau(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  Endomorphism e = endo_from_json(read_json_file(f.get("endo")));
  int k = f.geti("k");
  Derivation d = johnson_tau(e, k);
  json result = derivation_to_json(d);
  std::string text;
  for (int i = 0; i < e.ctx.n; ++i) {
    text += e.ctx.letter_name(i) + " -> ";
    if (d.images[i].is_zero()) {
      text += "0\n";
      continue;
    }
    bool first = true;
    for (const auto& [w, c] : d.images[i].terms) {
      text += (first ? "" : " + ") + c.str() + "*" + render_word(e.ctx, w, !e.ctx.symplectic);
      first = false;
    }
    text += "\n";
  }
  emit(cfg, result, text, text, out);
  return 0;
}

int verb_johnson_level(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  Endomorphism e = endo_from_json(read_json_file(f.get("endo")));
  int kmax = f.geti("kmax", 10);
  FiltrationLevel lv = filtration_level(e, kmax);
  std::string text = "level " + std::string(lv.at_least ? ">= " : "= ") +
                     std::to_string(lv.level) + (lv.invertible ? "" : " (not invertible on N_k)") +
                     "\n";
  emit(cfg,
       json{{"level", lv.level}, {"at_least", lv.at_least}, {"invertible", lv.invertible}},
       text, text, out);
  return 0;
}

int verb_johnson_boundary(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  Endomorphism e = endo_from_json(read_json_file(f.get("endo")));
  int k = f.geti("k");
  bool fixes = fixes_boundary(e, k);
  emit(cfg, json{{"k", k}, {"fixes_boundary", fixes}},
       std::string(fixes ? "true" : "false") + "\n",
       "k,fixes\n" + std::to_string(k) + "," + (fixes ? "true" : "false") + "\n", out);
  return 0;
}

int verb_cohomology(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int g = f.geti("g"), d = f.geti("d"), n = f.geti("weight");
  InvariantCohomology ic = invariant_cohomology(g, d, n, cfg.cap);
  json classes = json::object();
  std::string class_text;
  if (f.has("classes") && d == 2) {
    auto render_class = [&](const std::string& name, const Cochain& c) {
      auto coords = class_of(c, cfg.cap);
      json arr = json::array();
      std::string s;
      for (const auto& x : coords) {
        arr.push_back(x.str());
        s += (s.empty() ? "" : " ") + x.str();
      }
      classes[name] = arr;
      class_text += name + ": [" + s + "]\n";
    };
    if (n == 2 && g >= 2) render_class("e1", build_e1(g, cfg.cap));
    if (n >= 6 && (n - 2) % 4 == 0) render_class("t" + std::to_string((n - 2) / 2),
                                                 build_t(g, (n - 2) / 4, cfg.cap));
  }
  json result{{"g", g},
              {"d", d},
              {"weight", n},
              {"dim_slice", ic.dim_slice},
              {"dim_invariant", ic.dim_invariant},
              {"dim_cocycles", ic.dim_cocycles},
              {"dim_boundaries", ic.dim_boundaries},
              {"dim_H_invariant", ic.dim_h}};
  if (!classes.empty()) result["classes"] = classes;
  std::ostringstream text;
  text << "g=" << g << " d=" << d << " weight=" << n << " dim_slice=" << ic.dim_slice
       << " dim_invariant=" << ic.dim_invariant << " dim_H_invariant=" << ic.dim_h << "\n"
       << class_text;
  std::ostringstream csv;
  csv << "g,d,n,dim_slice,dim_invariant,dim_H_invariant,classes\n"
      << g << "," << d << "," << n << "," << ic.dim_slice << "," << ic.dim_invariant << ","
      << ic.dim_h << ",\"" << classes.dump() << "\"\n";
  emit(cfg, result, text.str(), csv.str(), out);
  return 0;
}

int verb_graph_phi(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  OddGraph graph = graph_from_json(read_json_file(f.get("graph")));
  int g = f.geti("g");
  Bidegree b = bidegree(graph);
  Cochain c = phi_cochain(graph, g, cfg.cap);
  json result{{"bidegree", json{{"d", b.d}, {"n", b.n}}}, {"cochain", cochain_to_json(c)},
              {"nonzero", !c.is_zero()}};
  std::ostringstream text;
  text << "bidegree d=" << b.d << " n=" << b.n << "; nonzero=" << (!c.is_zero() ? "yes" : "no")
       << "\n";
  if (f.has("check")) {
    bool inv = is_sp_invariant(c, cfg.cap);
    bool closed = is_cocycle(c, cfg.cap);
    result["sp_invariant"] = inv;
    result["cocycle"] = closed;
    text << "sp_invariant=" << (inv ? "yes" : "no") << " cocycle=" << (closed ? "yes" : "no")
         << "\n";
  }
  emit(cfg, result, text.str(), text.str(), out);
  return 0;
}

int verb_graph_enum(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int dmax = f.geti("dmax"), nmax = f.geti("nmax");
  auto graphs = enumerate_graphs(dmax, nmax);
  json arr = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "d,n,vertices,edges\n";
  for (const auto& g : graphs) {
    Bidegree b = bidegree(g);
    json item = graph_to_json(g);
    item["bidegree"] = json{{"d", b.d}, {"n", b.n}};
    arr.push_back(item);
    text << "d=" << b.d << " n=" << b.n << " " << canonical_form(g) << "\n";
    csv << b.d << "," << b.n << "," << g.vertices.size() << "," << g.edges.size() << "\n";
  }
  emit(cfg, json{{"count", (int)graphs.size()}, {"graphs", arr}}, text.str(), csv.str(), out);
  return 0;
}

int verb_invariants(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  int g = f.geti("g");
  Ctx ctx = symplectic_context(g);
  SpaceDesc desc = parse_space(f.get("space"));
  long long dim = space_dim(ctx, desc);
  if (dim > cfg.cap) throw CapExceeded("space dimension exceeds cap");
  Subspace inv = invariant_subspace(ctx, desc);
  json result{{"space", f.get("space")}, {"g", g}, {"dim_space", dim},
              {"dim_invariant", inv.dim()}};
  if (f.has("basis")) result["basis"] = subspace_to_json(inv);
  std::string text = "dim " + f.get("space") + " = " + std::to_string(dim) +
                     ", invariant dim = " + std::to_string(inv.dim()) + "\n";
  std::string csv = "g,space,dim_space,dim_invariant\n" + std::to_string(g) + "," +
                    f.get("space") + "," + std::to_string(dim) + "," +
                    std::to_string(inv.dim()) + "\n";
  emit(cfg, result, text, csv, out);
  return 0;
}

int verb_selfcheck(const RunConfig& cfg, const Flags& f, std::ostream& out) {
  SelfcheckMutations mut;
  mut.flip_omega_sign = f.has("flip-omega");
  mut.cap = cfg.cap;
  auto results = selfcheck(mut);
  bool all = true;
  json arr = json::array();
  std::string text;
  std::string csv = "check,pass,detail\n";
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    text += std::string(r.pass ? "PASS " : "FAIL ") + r.name +
            (r.detail.empty() ? "" : " (" + r.detail + ")") + "\n";
    csv += r.name + "," + (r.pass ? "true" : "false") + ",\"" + r.detail + "\"\n";
  }
  text += all ? "all checks passed\n" : "FAILURES present\n";
  emit(cfg, json{{"checks", arr}, {"all_pass", all}}, text, csv, out);
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    std::vector<std::string> rest;
    Flags flags;
    if (const char* env = std::getenv("SYMLIE_CACHE")) cfg.cache_dir = env;
    std::size_t i = 0;
    for (; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a.rfind("--", 0) == 0) {
        std::string key = a.substr(2);
        std::string val;
        bool is_bool = (key == "basis" || key == "invariant" || key == "classes" ||
                        key == "check" || key == "flip-omega");
        if (!is_bool) {
          if (i + 1 >= args.size()) throw ValidationError("flag --" + key + " needs a value");
          val = args[++i];
        }
        if (key == "format")
          cfg.format = val;
        else if (key == "out")
          cfg.out_path = val;
        else if (key == "cap")
          cfg.cap = std::stoll(val);
        else if (key == "cache")
          cfg.cache_dir = val;
        else {
          flags.kv[key] = val;
          cfg.params.emplace_back(key, val);
        }
      } else {
        rest.push_back(a);
      }
    }
    if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
      throw ValidationError("format must be text, json or csv");
    for (std::size_t v = 0; v < rest.size(); ++v)
      cfg.verb += (v ? " " : "") + rest[v];

    if (cfg.verb == "lie dim") return verb_lie_dim(cfg, flags, out);
    if (cfg.verb == "lie basis") return verb_lie_basis(cfg, flags, out);
    if (cfg.verb == "trace") return verb_trace(cfg, flags, out);
    if (cfg.verb == "hslice") return verb_hslice(cfg, flags, out);
    if (cfg.verb == "johnson tau") return verb_johnson_tau(cfg, flags, out);
    if (cfg.verb == "johnson level") return verb_johnson_level(cfg, flags, out);
    if (cfg.verb == "johnson boundary") return verb_johnson_boundary(cfg, flags, out);
    if (cfg.verb == "cohomology") return verb_cohomology(cfg, flags, out);
    if (cfg.verb == "graph phi") return verb_graph_phi(cfg, flags, out);
    if (cfg.verb == "graph enum") return verb_graph_enum(cfg, flags, out);
    if (cfg.verb == "invariants") return verb_invariants(cfg, flags, out);
    if (cfg.verb == "selfcheck") return verb_selfcheck(cfg, flags, out);
    err << "unknown verb '" << cfg.verb << "'\n" << kUsage;
    return 2;
  } catch (const CapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: bad numeric argument\n";
    return 2;
  }
}

}  // namespace symlie
