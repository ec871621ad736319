#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symlie/cli.hpp"
#include "symlie/json_io.hpp"
#include "symlie/sha256.hpp"

using namespace symlie;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("symlie-test-" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("lie dim verb") {
  std::string out;
  CHECK(run({"lie", "dim", "--n", "4", "--deg", "6"}, &out) == 0);
  CHECK(out.find("670") != std::string::npos);
}

TEST_CASE("lie basis verb") {
  std::string out;
  CHECK(run({"lie", "basis", "--n", "2", "--deg", "3"}, &out) == 0);
  CHECK(out.find("aab") != std::string::npos);
  CHECK(out.find("abb") != std::string::npos);
}

TEST_CASE("trace verb on the adjoint power example") {
  TempDir tmp;
  // D(x2) = [x1,[x1,[x1,x2]]] as a bracket expression
  json deriv{{"n", 2},
             {"symplectic", false},
             {"degree", 3},
             {"images", {{"x2", json::array({"x1", json::array({"x1", json::array({"x1", "x2"})})})}}}};
  std::string path = (tmp.path / "d.json").string();
  std::ofstream(path) << deriv.dump();

  std::string out;
  CHECK(run({"trace", "--deriv", path}, &out) == 0);
  CHECK(out.find("aaa 1") != std::string::npos);  // x1^3

  CHECK(run({"trace", "--deriv", path, "--route", "c1"}, &out) == 0);
  CHECK(out.find("aaa -1") != std::string::npos);  // (-1)^3 x1^3
}

TEST_CASE("hslice verb with disk cache") {
  TempDir tmp;
  std::string first, second;
  CHECK(run({"hslice", "--g", "2", "--deg", "1", "--cache", tmp.path.string()}, &first) == 0);
  CHECK(first.find("= 4") != std::string::npos);
  CHECK(std::filesystem::exists(tmp.path / "hslice-g2-k1.json"));
  CHECK(run({"hslice", "--g", "2", "--deg", "1", "--cache", tmp.path.string()}, &second) == 0);
  CHECK(first == second);
}

TEST_CASE("johnson verbs") {
  TempDir tmp;
  json endo{{"n", 2}, {"images", {{"x1", "x2.x1.X2"}}}};
  std::string path = (tmp.path / "e.json").string();
  std::ofstream(path) << endo.dump();

  std::string out;
  CHECK(run({"johnson", "level", "--endo", path}, &out) == 0);
  CHECK(out.find("level = 1") != std::string::npos);

  CHECK(run({"johnson", "tau", "--endo", path, "--k", "1"}, &out) == 0);
  CHECK(out.find("x1 ->") != std::string::npos);
  CHECK(out.find("-1*ab") != std::string::npos);  // [x2,x1] = -[x1,x2]

  json endosym{{"n", 4}, {"symplectic", true}, {"images", {{"a1", "a1.b1"}}}};
  std::string spath = (tmp.path / "s.json").string();
  std::ofstream(spath) << endosym.dump();
  CHECK(run({"johnson", "boundary", "--endo", spath, "--k", "2"}, &out) == 0);
  CHECK(out.find("true") != std::string::npos);
}

TEST_CASE("cohomology verb emits csv") {
  std::string out;
  CHECK(run({"cohomology", "--g", "2", "--d", "2", "--weight", "2", "--format", "csv"}, &out) == 0);
  CHECK(out.find("g,d,n,dim_slice") != std::string::npos);
  CHECK(out.find("2,2,2,6,") != std::string::npos);
  CHECK(out.find("# hash: ") != std::string::npos);
}

TEST_CASE("graph verbs") {
  TempDir tmp;
  json graph{{"vertices", json::array({json{{"id", 0}, {"type", "sym"}, {"valence", 3}},
                                       json{{"id", 1}, {"type", "sym"}, {"valence", 3}}})},
             {"edges", json::array({json::array({0, 1}), json::array({0, 1}),
                                    json::array({0, 1})})}};
  std::string path = (tmp.path / "g.json").string();
  std::ofstream(path) << graph.dump();

  std::string out;
  CHECK(run({"graph", "phi", "--graph", path, "--g", "2"}, &out) == 0);
  CHECK(out.find("d=2 n=6") != std::string::npos);
  CHECK(out.find("nonzero=yes") != std::string::npos);

  CHECK(run({"graph", "enum", "--dmax", "2", "--nmax", "6"}, &out) == 0);
  CHECK(out.find("d=2 n=6") != std::string::npos);
}

TEST_CASE("invariants verb") {
  std::string out;
  CHECK(run({"invariants", "--g", "2", "--space", "ext(2)"}, &out) == 0);
  CHECK(out.find("invariant dim = 1") != std::string::npos);
  CHECK(run({"invariants", "--g", "3", "--space", "ext(2,ext(3))"}, &out) == 0);
}

TEST_CASE("exit codes") {
  std::string out;
  CHECK(run({"frobnicate"}, &out) == 2);
  CHECK(out.find("usage") != std::string::npos);
  CHECK(run({"lie", "dim", "--n", "4"}, &out) == 2);               // missing flag
  CHECK(run({"cohomology", "--g", "2", "--d", "2", "--weight", "6", "--cap", "10"}, &out) == 3);
  CHECK(run({"lie", "dim", "--n", "4", "--deg", "6", "--format", "yaml"}, &out) == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  for (auto fmt : {"text", "json", "csv"}) {
    std::string a, b;
    CHECK(run({"cohomology", "--g", "2", "--d", "2", "--weight", "3", "--format", fmt}, &a) == 0);
    CHECK(run({"cohomology", "--g", "2", "--d", "2", "--weight", "3", "--format", fmt}, &b) == 0);
    CHECK(a == b);
    CHECK(a.find("hash") != std::string::npos);
  }
}

TEST_CASE("selfcheck mutation hook") {
  auto ok = selfcheck({});
  for (const auto& r : ok) CHECK(r.pass);

  SelfcheckMutations mut;
  mut.flip_omega_sign = true;
  auto bad = selfcheck(mut);
  bool even_trace_failed = false;
  for (const auto& r : bad)
    if (r.name == "even-trace-on-h" && !r.pass) even_trace_failed = true;
  CHECK(even_trace_failed);
}

TEST_CASE("json round trips") {
  Ctx s2 = symplectic_context(2);

  Derivation d = der_zero(s2, 2);
  add_term(d.images[0].terms, Word({(char)0, (char)0, (char)1}), Rational(3, 2));
  add_term(d.images[3].terms, Word({(char)1, (char)2, (char)3}), Rational(-7));
  CHECK(derivation_from_json(derivation_to_json(d)).images == d.images);

  Endomorphism e = endo_identity(s2);
  e.images[0] = gw_parse(s2, "a2.a1.B2");
  json je = endo_to_json(e);
  CHECK(je["images"]["a1"] == "a2.a1.B2");
  CHECK(endo_from_json(je).images[0] == e.images[0]);

  OddGraph g;
  g.vertices = {OddVertex{true, 3}, OddVertex{false, 5}};
  g.edges = {{0, 1}, {0, 1}, {0, 1}, {1, 1}};
  OddGraph back = graph_from_json(graph_to_json(g));
  CHECK(canonical_form(back) == canonical_form(g));

  TensorPoly t = tensor_zero(s2, 2);
  add_term(t.terms, Word({(char)0, (char)3}), Rational(-3, 2));
  json jt = tensor_to_json(t);
  CHECK(jt["terms"][0]["word"] == "a1.b2");
  CHECK(jt["terms"][0]["coeff"] == "-3/2");
  CHECK(tensor_from_json(jt) == t);

  // unicode minus accepted on input
  json jm = jt;
  jm["terms"][0]["coeff"] = "\xe2\x88\x92" "3/2";
  CHECK(tensor_from_json(jm) == t);

  Subspace s = row_space(SparseMatrix::identity(3));
  CHECK(subspace_from_json(subspace_to_json(s)) == s);
}
