#include <doctest.h>

#include <set>

#include "symlie/graphs.hpp"

using namespace symlie;

namespace {

OddGraph two_vertex(bool alt, int valence) {
  OddGraph g;
  g.vertices = {OddVertex{alt, valence}, OddVertex{alt, valence}};
  for (int e = 0; e < valence; ++e) g.edges.emplace_back(0, 1);
  return g;
}

bool proportional(const Cochain& a, const Cochain& b, Rational* lambda) {
  if (a.coords.size() != b.coords.size()) return false;
  if (a.coords.empty()) return true;
  *lambda = a.coords[0].second / b.coords[0].second;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.coords[i].first != b.coords[i].first) return false;
    if (a.coords[i].second != *lambda * b.coords[i].second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bidegrees") {
  Bidegree g3 = bidegree(two_vertex(false, 3));
  CHECK(g3.d == 2);
  CHECK(g3.n == 6);

  Bidegree g5 = bidegree(two_vertex(false, 5));
  CHECK(g5.d == 2);
  CHECK(g5.n == 10);

  Bidegree theta = bidegree(two_vertex(true, 3));
  CHECK(theta.d == 2);
  CHECK(theta.n == 2);

  for (int k = 1; k <= 4; ++k) {
    Bidegree b = bidegree(two_vertex(false, 2 * k + 1));
    CHECK(b.d == 2);
    CHECK(b.n == 4 * k + 2);
  }
}

TEST_CASE("graph validation") {
  OddGraph bad = two_vertex(false, 3);
  bad.edges.pop_back();  // valence mismatch
  CHECK_THROWS_AS(validate_graph(bad), ValidationError);

  OddGraph even;
  even.vertices = {OddVertex{false, 4}};
  even.edges = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(validate_graph(even), ValidationError);

  OddGraph disconnected;
  disconnected.vertices = {OddVertex{false, 3}, OddVertex{false, 3},
                           OddVertex{false, 3}, OddVertex{false, 3}};
  disconnected.edges = {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}};
  CHECK_THROWS_AS(validate_graph(disconnected), ValidationError);

  OddGraph alt5;
  alt5.vertices = {OddVertex{true, 5}, OddVertex{true, 5}};
  alt5.edges = {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
  CHECK_THROWS_AS(validate_graph(alt5), ValidationError);

  // loops count twice towards the valence
  OddGraph loops;
  loops.vertices = {OddVertex{false, 3}, OddVertex{false, 3}};
  loops.edges = {{0, 0}, {0, 1}, {1, 1}};
  validate_graph(loops);
  Bidegree b = bidegree(loops);
  CHECK(b.d == 2);
  CHECK(b.n == 6);
}

TEST_CASE("canonical form identifies isomorphic graphs") {
  OddGraph a;
  a.vertices = {OddVertex{false, 3}, OddVertex{true, 3}};
  a.edges = {{0, 0}, {0, 1}, {1, 1}};
  // relabeled copy: swap the two vertices
  OddGraph b;
  b.vertices = {OddVertex{true, 3}, OddVertex{false, 3}};
  b.edges = {{1, 1}, {1, 0}, {0, 0}};
  validate_graph(a);
  validate_graph(b);
  CHECK(canonical_form(a) == canonical_form(b));

  // same valences, different multigraph
  OddGraph c;
  c.vertices = {OddVertex{false, 5}, OddVertex{false, 5}};
  c.edges = {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
  OddGraph d;
  d.vertices = {OddVertex{false, 5}, OddVertex{false, 5}};
  d.edges = {{0, 0}, {0, 1}, {0, 1}, {0, 1}, {1, 1}};
  validate_graph(c);
  validate_graph(d);
  CHECK(canonical_form(c) != canonical_form(d));
}

TEST_CASE("enumeration") {
  auto graphs = enumerate_graphs(2, 6);
  // must contain the sym Gamma_3 and the alternating theta graph
  bool has_gamma3 = false, has_theta = false;
  for (const auto& g : graphs) {
    if (canonical_form(g) == canonical_form(two_vertex(false, 3))) has_gamma3 = true;
    if (canonical_form(g) == canonical_form(two_vertex(true, 3))) has_theta = true;
  }
  CHECK(has_gamma3);
  CHECK(has_theta);

  // canonical dedupe: all forms distinct
  std::set<std::string> forms;
  for (const auto& g : graphs) CHECK(forms.insert(canonical_form(g)).second);

  auto small = enumerate_graphs(2, 2);
  bool theta_only_alt = false;
  for (const auto& g : small)
    if (bidegree(g).n == 2) {
      CHECK(g.vertices.size() == 2);
      CHECK(g.vertices[0].alt);
      theta_only_alt = true;
    }
  CHECK(theta_only_alt);
}

TEST_CASE("phi proportional to t3 at genus 2") {
  Cochain phi = phi_cochain(two_vertex(false, 3), 2);
  Cochain t3 = build_t(2, 1);
  Rational lambda(0);
  CHECK(proportional(phi, t3, &lambda));
  CHECK_FALSE(lambda.is_zero());
}

TEST_CASE("phi proportional to e1 at genus 3") {
  Cochain phi = phi_cochain(two_vertex(true, 3), 3);
  Cochain e1 = build_e1(3);
  Rational lambda(0);
  CHECK(proportional(phi, e1, &lambda));
  CHECK_FALSE(lambda.is_zero());
  CHECK(is_sp_invariant(phi));
  CHECK(is_cocycle(phi));
}

TEST_CASE("alt graphs need genus 3") {
  CHECK_THROWS_AS(phi_cochain(two_vertex(true, 3), 2), ValidationError);
}

TEST_CASE("loops on symmetric tensors vanish") {
  // two sym(3) vertices, each with a loop, joined by one edge: the loop
  // contracts two slots of a symmetric tensor with omega, killing every term
  OddGraph g;
  g.vertices = {OddVertex{false, 3}, OddVertex{false, 3}};
  g.edges = {{0, 0}, {0, 1}, {1, 1}};
  Cochain phi = phi_cochain(g, 2);
  CHECK(phi.is_zero());
}
