#pragma once

#include <json.hpp>

#include "symlie/graphs.hpp"
#include "symlie/johnson.hpp"

namespace symlie {

using nlohmann::json;

json ctx_to_json(const Ctx& ctx);
Ctx ctx_from_json(const json& j);

/// {"n":, "symplectic":, "degree":, "terms":[{"word":"a1.b2", "coeff":"-3/2"}]}
json tensor_to_json(const TensorPoly& t);
TensorPoly tensor_from_json(const json& j);
json sym_to_json(const SymPoly& t);
SymPoly sym_from_json(const json& j);
json ext_to_json(const ExtPoly& t);
ExtPoly ext_from_json(const json& j);

/// {"n":, "degree":, "terms":[{"lyndon":"aab", "coeff":"1"}]}
json lie_to_json(const LiePoly& t);
LiePoly lie_from_json(const json& j);

/// Nested arrays, e.g. ["x1", ["x1", "x2"]].
BracketExpr bracket_expr_from_json(const Ctx& ctx, const json& j);

/// {"n":, "symplectic":, "degree":, "images": {"a1": <LiePoly or bracket expr>}}
json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const json& j);

/// {"n":, "images": {"x1": "x2.x1.X2", ...}}  (capitals are inverses)
json endo_to_json(const Endomorphism& e);
Endomorphism endo_from_json(const json& j);

/// {"vertices":[{"id":0,"type":"alt3"},{"id":1,"type":"sym","valence":5}],
///  "edges":[[0,1],[0,1]]}
json graph_to_json(const OddGraph& g);
OddGraph graph_from_json(const json& j);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);

json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const json& j);

}  // namespace symlie
