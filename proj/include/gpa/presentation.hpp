#pragma once

#include "gpa/cartan.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gpa {

struct Arrow {
    std::string name;
    int src = 0, tgt = 0;
    bool loop = false;
    int i = 0, j = 0, g = 0;  // alpha_ij^(g) : j -> i; for loops i = j = vertex, g = 0
};

struct Quiver {
    int n = 0;
    std::vector<Arrow> arrows;
    std::map<std::string, int> by_name;

    int eps(int i) const { return i; }  // loops come first
    int alpha(int i, int j, int g) const;  // g is 1-based
    int find(const std::string& name) const;
};

// Integer combination of paths; a path [a1,...,ak] denotes the product
// M(a1) M(a2) ... M(ak), so ak acts first.
struct PathTerm {
    long coeff = 0;
    std::vector<int> path;
};

struct PathExpr {
    int src = 0, tgt = 0;
    std::string label;
    std::vector<PathTerm> terms;
};

Quiver build_quiver(const CartanDatum& d);
std::vector<PathExpr> preprojective_relations(const CartanDatum& d, const Quiver& q);
std::vector<PathExpr> h_relations(const CartanDatum& d, const Quiver& q);

// Readable form, e.g. "a_1_2_1*a_2_1_1*eps_1 + eps_1*a_1_2_1*a_2_1_1".
std::string path_expr_string(const PathExpr& e, const Quiver& q);
nlohmann::json path_expr_to_json(const PathExpr& e, const Quiver& q);
PathExpr path_expr_from_json(const nlohmann::json& j, const Quiver& q);

struct Datum {
    CartanDatum cartan;
    Quiver quiver;
    std::vector<PathExpr> relations;
    int n() const { return cartan.n; }
    long c(int i) const { return cartan.D[i]; }
};
using DatumPtr = std::shared_ptr<const Datum>;

DatumPtr make_datum(const CartanDatum& d);

}  // namespace gpa
