#include "gpa/presentation.hpp"

#include <algorithm>

namespace gpa {

int Quiver::alpha(int i, int j, int g) const {
    return find("a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(g));
}

int Quiver::find(const std::string& name) const {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(ErrorKind::ParseError, "unknown arrow '" + name + "'");
    return it->second;
}

Quiver build_quiver(const CartanDatum& d) {
    Quiver q;
    q.n = d.n;
    for (int i = 0; i < d.n; ++i) {
        Arrow a;
        a.name = "eps_" + std::to_string(i + 1);
        a.src = a.tgt = a.i = a.j = i;
        a.loop = true;
        q.arrows.push_back(a);
    }
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) {
            if (!d.adjacent(i, j)) continue;
            for (int g = 1; g <= d.g[i][j]; ++g) {
                Arrow a;
                a.name = "a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(g);
                a.src = j;
                a.tgt = i;
                a.i = i;
                a.j = j;
                a.g = g;
                q.arrows.push_back(a);
            }
        }
    for (std::size_t k = 0; k < q.arrows.size(); ++k) q.by_name[q.arrows[k].name] = static_cast<int>(k);
    return q;
}

namespace {

std::vector<int> power(int arrow, long e) { return std::vector<int>(static_cast<std::size_t>(e), arrow); }

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
    std::vector<int> r;
    for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
    return r;
}

PathExpr nilpotency(const CartanDatum& d, const Quiver& q, int i) {
    PathExpr e;
    e.src = e.tgt = i;
    e.label = "nilpotency at " + std::to_string(i + 1);
    e.terms.push_back({1, power(q.eps(i), d.D[i])});
    return e;
}

PathExpr commutativity(const CartanDatum& d, const Quiver& q, int i, int j, int g) {
    PathExpr e;
    e.src = j;
    e.tgt = i;
    e.label = "commutativity for a_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
              std::to_string(g);
    int a = q.alpha(i, j, g);
    e.terms.push_back({1, concat({power(q.eps(i), d.f[j][i]), {a}})});
    e.terms.push_back({-1, concat({{a}, power(q.eps(j), d.f[i][j])})});
    return e;
}

}  // namespace

std::vector<PathExpr> preprojective_relations(const CartanDatum& d, const Quiver& q) {
    std::vector<PathExpr> rel;
    for (int i = 0; i < d.n; ++i) rel.push_back(nilpotency(d, q, i));
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
            if (d.adjacent(i, j))
                for (int g = 1; g <= d.g[i][j]; ++g) rel.push_back(commutativity(d, q, i, j, g));
    for (int i = 0; i < d.n; ++i) {
        PathExpr e;
        e.src = e.tgt = i;
        e.label = "mesh relation at " + std::to_string(i + 1);
        for (int j = 0; j < d.n; ++j) {
            if (!d.adjacent(i, j)) continue;
            for (int g = 1; g <= d.g[i][j]; ++g)
                for (long f = 0; f < d.f[j][i]; ++f)
                    e.terms.push_back({d.sgn(i, j), concat({power(q.eps(i), f),
                                                            {q.alpha(i, j, g), q.alpha(j, i, g)},
                                                            power(q.eps(i), d.f[j][i] - 1 - f)})});
        }
        if (!e.terms.empty()) rel.push_back(e);
    }
    return rel;
}

std::vector<PathExpr> h_relations(const CartanDatum& d, const Quiver& q) {
    std::vector<PathExpr> rel;
    for (int i = 0; i < d.n; ++i) rel.push_back(nilpotency(d, q, i));
    for (auto [i, j] : d.omega)
        for (int g = 1; g <= d.g[i][j]; ++g) rel.push_back(commutativity(d, q, i, j, g));
    return rel;
}

std::string path_expr_string(const PathExpr& e, const Quiver& q) {
    std::string s;
    for (std::size_t k = 0; k < e.terms.size(); ++k) {
        const auto& t = e.terms[k];
        long c = t.coeff;
        if (k == 0) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        if (std::labs(c) != 1) s += std::to_string(std::labs(c)) + "*";
        for (std::size_t m = 0; m < t.path.size(); ++m) {
            if (m) s += "*";
            s += q.arrows[t.path[m]].name;
        }
    }
    return s;
}

nlohmann::json path_expr_to_json(const PathExpr& e, const Quiver& q) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : e.terms) {
        nlohmann::json p = nlohmann::json::array();
        for (int a : t.path) p.push_back(q.arrows[a].name);
        arr.push_back({{"coeff", t.coeff}, {"path", p}});
    }
    return arr;
}

PathExpr path_expr_from_json(const nlohmann::json& j, const Quiver& q) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "path expression must be a JSON array");
    PathExpr e;
    bool first = true;
    for (const auto& t : j) {
        PathTerm term;
        term.coeff = t.at("coeff").get<long>();
        for (const auto& name : t.at("path")) term.path.push_back(q.find(name.get<std::string>()));
        if (term.path.empty()) throw Error(ErrorKind::ParseError, "empty path in expression");
        for (std::size_t k = 0; k + 1 < term.path.size(); ++k)
            if (q.arrows[term.path[k]].src != q.arrows[term.path[k + 1]].tgt)
                throw Error(ErrorKind::ParseError, "path is not composable");
        int tg = q.arrows[term.path.front()].tgt, sr = q.arrows[term.path.back()].src;
        if (first) {
            e.tgt = tg;
            e.src = sr;
            first = false;
        } else if (tg != e.tgt || sr != e.src) {
            throw Error(ErrorKind::ParseError, "paths in one expression must share endpoints");
        }
        e.terms.push_back(term);
    }
    return e;
}

DatumPtr make_datum(const CartanDatum& d) {
    auto p = std::make_shared<Datum>();
    p->cartan = d;
    p->quiver = build_quiver(d);
    p->relations = preprojective_relations(d, p->quiver);
    return p;
}

}  // namespace gpa
