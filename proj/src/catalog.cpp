#include "gpa/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef GPA_DATA_DIR
#define GPA_DATA_DIR "data"
#endif

namespace gpa {

LabeledBasisSpec labeled_basis_from_json(const nlohmann::json& j) {
    LabeledBasisSpec s;
    try {
        for (const auto& v : j.at("basis")) s.basis.push_back(v.get<int>() - 1);
        for (const auto& a : j.at("actions")) {
            if (!a.is_array() || a.size() != 4) throw Error(ErrorKind::ParseError, "action must be [arrow, from, to, scalar]");
            BasisAction act;
            act.arrow = a[0].get<std::string>();
            act.from = a[1].get<int>();
            act.to = a[2].get<int>();
            act.scalar = a[3].is_string() ? a[3].get<std::string>() : std::to_string(a[3].get<long>());
            s.actions.push_back(act);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("labeled basis: ") + e.what());
    }
    return s;
}

template <class T>
Rep<T> from_labeled_basis(const DatumPtr& d, const LabeledBasisSpec& spec, const T& lambda, const std::string& name) {
    const auto& q = d->quiver;
    Rep<T> M = Rep<T>::zero(d);
    std::vector<int> pos(spec.basis.size());
    for (std::size_t k = 0; k < spec.basis.size(); ++k) {
        int v = spec.basis[k];
        if (v < 0 || v >= d->n()) throw Error(ErrorKind::ParseError, name + ": basis vertex out of range");
        pos[k] = M.dims[v]++;
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        M.mats[a] = Matrix<T>(M.dims[q.arrows[a].tgt], M.dims[q.arrows[a].src]);
    for (const auto& act : spec.actions) {
        int a = q.find(act.arrow);
        if (act.from < 0 || act.to < 0 || act.from >= static_cast<int>(spec.basis.size()) ||
            act.to >= static_cast<int>(spec.basis.size()))
            throw Error(ErrorKind::ParseError, name + ": basis index out of range in " + act.arrow);
        if (spec.basis[act.from] != q.arrows[a].src || spec.basis[act.to] != q.arrows[a].tgt)
            throw Error(ErrorKind::ParseError, name + ": action of " + act.arrow + " does not respect vertex labels");
        T s;
        if (act.scalar == "lambda")
            s = lambda;
        else if (act.scalar == "-lambda")
            s = -lambda;
        else
            s = Field<T>::parse(act.scalar);
        M.mats[a](pos[act.to], pos[act.from]) += s;
    }
    require_relations(M, name);
    return M;
}

template <class T>
Rep<T> make_E(const DatumPtr& d, int i) {
    const long c = d->c(i);
    LabeledBasisSpec s;
    s.basis.assign(c, i);
    for (long k = 1; k < c; ++k) s.actions.push_back({"eps_" + std::to_string(i + 1), static_cast<int>(k), static_cast<int>(k - 1), "1"});
    return from_labeled_basis<T>(d, s, T(1), "E_" + std::to_string(i + 1));
}

template <class T>
Rep<T> make_S(const DatumPtr& d, int i) {
    LabeledBasisSpec s;
    s.basis = {i};
    return from_labeled_basis<T>(d, s, T(1), "S_" + std::to_string(i + 1));
}

template <class T>
Rep<T> make_serre_witness(const DatumPtr& d, int i, int j) {
    const auto& cd = d->cartan;
    if (i == j || cd.C[i][j] >= 0 || cd.D[i] < 2)
        throw Error(ErrorKind::PreconditionViolated, "witness needs c_ij < 0 and c_i >= 2");
    const int ci = static_cast<int>(cd.D[i]), cj = static_cast<int>(cd.D[j]);
    const int fij = static_cast<int>(cd.f[i][j]), gij = static_cast<int>(cd.g[i][j]);
    const std::string eps_i = "eps_" + std::to_string(i + 1), eps_j = "eps_" + std::to_string(j + 1);
    auto alpha = [](int a, int b, int g) {
        return "a_" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + "_" + std::to_string(g);
    };
    LabeledBasisSpec s;
    auto add_chain = [&](int vertex, int len, const std::string& eps) {
        int base = static_cast<int>(s.basis.size());
        for (int k = 0; k < len; ++k) s.basis.push_back(vertex);
        for (int k = 1; k < len; ++k) s.actions.push_back({eps, base + k, base + k - 1, "1"});
        return base;
    };
    // b_{kf}^{(g)} sits at chain_base[g][f] + k - 1.
    std::vector<std::vector<int>> chain_base(gij + 1, std::vector<int>(fij + 1));
    for (int g = 1; g <= gij; ++g)
        for (int f = 1; f <= fij; ++f) chain_base[g][f] = add_chain(i, ci, eps_i);
    int b = add_chain(i, ci, eps_i);
    int a = add_chain(j, cj, eps_j);
    for (int g = 1; g <= gij; ++g) {
        for (int f = 1; f <= fij; ++f) s.actions.push_back({alpha(i, j, g), a + cj - f, chain_base[g][f], "1"});
        s.actions.push_back({alpha(j, i, g), b + ci - 1, a, "1"});
    }
    return from_labeled_basis<T>(d, s, T(1), "X(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

namespace {

DatumPtr make_named(const IMat& C, const IVec& D) { return make_datum(validate_datum(C, D, {{0, 1}})); }

}  // namespace

DatumPtr datum_b2() {
    static const DatumPtr d = make_named({{2, -1}, {-2, 2}}, {2, 1});
    return d;
}
DatumPtr datum_g2() {
    static const DatumPtr d = make_named({{2, -1}, {-3, 2}}, {3, 1});
    return d;
}
DatumPtr datum_a2d2() {
    static const DatumPtr d = make_named({{2, -1}, {-1, 2}}, {2, 2});
    return d;
}
DatumPtr datum_a2() {
    static const DatumPtr d = make_named({{2, -1}, {-1, 2}}, {1, 1});
    return d;
}
DatumPtr datum_c26() {
    static const DatumPtr d = make_named({{2, -6}, {-2, 2}}, {2, 6});
    return d;
}

std::string fixture_dir() {
    if (const char* env = std::getenv("GPA_FIXTURE_DIR")) return env;
    return std::string(GPA_DATA_DIR) + "/fixtures";
}

FixtureSet load_fixture_set(const std::string& name) {
    std::string path = fixture_dir() + "/" + name + ".json";
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read fixture file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    const auto& c = j.at("cartan");
    IMat C = c.at("C").get<IMat>();
    IVec D = c.at("D").get<IVec>();
    std::set<std::pair<int, int>> omega;
    for (const auto& p : c.at("Omega")) omega.insert({p[0].get<int>() - 1, p[1].get<int>() - 1});
    FixtureSet fs;
    fs.datum = make_datum(validate_datum(C, D, omega));
    for (const auto& [key, val] : j.at("modules").items()) fs.specs[key] = labeled_basis_from_json(val);
    return fs;
}

namespace {

std::map<std::string, Rep<Rational>> build_all(const std::string& name, const DatumPtr& named, const Rational& lambda) {
    FixtureSet fs = load_fixture_set(name);
    if (!(fs.datum->cartan == named->cartan))
        throw Error(ErrorKind::ParseError, "fixture file " + name + " has an unexpected Cartan datum");
    std::map<std::string, Rep<Rational>> out;
    for (const auto& [key, spec] : fs.specs) out.emplace(key, from_labeled_basis<Rational>(named, spec, lambda, key));
    return out;
}

}  // namespace

std::map<std::string, Rep<Rational>> b2_fixtures(const Rational& lambda) { return build_all("b2", datum_b2(), lambda); }
std::map<std::string, Rep<Rational>> g2_fixtures(const Rational& lambda) { return build_all("g2", datum_g2(), lambda); }
std::map<std::string, Rep<Rational>> a2d2_fixtures() { return build_all("a2d2", datum_a2d2(), Rational(1)); }

#define GPA_CATALOG_INST(T)                                                                                \
    template Rep<T> from_labeled_basis(const DatumPtr&, const LabeledBasisSpec&, const T&, const std::string&); \
    template Rep<T> make_E(const DatumPtr&, int);                                                          \
    template Rep<T> make_S(const DatumPtr&, int);                                                          \
    template Rep<T> make_serre_witness(const DatumPtr&, int, int);

GPA_CATALOG_INST(Fp)
GPA_CATALOG_INST(Rational)

}  // namespace gpa
