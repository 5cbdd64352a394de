#include "gpa/module_io.hpp"

#include "gpa/catalog.hpp"

#include <fstream>
#include <sstream>

namespace gpa {

namespace {

template <class T>
nlohmann::json arrows_json(const Rep<T>& M) {
    nlohmann::json arrows = nlohmann::json::object();
    const auto& q = M.quiver();
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        nlohmann::json rows = nlohmann::json::array();
        const auto& m = M.mats[a];
        for (std::size_t r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(Field<T>::str(m(r, c)));
            rows.push_back(row);
        }
        arrows[q.arrows[a].name] = rows;
    }
    return arrows;
}

template <class T>
Rep<T> rep_from_matrices(const DatumPtr& d, const nlohmann::json& j) {
    Rep<T> M = Rep<T>::zero(d);
    const auto& q = d->quiver;
    auto dims = j.at("dims");
    if (!dims.is_array() || static_cast<int>(dims.size()) != d->n())
        throw Error(ErrorKind::ShapeMismatch, "dims must list one entry per vertex");
    for (int v = 0; v < d->n(); ++v) {
        M.dims[v] = dims[v].get<int>();
        if (M.dims[v] < 0) throw Error(ErrorKind::ParseError, "negative dimension");
    }
    const auto& arrows = j.at("arrows");
    for (const auto& [name, val] : arrows.items()) q.find(name);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const std::size_t R = M.dims[q.arrows[a].tgt], C = M.dims[q.arrows[a].src];
        Matrix<T> m(R, C);
        auto it = arrows.find(q.arrows[a].name);
        if (it != arrows.end()) {
            if (!it->is_array() || (R > 0 && it->size() != R))
                throw Error(ErrorKind::ShapeMismatch, "matrix of " + q.arrows[a].name + " has the wrong number of rows");
            for (std::size_t r = 0; r < it->size(); ++r) {
                const auto& row = (*it)[r];
                if (!row.is_array() || row.size() != C)
                    throw Error(ErrorKind::ShapeMismatch,
                                "matrix of " + q.arrows[a].name + " has the wrong number of columns");
                for (std::size_t c = 0; c < C; ++c) {
                    std::string s = row[c].is_string() ? row[c].get<std::string>() : row[c].dump();
                    try {
                        m(r, c) = Field<T>::parse(s);
                    } catch (const std::exception& e) {
                        throw Error(ErrorKind::ParseError, q.arrows[a].name + ": " + e.what());
                    }
                }
            }
        }
        M.mats[a] = m;
    }
    require_relations(M);
    return M;
}

}  // namespace

nlohmann::json rep_to_json(const Rep<Rational>& M) {
    return {{"field", {{"kind", "Q"}}}, {"dims", M.dims}, {"arrows", arrows_json(M)}};
}

nlohmann::json rep_to_json(const Rep<Fp>& M) {
    return {{"field", {{"kind", "Fp"}, {"p", Fp::modulus()}}}, {"dims", M.dims}, {"arrows", arrows_json(M)}};
}

ModuleFile parse_module_json(const DatumPtr& d, const nlohmann::json& j) {
    ModuleFile out;
    try {
        if (j.contains("basis")) {
            Rational lambda = 1;
            if (j.contains("lambda")) {
                const auto& l = j["lambda"];
                lambda = Field<Rational>::parse(l.is_string() ? l.get<std::string>() : l.dump());
            }
            out.q = from_labeled_basis<Rational>(d, labeled_basis_from_json(j), lambda);
            return out;
        }
        std::string kind = "Q";
        if (j.contains("field")) kind = j["field"].at("kind").get<std::string>();
        if (kind == "Q") {
            out.q = rep_from_matrices<Rational>(d, j);
        } else if (kind == "Fp") {
            out.p = j["field"].at("p").get<std::uint64_t>();
            if (!is_prime(out.p)) throw Error(ErrorKind::ParseError, "field.p is not prime");
            FpModulus guard(out.p);
            out.fp = rep_from_matrices<Fp>(d, j);
        } else {
            throw Error(ErrorKind::ParseError, "unknown field kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    return out;
}

ModuleFile read_module_file(const DatumPtr& d, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    return parse_module_json(d, j);
}

}  // namespace gpa
