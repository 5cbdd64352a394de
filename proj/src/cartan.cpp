#include "gpa/cartan.hpp"

#include <toml.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace gpa {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonSymmetrizable: return "NonSymmetrizable";
        case ErrorKind::BadOrientation: return "BadOrientation";
        case ErrorKind::BadDiagonal: return "BadDiagonal";
        case ErrorKind::InvalidCartan: return "InvalidCartan";
        case ErrorKind::NotLocallyFreeShape: return "NotLocallyFreeShape";
        case ErrorKind::NotFiniteType: return "NotFiniteType";
        case ErrorKind::NotDominant: return "NotDominant";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotLocallyFree: return "NotLocallyFree";
        case ErrorKind::RelationFailure: return "RelationFailure";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::GenericityExhausted: return "GenericityExhausted";
        case ErrorKind::KeyCollision: return "KeyCollision";
        case ErrorKind::HeightInsufficient: return "HeightInsufficient";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NonPolynomialCount: return "NonPolynomialCount";
        case ErrorKind::BadReduction: return "BadReduction";
        case ErrorKind::DualityCheckFailed: return "DualityCheckFailed";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::TorusNotApplicable: return "TorusNotApplicable";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

long CartanDatum::bil_sym(const IVec& x, const IVec& y) const {
    long s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += x[i] * y[j] * D[i] * C[i][j];
    return s;
}

long CartanDatum::bil_euler(const IVec& x, const IVec& y) const {
    long s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += x[i] * y[j] * C[j][i];
    return s;
}

long CartanDatum::pair_alpha(const IVec& r, int i) const {
    long s = 0;
    for (int j = 0; j < n; ++j) s += r[j] * C[i][j];
    return s;
}

long CartanDatum::q_dc(const IVec& x) const { return bil_sym(x, x) / 2; }

IVec CartanDatum::simple_root(int i) const {
    IVec v(n, 0);
    v[i] = 1;
    return v;
}

namespace {

void check_square(const IMat& C) {
    for (const auto& row : C)
        if (row.size() != C.size())
            throw Error(ErrorKind::ShapeMismatch, "Cartan matrix is not square");
}

void check_cartan_axioms(const IMat& C) {
    check_square(C);
    const int n = static_cast<int>(C.size());
    for (int i = 0; i < n; ++i) {
        if (C[i][i] != 2)
            throw Error(ErrorKind::BadDiagonal, "c_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (C[i][j] > 0)
                throw Error(ErrorKind::InvalidCartan, "positive off-diagonal entry c_" +
                                                          std::to_string(i + 1) + std::to_string(j + 1));
            if ((C[i][j] == 0) != (C[j][i] == 0))
                throw Error(ErrorKind::InvalidCartan, "c_ij = 0 but c_ji != 0 at (" +
                                                          std::to_string(i + 1) + "," +
                                                          std::to_string(j + 1) + ")");
        }
    }
}

}  // namespace

IVec minimal_symmetrizer(const IMat& C) {
    check_cartan_axioms(C);
    const int n = static_cast<int>(C.size());
    std::vector<mpq_class> c(n, mpq_class(0));
    std::vector<int> comp(n, -1);
    IVec D(n, 0);
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(s);
        comp[s] = s;
        c[s] = 1;
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            members.push_back(i);
            for (int j = 0; j < n; ++j) {
                if (j == i || C[i][j] == 0) continue;
                // c_i c_ij = c_j c_ji
                mpq_class want = c[i] * C[i][j] / C[j][i];
                if (comp[j] < 0) {
                    comp[j] = s;
                    c[j] = want;
                    q.push(j);
                } else if (c[j] != want) {
                    throw Error(ErrorKind::NonSymmetrizable, "ratio constraints are inconsistent");
                }
            }
        }
        mpz_class l = 1, g = 0;
        for (int i : members) l = lcm(l, c[i].get_den());
        for (int i : members) g = gcd(g, mpz_class(c[i] * l));
        for (int i : members) D[i] = mpz_class(c[i] * l / g).get_si();
    }
    return D;
}

std::set<std::pair<int, int>> default_orientation(const IMat& C) {
    std::set<std::pair<int, int>> o;
    for (int i = 0; i < static_cast<int>(C.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(C.size()); ++j)
            if (C[i][j] < 0) o.insert({i, j});
    return o;
}

CartanDatum validate_datum(const IMat& C, const IVec& D, const std::set<std::pair<int, int>>& omega) {
    check_cartan_axioms(C);
    const int n = static_cast<int>(C.size());
    if (static_cast<int>(D.size()) != n) throw Error(ErrorKind::ShapeMismatch, "symmetrizer length differs from n");
    for (int i = 0; i < n; ++i)
        if (D[i] <= 0) throw Error(ErrorKind::NonSymmetrizable, "symmetrizer entries must be positive");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (D[i] * C[i][j] != D[j] * C[j][i])
                throw Error(ErrorKind::NonSymmetrizable, "D*C is not symmetric at (" + std::to_string(i + 1) +
                                                             "," + std::to_string(j + 1) + ")");
    for (auto [i, j] : omega) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw Error(ErrorKind::BadOrientation, "orientation pair out of range");
        if (C[i][j] == 0)
            throw Error(ErrorKind::BadOrientation, "orientation contains a pair with c_ij = 0");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (C[i][j] < 0 && (omega.count({i, j}) + omega.count({j, i}) != 1))
                throw Error(ErrorKind::BadOrientation, "exactly one of (" + std::to_string(i + 1) + "," +
                                                           std::to_string(j + 1) + ") and its reverse required");
    CartanDatum d;
    d.n = n;
    d.C = C;
    d.D = D;
    d.omega = omega;
    d.g.assign(n, IVec(n, 0));
    d.f.assign(n, IVec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && C[i][j] != 0) {
                d.g[i][j] = std::gcd(std::labs(C[i][j]), std::labs(C[j][i]));
                d.f[i][j] = std::labs(C[i][j]) / d.g[i][j];
            }
    return d;
}

CartanDatum standard_datum(const IMat& C) {
    return validate_datum(C, minimal_symmetrizer(C), default_orientation(C));
}

long expected_dim(const CartanDatum& d, const IVec& dims) {
    if (static_cast<int>(dims.size()) != d.n) throw Error(ErrorKind::ShapeMismatch, "dimension vector length");
    IVec r(d.n);
    long sq = 0;
    for (int i = 0; i < d.n; ++i) {
        if (dims[i] % d.D[i] != 0)
            throw Error(ErrorKind::NotLocallyFreeShape, "c_" + std::to_string(i + 1) + " does not divide d_" +
                                                            std::to_string(i + 1));
        r[i] = dims[i] / d.D[i];
        sq += dims[i] * dims[i];
    }
    return sq - d.q_dc(r);
}

long height(const IVec& r) { return std::accumulate(r.begin(), r.end(), 0L); }

std::vector<IVec> positive_roots(const IMat& C, long height_cap) {
    check_cartan_axioms(C);
    const int n = static_cast<int>(C.size());
    std::set<IVec> seen;
    std::queue<IVec> q;
    for (int i = 0; i < n; ++i) {
        IVec v(n, 0);
        v[i] = 1;
        seen.insert(v);
        q.push(v);
    }
    while (!q.empty()) {
        IVec x = q.front();
        q.pop();
        for (int i = 0; i < n; ++i) {
            long p = 0;
            for (int j = 0; j < n; ++j) p += x[j] * C[i][j];
            if (p == 0) continue;
            IVec y = x;
            y[i] -= p;
            if (y[i] < 0) continue;
            if (std::all_of(y.begin(), y.end(), [](long t) { return t == 0; })) continue;
            if (seen.count(y)) continue;
            if (height(y) > height_cap)
                throw Error(ErrorKind::NotFiniteType, "reflection closure exceeds height cap");
            seen.insert(y);
            q.push(y);
        }
    }
    std::vector<IVec> roots(seen.begin(), seen.end());
    std::sort(roots.begin(), roots.end(), [](const IVec& a, const IVec& b) {
        long ha = height(a), hb = height(b);
        return ha != hb ? ha < hb : a < b;
    });
    return roots;
}

unsigned long long kostant_count(const IMat& C, const IVec& r) {
    const auto roots = positive_roots(C);
    const int n = static_cast<int>(C.size());
    for (long x : r)
        if (x < 0) return 0;
    // Mixed-radix indexing of the box 0 <= v <= r.
    std::vector<std::size_t> stride(n);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        stride[i] = total;
        total *= static_cast<std::size_t>(r[i] + 1);
    }
    std::vector<unsigned long long> ways(total, 0);
    ways[0] = 1;
    for (const auto& a : roots) {
        bool fits = true;
        for (int i = 0; i < n; ++i) fits = fits && a[i] <= r[i];
        if (!fits) continue;
        std::size_t shift = 0;
        for (int i = 0; i < n; ++i) shift += static_cast<std::size_t>(a[i]) * stride[i];
        // Increasing index order is a valid topological order for v - a -> v.
        for (std::size_t idx = 0; idx < total; ++idx) {
            bool ok = true;
            std::size_t rem = idx;
            for (int i = n - 1; i >= 0; --i) {
                long coord = static_cast<long>(rem / stride[i]);
                rem %= stride[i];
                if (coord < a[i]) ok = false;
            }
            if (ok) ways[idx] += ways[idx - shift];
        }
    }
    return ways[total - 1];
}

bool is_dominant(const IVec& w) {
    return std::all_of(w.begin(), w.end(), [](long x) { return x >= 0; });
}

mpz_class weyl_dim(const CartanDatum& d, const IVec& lambda) {
    if (!is_dominant(lambda)) throw Error(ErrorKind::NotDominant, "weight " + format_vec(lambda));
    const auto roots = positive_roots(d.C);
    mpq_class prod = 1;
    for (const auto& a : roots) {
        long num = 0, den = 0;
        for (int j = 0; j < d.n; ++j) {
            num += a[j] * d.D[j] * (lambda[j] + 1);
            den += a[j] * d.D[j];
        }
        prod *= mpq_class(num, den);
    }
    prod.canonicalize();
    if (prod.get_den() != 1) throw Error(ErrorKind::PreconditionViolated, "Weyl dimension is not integral");
    return prod.get_num();
}

IVec nu_from_weight(const IMat& C, const IVec& lambda, const IVec& mu, const IVec& r) {
    const int n = static_cast<int>(C.size());
    IVec nu(n);
    for (int j = 0; j < n; ++j) {
        long s = 0;
        for (int i = 0; i < n; ++i) s += r[i] * C[j][i];
        nu[j] = lambda[j] + mu[j] - s;
    }
    return nu;
}

std::string format_vec(const IVec& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(v[k]);
    }
    return s + ")";
}

namespace {

IVec int_list(const toml::array& a, const char* what) {
    IVec v;
    for (const auto& e : a) {
        auto x = e.value<long>();
        if (!x) throw Error(ErrorKind::ParseError, std::string(what) + " must contain integers");
        v.push_back(*x);
    }
    return v;
}

}  // namespace

CartanDatum parse_cartan_toml(const std::string& text) {
    toml::table tbl;
    try {
        tbl = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << e.description() << " at line " << e.source().begin.line << ", column " << e.source().begin.column;
        throw Error(ErrorKind::ParseError, os.str());
    }
    auto* cart = tbl["cartan"].as_table();
    if (!cart) throw Error(ErrorKind::ParseError, "missing [cartan] table");
    auto* carr = (*cart)["C"].as_array();
    if (!carr) throw Error(ErrorKind::ParseError, "[cartan].C must be an array of rows");
    IMat C;
    for (const auto& row : *carr) {
        auto* r = row.as_array();
        if (!r) throw Error(ErrorKind::ParseError, "[cartan].C rows must be arrays");
        C.push_back(int_list(*r, "[cartan].C"));
    }
    check_cartan_axioms(C);
    IVec D;
    auto dnode = (*cart)["D"];
    if (!dnode || (dnode.is_string() && *dnode.value<std::string>() == "minimal")) {
        D = minimal_symmetrizer(C);
    } else if (auto* da = dnode.as_array()) {
        D = int_list(*da, "[cartan].D");
    } else {
        throw Error(ErrorKind::ParseError, "[cartan].D must be a list or \"minimal\"");
    }
    std::set<std::pair<int, int>> omega;
    auto onode = (*cart)["Omega"];
    if (!onode || (onode.is_string() && *onode.value<std::string>() == "default")) {
        omega = default_orientation(C);
    } else if (auto* oa = onode.as_array()) {
        for (const auto& p : *oa) {
            auto* pa = p.as_array();
            if (!pa || pa->size() != 2) throw Error(ErrorKind::ParseError, "[cartan].Omega entries must be pairs");
            IVec pr = int_list(*pa, "[cartan].Omega");
            omega.insert({static_cast<int>(pr[0]) - 1, static_cast<int>(pr[1]) - 1});
        }
    } else {
        throw Error(ErrorKind::ParseError, "[cartan].Omega must be a list of pairs or \"default\"");
    }
    return validate_datum(C, D, omega);
}

CartanDatum load_cartan_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cartan_toml(ss.str());
}

}  // namespace gpa
