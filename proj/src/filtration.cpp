#include "gpa/filtration.hpp"

#include "gpa/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gpa {

template <class T>
Rep<T> subquotient_rep(const Rep<T>& M, const Subquotient<T>& s, std::vector<Matrix<T>>* Wout) {
    const auto& q = M.quiver();
    const int n = M.n();
    std::vector<Matrix<T>> Vb(n), W(n), P(n);
    for (int v = 0; v < n; ++v) {
        Vb[v] = s.V[v].cols() ? column_basis(s.V[v]) : Matrix<T>(M.dims[v], 0);
        Matrix<T> acc = Vb[v];
        std::size_t r = acc.cols();
        Matrix<T> w(M.dims[v], 0);
        for (std::size_t c = 0; c < s.U[v].cols(); ++c) {
            Matrix<T> col = s.U[v].column(c);
            Matrix<T> ext = hstack(acc, col);
            if (rank(ext) > r) {
                acc = ext;
                ++r;
                w = hstack(w, col);
            }
        }
        W[v] = w;
        P[v] = acc;
    }
    Rep<T> N = Rep<T>::zero(M.datum);
    for (int v = 0; v < n; ++v) N.dims[v] = static_cast<int>(W[v].cols());
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const int sv = q.arrows[a].src, tv = q.arrows[a].tgt;
        if (Vb[sv].cols() && !solve(Vb[tv], M.mats[a] * Vb[sv]))
            throw Error(ErrorKind::PreconditionViolated, "lower space is not invariant under " + q.arrows[a].name);
        auto X = solve(P[tv], M.mats[a] * W[sv]);
        if (!X) throw Error(ErrorKind::PreconditionViolated, "upper space is not invariant under " + q.arrows[a].name);
        N.mats[a] = X->block(Vb[tv].cols(), 0, W[tv].cols(), W[sv].cols());
    }
    if (Wout) *Wout = W;
    return N;
}

template <class T>
std::string subquotient_key(const Subquotient<T>& s) {
    std::string k;
    for (std::size_t v = 0; v < s.U.size(); ++v) {
        k += key_of(canonical_basis(s.U[v]));
        k += '|';
        k += key_of(canonical_basis(s.V[v]));
        k += ';';
    }
    return k;
}

namespace {

template <class T>
std::vector<Matrix<T>> zero_spaces(const Rep<T>& M) {
    std::vector<Matrix<T>> z;
    for (int v = 0; v < M.n(); ++v) z.emplace_back(M.dims[v], 0);
    return z;
}

template <class T>
std::vector<Matrix<T>> full_spaces(const Rep<T>& M) {
    std::vector<Matrix<T>> z;
    for (int v = 0; v < M.n(); ++v) z.push_back(Matrix<T>::identity(M.dims[v]));
    return z;
}

template <class T>
std::string spaces_key(const std::vector<Matrix<T>>& U) {
    std::string k;
    for (const auto& u : U) k += key_of(canonical_basis(u)) + ";";
    return k;
}

template <class T>
struct FilterSearch {
    FilterSearch(const Rep<T>& m, const FilterPolicy& p) : M(m), rng(p.seed), retries(p.retries), budget(p.budget) {}
    const Rep<T>& M;
    Rng rng;
    int retries;
    long budget;
    long used = 0;
    std::set<std::string> failed;
    std::vector<std::pair<std::vector<Matrix<T>>, int>> steps;  // (U, vertex of top quotient)

    bool dfs(const std::vector<Matrix<T>>& U) {
        long total = 0;
        for (const auto& u : U) total += static_cast<long>(u.cols());
        if (total == 0) return true;
        std::string key = spaces_key(U);
        if (failed.count(key)) return false;
        std::vector<Matrix<T>> W;
        Rep<T> N = subquotient_rep(M, Subquotient<T>{U, zero_spaces(M)}, &W);
        for (int k = 0; k < N.n(); ++k) {
            if (phi_star(N, k) == 0) continue;
            auto basis = hom_basis(N, make_E<T>(M.datum, k));
            const std::size_t ck = static_cast<std::size_t>(M.datum->c(k));
            std::set<std::string> tried;
            for (int t = 0; t < retries && used < budget; ++t) {
                ++used;
                Matrix<T> fk(ck, N.dims[k]);
                for (const auto& b : basis) {
                    T c;
                    if (t == 0)
                        c = Field<T>::random(rng);
                    else
                        c = T(static_cast<long>(rng() % 3) - 1);
                    fk = fk + b[k].scaled(c);
                }
                if (rank(fk) != ck) continue;
                std::vector<Matrix<T>> next = U;
                next[k] = W[k] * nullspace(fk);
                std::string nk = spaces_key(next);
                if (!tried.insert(nk).second) continue;
                steps.push_back({U, k});
                if (dfs(next)) return true;
                steps.pop_back();
            }
        }
        failed.insert(key);
        return false;
    }
};

}  // namespace

template <class T>
std::optional<EFiltration<T>> is_e_filtered(const Rep<T>& M, const FilterPolicy& policy) {
    FilterSearch<T> s(M, policy);
    if (!s.dfs(full_spaces(M))) return std::nullopt;
    EFiltration<T> f;
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it) {
        f.chain.push_back(it->first);
        f.vertex.push_back(it->second);
    }
    return f;
}

template <class T>
bool check_filtration(const Rep<T>& M, const EFiltration<T>& f) {
    if (f.chain.size() != f.vertex.size()) return false;
    if (f.chain.empty()) return M.is_zero_module();
    std::vector<Matrix<T>> prev = zero_spaces(M);
    try {
        for (std::size_t j = 0; j < f.chain.size(); ++j) {
            Rep<T> q = subquotient_rep(M, Subquotient<T>{f.chain[j], prev});
            for (int v = 0; v < M.n(); ++v)
                if (rank(hstack(prev[v], f.chain[j][v])) != f.chain[j][v].cols()) return false;
            if (!is_E_power(q, f.vertex[j], 1)) return false;
            prev = f.chain[j];
        }
    } catch (const Error&) {
        return false;
    }
    for (int v = 0; v < M.n(); ++v)
        if (rank(prev[v]) != static_cast<std::size_t>(M.dims[v])) return false;
    return true;
}

namespace {

bool all_parts(const std::vector<int>& p, long c) {
    return std::all_of(p.begin(), p.end(), [c](int x) { return x == c; });
}

template <class T>
struct CrystalSearch {
    CrystalSearch(const Rep<T>& m, const FilterPolicy& p) : M(m), policy(p) {}
    const Rep<T>& M;
    FilterPolicy policy;
    std::uint64_t calls = 0;
    std::set<std::string> good;
    CrystalTrace trace;

    bool fail(const std::vector<std::string>& path, const std::string& why) {
        trace.crystal = false;
        trace.reason = why;
        trace.path = path;
        return false;
    }

    bool rec(const Subquotient<T>& s, std::vector<std::string>& path) {
        std::string key = subquotient_key(s);
        if (good.count(key)) return true;
        std::vector<Matrix<T>> W;
        Rep<T> N = subquotient_rep(M, s, &W);
        if (N.is_zero_module()) return true;
        FilterPolicy p = policy;
        p.seed = policy.seed * 1000003ULL + (++calls);
        if (!is_e_filtered(N, p)) return fail(path, "not E-filtered");
        const int n = N.n();
        for (int i = 0; i < n; ++i) {
            const long c = N.datum->c(i);
            if (!all_parts(sub_i(N, i).partition, c))
                return fail(path, "sub_" + std::to_string(i + 1) + " is not locally free");
            if (!all_parts(fac_i(N, i).partition, c))
                return fail(path, "fac_" + std::to_string(i + 1) + " is not locally free");
        }
        for (int i = 0; i < n; ++i) {
            Matrix<T> K = image_space(N, i);
            if (K.cols() < static_cast<std::size_t>(N.dims[i])) {
                Subquotient<T> t{std::vector<Matrix<T>>(n), s.V};
                for (int v = 0; v < n; ++v) {
                    Matrix<T> part = v == i ? W[v] * K : W[v];
                    t.U[v] = hstack(s.V[v], part);
                }
                path.push_back("K_" + std::to_string(i + 1));
                if (!rec(t, path)) return false;
                path.pop_back();
            }
            Matrix<T> S = sub_space(N, i);
            if (S.cols() > 0) {
                Subquotient<T> t{s.U, s.V};
                t.V[i] = hstack(s.V[i], W[i] * S);
                path.push_back("C_" + std::to_string(i + 1));
                if (!rec(t, path)) return false;
                path.pop_back();
            }
        }
        good.insert(key);
        return true;
    }
};

}  // namespace

template <class T>
CrystalTrace is_crystal(const Rep<T>& M, const FilterPolicy& policy) {
    CrystalSearch<T> s(M, policy);
    std::vector<std::string> path;
    s.rec(Subquotient<T>{full_spaces(M), zero_spaces(M)}, path);
    return s.trace;
}

#define GPA_FILTRATION_INST(T)                                                                     \
    template Rep<T> subquotient_rep(const Rep<T>&, const Subquotient<T>&, std::vector<Matrix<T>>*); \
    template std::string subquotient_key(const Subquotient<T>&);                                 \
    template std::optional<EFiltration<T>> is_e_filtered(const Rep<T>&, const FilterPolicy&);     \
    template bool check_filtration(const Rep<T>&, const EFiltration<T>&);                         \
    template CrystalTrace is_crystal(const Rep<T>&, const FilterPolicy&);

GPA_FILTRATION_INST(Fp)
GPA_FILTRATION_INST(Rational)

}  // namespace gpa
