#include "gpa/rep.hpp"

#include <algorithm>

namespace gpa {

template <class T>
void check_shapes(const Rep<T>& M) {
    const auto& q = M.quiver();
    if (static_cast<int>(M.dims.size()) != M.n() || M.mats.size() != q.arrows.size())
        throw Error(ErrorKind::ShapeMismatch, "representation does not match the quiver");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (M.mats[a].rows() != static_cast<std::size_t>(M.dims[ar.tgt]) ||
            M.mats[a].cols() != static_cast<std::size_t>(M.dims[ar.src]))
            throw Error(ErrorKind::ShapeMismatch, "matrix of " + ar.name + " has the wrong shape");
    }
}

template <class T>
Matrix<T> eval_path_expr(const Rep<T>& M, const PathExpr& e) {
    Matrix<T> out(M.dims[e.tgt], M.dims[e.src]);
    for (const auto& t : e.terms) {
        Matrix<T> p = M.mats[t.path.front()];
        for (std::size_t k = 1; k < t.path.size(); ++k) p = p * M.mats[t.path[k]];
        out = out + p.scaled(T(t.coeff));
    }
    return out;
}

template <class T>
std::vector<Violation> check_relations(const Rep<T>& M, const std::vector<PathExpr>& rel) {
    check_shapes(M);
    std::vector<Violation> out;
    for (std::size_t k = 0; k < rel.size(); ++k) {
        Matrix<T> v = eval_path_expr(M, rel[k]);
        for (std::size_t r = 0; r < v.rows(); ++r)
            for (std::size_t c = 0; c < v.cols(); ++c)
                if (!Field<T>::is_zero(v(r, c))) {
                    Violation w;
                    w.index = static_cast<int>(k);
                    w.relation = rel[k].label + ": " + path_expr_string(rel[k], M.quiver());
                    w.row = r;
                    w.col = c;
                    w.value = Field<T>::str(v(r, c));
                    out.push_back(w);
                    r = v.rows();
                    break;
                }
    }
    return out;
}

template <class T>
std::vector<Violation> check_relations(const Rep<T>& M) {
    return check_relations(M, M.datum->relations);
}

template <class T>
void require_relations(const Rep<T>& M, const std::string& what) {
    auto v = check_relations(M);
    if (!v.empty())
        throw Error(ErrorKind::RelationFailure, what + " violates relation #" + std::to_string(v[0].index) + " (" +
                                                    v[0].relation + ") at entry (" + std::to_string(v[0].row) +
                                                    "," + std::to_string(v[0].col) + ")");
}

template <class T>
std::vector<int> jordan_type(const Rep<T>& M, int i) {
    try {
        return nilpotent_jordan_type(M.mats[M.quiver().eps(i)]);
    } catch (const std::domain_error&) {
        throw Error(ErrorKind::RelationFailure, "loop at vertex " + std::to_string(i + 1) + " is not nilpotent");
    }
}

template <class T>
bool is_locally_free(const Rep<T>& M) {
    for (int i = 0; i < M.n(); ++i) {
        if (M.dims[i] % M.datum->c(i) != 0) return false;
        for (int p : jordan_type(M, i))
            if (p != M.datum->c(i)) return false;
    }
    return true;
}

template <class T>
IVec rank_vector(const Rep<T>& M) {
    if (!is_locally_free(M)) throw Error(ErrorKind::NotLocallyFree, "module is not locally free");
    IVec r(M.n());
    for (int i = 0; i < M.n(); ++i) r[i] = M.dims[i] / M.datum->c(i);
    return r;
}

template <class T>
SubWitness<T> make_witness(const Rep<T>& M, const std::vector<Matrix<T>>& U) {
    const auto& q = M.quiver();
    SubWitness<T> w;
    const int n = M.n();
    std::vector<Matrix<T>> P(n), Pinv(n);
    std::vector<int> k(n);
    for (int v = 0; v < n; ++v) {
        Matrix<T> b = U[v].cols() ? column_basis(U[v]) : Matrix<T>(M.dims[v], 0);
        w.basis.push_back(b);
        w.complement.push_back(complement_basis(b, M.dims[v]));
        k[v] = static_cast<int>(b.cols());
        P[v] = hstack(b, w.complement[v]);
        Pinv[v] = *inverse(P[v]);
    }
    w.sub = Rep<T>::zero(M.datum);
    w.quot = Rep<T>::zero(M.datum);
    for (int v = 0; v < n; ++v) {
        w.sub.dims[v] = k[v];
        w.quot.dims[v] = M.dims[v] - k[v];
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int s = q.arrows[a].src, t = q.arrows[a].tgt;
        Matrix<T> X = Pinv[t] * M.mats[a] * P[s];
        Matrix<T> low = X.block(k[t], 0, M.dims[t] - k[t], k[s]);
        if (!low.is_zero())
            throw Error(ErrorKind::PreconditionViolated, "subspace is not invariant under " + q.arrows[a].name);
        w.sub.mats[a] = X.block(0, 0, k[t], k[s]);
        w.quot.mats[a] = X.block(k[t], k[s], M.dims[t] - k[t], M.dims[s] - k[s]);
    }
    return w;
}

template <class T>
Matrix<T> sub_space(const Rep<T>& M, int i) {
    const auto& q = M.quiver();
    const std::size_t d = M.dims[i];
    Matrix<T> eps = M.mats[q.eps(i)];
    std::vector<Matrix<T>> epow{Matrix<T>::identity(d)};
    for (long k = 1; k < M.datum->c(i); ++k) epow.push_back(epow.back() * eps);
    Matrix<T> stack(0, d);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (ar.loop || ar.src != i) continue;
        for (const auto& e : epow) stack = vstack(stack, M.mats[a] * e);
    }
    if (stack.rows() == 0) return Matrix<T>::identity(d);
    return nullspace(stack);
}

template <class T>
Matrix<T> image_space(const Rep<T>& M, int i) {
    const auto& q = M.quiver();
    const std::size_t d = M.dims[i];
    Matrix<T> eps = M.mats[q.eps(i)];
    Matrix<T> gens(d, 0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (ar.loop || ar.tgt != i) continue;
        Matrix<T> im = M.mats[a];
        for (long k = 0; k < M.datum->c(i); ++k) {
            gens = hstack(gens, im);
            im = eps * im;
        }
    }
    if (gens.cols() == 0) return gens;
    return column_basis(gens);
}

namespace {

template <class T>
std::vector<Matrix<T>> one_vertex(const Rep<T>& M, int i, const Matrix<T>& Ui, bool full_elsewhere) {
    std::vector<Matrix<T>> U;
    for (int v = 0; v < M.n(); ++v) {
        if (v == i)
            U.push_back(Ui);
        else if (full_elsewhere)
            U.push_back(Matrix<T>::identity(M.dims[v]));
        else
            U.push_back(Matrix<T>(M.dims[v], 0));
    }
    return U;
}

// Jordan type of eps_i restricted to U (columns, eps-stable).
template <class T>
std::vector<int> restricted_type(const Rep<T>& M, int i, const Matrix<T>& U) {
    if (U.cols() == 0) return {};
    Matrix<T> X = *solve(U, M.mats[M.quiver().eps(i)] * U);
    return nilpotent_jordan_type(X);
}

// Jordan type of eps_i on M_i / K.
template <class T>
std::vector<int> quotient_type(const Rep<T>& M, int i, const Matrix<T>& K) {
    const std::size_t d = M.dims[i];
    if (K.cols() == d) return {};
    Matrix<T> C = complement_basis(K, d);
    Matrix<T> P = hstack(K, C);
    Matrix<T> X = *inverse(P) * M.mats[M.quiver().eps(i)] * C;
    return nilpotent_jordan_type(X.block(K.cols(), 0, C.cols(), C.cols()));
}

int count_parts(const std::vector<int>& p, long c) {
    return static_cast<int>(std::count(p.begin(), p.end(), static_cast<int>(c)));
}

}  // namespace

template <class T>
SubWitness<T> sub_i(const Rep<T>& M, int i) {
    auto w = make_witness(M, one_vertex(M, i, sub_space(M, i), false));
    w.partition = jordan_type(w.sub, i);
    return w;
}

template <class T>
SubWitness<T> fac_i(const Rep<T>& M, int i) {
    auto w = make_witness(M, one_vertex(M, i, image_space(M, i), true));
    w.partition = jordan_type(w.quot, i);
    return w;
}

template <class T>
int phi(const Rep<T>& M, int i) {
    return count_parts(restricted_type(M, i, sub_space(M, i)), M.datum->c(i));
}

template <class T>
int phi_star(const Rep<T>& M, int i) {
    return count_parts(quotient_type(M, i, image_space(M, i)), M.datum->c(i));
}

template <class T>
long sub_dim(const Rep<T>& M, int i) {
    return static_cast<long>(sub_space(M, i).cols());
}

template <class T>
long fac_dim(const Rep<T>& M, int i) {
    return M.dims[i] - static_cast<long>(image_space(M, i).cols());
}

template <class T>
Matrix<T> hom_system(const Rep<T>& M, const Rep<T>& N) {
    const auto& q = M.quiver();
    const int n = M.n();
    std::vector<std::size_t> off(n + 1, 0);
    for (int v = 0; v < n; ++v) off[v + 1] = off[v] + static_cast<std::size_t>(N.dims[v]) * M.dims[v];
    std::size_t rows = 0;
    for (const auto& ar : q.arrows) rows += static_cast<std::size_t>(N.dims[ar.tgt]) * M.dims[ar.src];
    Matrix<T> S(rows, off[n]);
    std::size_t row = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const int s = q.arrows[a].src, t = q.arrows[a].tgt;
        const auto& Ma = M.mats[a];
        const auto& Na = N.mats[a];
        for (int r = 0; r < N.dims[t]; ++r)
            for (int c = 0; c < M.dims[s]; ++c, ++row) {
                for (int k = 0; k < M.dims[t]; ++k)
                    if (!Field<T>::is_zero(Ma(k, c))) S(row, off[t] + r * M.dims[t] + k) += Ma(k, c);
                for (int k = 0; k < N.dims[s]; ++k)
                    if (!Field<T>::is_zero(Na(r, k))) S(row, off[s] + k * M.dims[s] + c) -= Na(r, k);
            }
    }
    return S;
}

template <class T>
std::vector<HomElem<T>> hom_basis(const Rep<T>& M, const Rep<T>& N) {
    const int n = M.n();
    Matrix<T> ns = nullspace(hom_system(M, N));
    std::vector<HomElem<T>> out;
    for (std::size_t k = 0; k < ns.cols(); ++k) {
        HomElem<T> f;
        std::size_t idx = 0;
        for (int v = 0; v < n; ++v) {
            Matrix<T> fv(N.dims[v], M.dims[v]);
            for (int r = 0; r < N.dims[v]; ++r)
                for (int c = 0; c < M.dims[v]; ++c) fv(r, c) = ns(idx++, k);
            f.push_back(fv);
        }
        out.push_back(f);
    }
    return out;
}

template <class T>
long hom_dim(const Rep<T>& M, const Rep<T>& N) {
    Matrix<T> S = hom_system(M, N);
    return static_cast<long>(S.cols() - rank(S));
}

template <class T>
Matrix<T> extension_cocycles(const Rep<T>& A, const Rep<T>& B) {
    const auto& q = A.quiver();
    const std::size_t na = q.arrows.size();
    std::vector<std::size_t> off(na + 1, 0);
    for (std::size_t a = 0; a < na; ++a)
        off[a + 1] = off[a] + static_cast<std::size_t>(A.dims[q.arrows[a].tgt]) * B.dims[q.arrows[a].src];
    const auto& rel = A.datum->relations;
    std::size_t rows = 0;
    for (const auto& e : rel) rows += static_cast<std::size_t>(A.dims[e.tgt]) * B.dims[e.src];
    Matrix<T> S(rows, off[na]);
    std::size_t base = 0;
    for (const auto& e : rel) {
        const int R = A.dims[e.tgt], Cc = B.dims[e.src];
        for (const auto& term : e.terms) {
            const std::size_t k = term.path.size();
            // pre[l] = A(a_0)...A(a_{l-1}); suf[l] = B(a_{l+1})...B(a_{k-1})
            std::vector<Matrix<T>> pre(k), suf(k);
            pre[0] = Matrix<T>::identity(R);
            for (std::size_t l = 1; l < k; ++l) pre[l] = pre[l - 1] * A.mats[term.path[l - 1]];
            suf[k - 1] = Matrix<T>::identity(Cc);
            for (std::size_t l = k - 1; l-- > 0;) suf[l] = B.mats[term.path[l + 1]] * suf[l + 1];
            const T coeff(term.coeff);
            for (std::size_t l = 0; l < k; ++l) {
                const int a = term.path[l];
                const int zr = A.dims[q.arrows[a].tgt], zc = B.dims[q.arrows[a].src];
                const auto& L = pre[l];
                const auto& Rm = suf[l];
                for (int p = 0; p < zr; ++p)
                    for (int r = 0; r < R; ++r) {
                        if (Field<T>::is_zero(L(r, p))) continue;
                        T lp = coeff * L(r, p);
                        for (int qq = 0; qq < zc; ++qq)
                            for (int c = 0; c < Cc; ++c) {
                                if (Field<T>::is_zero(Rm(qq, c))) continue;
                                S(base + r * Cc + c, off[a] + p * zc + qq) += lp * Rm(qq, c);
                            }
                    }
            }
        }
        base += static_cast<std::size_t>(R) * Cc;
    }
    return nullspace(S);
}

template <class T>
Rep<T> extension_from_cocycle(const Rep<T>& A, const Rep<T>& B, const Matrix<T>& z) {
    const auto& q = A.quiver();
    Rep<T> X = Rep<T>::zero(A.datum);
    for (int v = 0; v < A.n(); ++v) X.dims[v] = A.dims[v] + B.dims[v];
    std::size_t idx = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const int s = q.arrows[a].src, t = q.arrows[a].tgt;
        Matrix<T> m(X.dims[t], X.dims[s]);
        m.set_block(0, 0, A.mats[a]);
        m.set_block(A.dims[t], A.dims[s], B.mats[a]);
        for (int p = 0; p < A.dims[t]; ++p)
            for (int c = 0; c < B.dims[s]; ++c) m(p, A.dims[s] + c) = z(idx++, 0);
        X.mats[a] = m;
    }
    return X;
}

template <class T>
long ext1_dim_direct(const Rep<T>& M, const Rep<T>& N) {
    long cocycles = static_cast<long>(extension_cocycles(N, M).cols());
    long all = 0;
    for (int v = 0; v < M.n(); ++v) all += static_cast<long>(M.dims[v]) * N.dims[v];
    return cocycles - (all - hom_dim(M, N));
}

template <class T>
long ext1_dim_lf(const Rep<T>& M, const Rep<T>& N) {
    IVec rm = rank_vector(M), rn = rank_vector(N);
    return hom_dim(M, N) + hom_dim(N, M) - M.datum->cartan.bil_sym(rm, rn);
}

template <class T>
long ext1_to_E(const Rep<T>& M, int i) {
    if (!is_locally_free(M)) throw Error(ErrorKind::NotLocallyFree, "Ext to E_i needs a locally free module");
    const auto& cd = M.datum->cartan;
    const auto& q = M.quiver();
    const int di = M.dims[i];
    Matrix<T> eps = M.mats[q.eps(i)];
    Matrix<T> in(di, 0), out(0, di);
    for (int j = 0; j < cd.n; ++j) {
        if (!cd.adjacent(i, j)) continue;
        for (int g = 1; g <= cd.g[i][j]; ++g) {
            const auto& aij = M.mats[q.alpha(i, j, g)];
            const auto& aji = M.mats[q.alpha(j, i, g)];
            const long f = cd.f[j][i];
            for (long a = 0; a < f; ++a) {
                in = hstack(in, (eps.pow(static_cast<unsigned>(a)) * aij).scaled(T(cd.sgn(i, j))));
                out = vstack(out, aji * eps.pow(static_cast<unsigned>(f - 1 - a)));
            }
        }
    }
    long ker_in = static_cast<long>(in.cols()) - static_cast<long>(rank(in));
    return ker_in - static_cast<long>(rank(out));
}

template <class T>
Rep<T> transpose_dual(const Rep<T>& M) {
    const auto& q = M.quiver();
    Rep<T> S = Rep<T>::zero(M.datum);
    S.dims = M.dims;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (ar.loop)
            S.mats[a] = M.mats[a].transpose();
        else
            S.mats[a] = M.mats[q.alpha(ar.j, ar.i, ar.g)].transpose();
    }
    require_relations(S, "transpose dual");
    return S;
}

template <class T>
long orbit_dim(const Rep<T>& M) {
    long s = 0;
    for (int d : M.dims) s += static_cast<long>(d) * d;
    return s - hom_dim(M, M);
}

template <class T>
Rep<T> direct_sum(const std::vector<Rep<T>>& parts) {
    if (parts.empty()) throw Error(ErrorKind::PreconditionViolated, "direct sum of an empty list");
    const auto& q = parts[0].quiver();
    Rep<T> X = Rep<T>::zero(parts[0].datum);
    for (const auto& p : parts)
        for (int v = 0; v < X.n(); ++v) X.dims[v] += p.dims[v];
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const int s = q.arrows[a].src, t = q.arrows[a].tgt;
        Matrix<T> m(X.dims[t], X.dims[s]);
        int r0 = 0, c0 = 0;
        for (const auto& p : parts) {
            m.set_block(r0, c0, p.mats[a]);
            r0 += p.dims[t];
            c0 += p.dims[s];
        }
        X.mats[a] = m;
    }
    return X;
}

template <class T>
Rep<T> base_change(const Rep<T>& M, const std::vector<Matrix<T>>& P) {
    const auto& q = M.quiver();
    std::vector<Matrix<T>> Pinv;
    for (const auto& p : P) {
        auto inv = inverse(p);
        if (!inv) throw Error(ErrorKind::PreconditionViolated, "base change is not invertible");
        Pinv.push_back(*inv);
    }
    Rep<T> X = M;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        X.mats[a] = Pinv[q.arrows[a].tgt] * M.mats[a] * P[q.arrows[a].src];
    return X;
}

template <class T>
bool is_E_power(const Rep<T>& M, int i, int p) {
    for (int v = 0; v < M.n(); ++v)
        if (v != i && M.dims[v] != 0) return false;
    const long c = M.datum->c(i);
    if (M.dims[i] != p * c) return false;
    auto jt = jordan_type(M, i);
    return static_cast<int>(jt.size()) == p &&
           std::all_of(jt.begin(), jt.end(), [c](int x) { return x == c; });
}

namespace {

template <class T>
HomElem<T> random_combination(const std::vector<HomElem<T>>& basis, const Rep<T>& M, const Rep<T>& N, Rng& rng) {
    HomElem<T> f;
    for (int v = 0; v < M.n(); ++v) f.emplace_back(N.dims[v], M.dims[v]);
    for (const auto& b : basis) {
        T c = Field<T>::random(rng);
        for (int v = 0; v < M.n(); ++v) f[v] = f[v] + b[v].scaled(c);
    }
    return f;
}

}  // namespace

template <class T>
bool is_indecomposable(const Rep<T>& M, Rng& rng, int draws) {
    if (M.is_zero_module()) return false;
    const long N = M.total_dim();
    if constexpr (!Field<T>::exact_char0) {
        std::uint64_t p = Fp::modulus();
        if (p <= static_cast<std::uint64_t>(4 * N + 64) || static_cast<std::uint64_t>(N) % p == 0)
            throw Error(ErrorKind::FieldTooSmall, "prime too small for the endomorphism test");
    }
    auto basis = hom_basis(M, M);
    for (int d = 0; d < draws; ++d) {
        HomElem<T> f = random_combination(basis, M, M, rng);
        T tr(0);
        for (int v = 0; v < M.n(); ++v)
            for (int k = 0; k < M.dims[v]; ++k) tr += f[v](k, k);
        T lambda = tr / T(N);
        for (int v = 0; v < M.n(); ++v) {
            Matrix<T> g = f[v] - Matrix<T>::identity(M.dims[v]).scaled(lambda);
            if (!is_nilpotent(g)) return false;
        }
    }
    return true;
}

template <class T>
bool is_isomorphic(const Rep<T>& M, const Rep<T>& N, Rng& rng, int draws) {
    if (M.dims != N.dims) return false;
    auto basis = hom_basis(M, N);
    if (hom_dim(N, M) != static_cast<long>(basis.size())) return false;
    for (int d = 0; d < draws; ++d) {
        HomElem<T> f = random_combination(basis, M, N, rng);
        bool ok = true;
        for (int v = 0; v < M.n() && ok; ++v) ok = rank(f[v]) == static_cast<std::size_t>(M.dims[v]);
        if (ok) return true;
    }
    return false;
}

template <class T>
Rep<T> random_invertible_base_change(const Rep<T>& M, Rng& rng) {
    std::vector<Matrix<T>> P;
    for (int v = 0; v < M.n(); ++v) {
        for (;;) {
            Matrix<T> m(M.dims[v], M.dims[v]);
            for (int r = 0; r < M.dims[v]; ++r)
                for (int c = 0; c < M.dims[v]; ++c) m(r, c) = Field<T>::random(rng);
            if (rank(m) == static_cast<std::size_t>(M.dims[v])) {
                P.push_back(m);
                break;
            }
        }
    }
    return base_change(M, P);
}

Rep<Fp> reduce_mod(const Rep<Rational>& M) {
    Rep<Fp> X = Rep<Fp>::zero(M.datum);
    X.dims = M.dims;
    for (std::size_t a = 0; a < M.mats.size(); ++a) {
        const auto& m = M.mats[a];
        Matrix<Fp> r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Field<Fp>::from_rational(m(i, j));
        X.mats[a] = r;
    }
    return X;
}

Rep<Rational> lift_integral(const Rep<Fp>& M) {
    Rep<Rational> X = Rep<Rational>::zero(M.datum);
    X.dims = M.dims;
    const std::uint64_t p = Fp::modulus();
    for (std::size_t a = 0; a < M.mats.size(); ++a) {
        const auto& m = M.mats[a];
        Matrix<Rational> r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::uint64_t v = m(i, j).value();
                long long s = v > p / 2 ? static_cast<long long>(v) - static_cast<long long>(p)
                                        : static_cast<long long>(v);
                r(i, j) = Rational(static_cast<long>(s));
            }
        X.mats[a] = r;
    }
    return X;
}

#define GPA_REP_INST(T)                                                                      \
    template void check_shapes(const Rep<T>&);                                              \
    template Matrix<T> eval_path_expr(const Rep<T>&, const PathExpr&);                      \
    template std::vector<Violation> check_relations(const Rep<T>&);                         \
    template std::vector<Violation> check_relations(const Rep<T>&, const std::vector<PathExpr>&); \
    template void require_relations(const Rep<T>&, const std::string&);                     \
    template std::vector<int> jordan_type(const Rep<T>&, int);                              \
    template bool is_locally_free(const Rep<T>&);                                           \
    template IVec rank_vector(const Rep<T>&);                                               \
    template SubWitness<T> make_witness(const Rep<T>&, const std::vector<Matrix<T>>&);      \
    template Matrix<T> sub_space(const Rep<T>&, int);                                       \
    template Matrix<T> image_space(const Rep<T>&, int);                                     \
    template SubWitness<T> sub_i(const Rep<T>&, int);                                       \
    template SubWitness<T> fac_i(const Rep<T>&, int);                                       \
    template int phi(const Rep<T>&, int);                                                   \
    template int phi_star(const Rep<T>&, int);                                              \
    template long sub_dim(const Rep<T>&, int);                                              \
    template long fac_dim(const Rep<T>&, int);                                              \
    template Matrix<T> hom_system(const Rep<T>&, const Rep<T>&);                            \
    template std::vector<HomElem<T>> hom_basis(const Rep<T>&, const Rep<T>&);               \
    template long hom_dim(const Rep<T>&, const Rep<T>&);                                    \
    template Matrix<T> extension_cocycles(const Rep<T>&, const Rep<T>&);                    \
    template Rep<T> extension_from_cocycle(const Rep<T>&, const Rep<T>&, const Matrix<T>&); \
    template long ext1_dim_direct(const Rep<T>&, const Rep<T>&);                            \
    template long ext1_dim_lf(const Rep<T>&, const Rep<T>&);                                \
    template long ext1_to_E(const Rep<T>&, int);                                            \
    template Rep<T> transpose_dual(const Rep<T>&);                                          \
    template long orbit_dim(const Rep<T>&);                                                 \
    template Rep<T> direct_sum(const std::vector<Rep<T>>&);                                 \
    template Rep<T> base_change(const Rep<T>&, const std::vector<Matrix<T>>&);              \
    template bool is_E_power(const Rep<T>&, int, int);                                      \
    template bool is_indecomposable(const Rep<T>&, Rng&, int);                              \
    template bool is_isomorphic(const Rep<T>&, const Rep<T>&, Rng&, int);                   \
    template Rep<T> random_invertible_base_change(const Rep<T>&, Rng&);

GPA_REP_INST(Fp)
GPA_REP_INST(Rational)

}  // namespace gpa
