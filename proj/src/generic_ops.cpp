#include "gpa/generic_ops.hpp"

#include "gpa/catalog.hpp"

#include <functional>
#include <sstream>

namespace gpa {

Rng split_rng(std::uint64_t seed, std::uint64_t counter) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
    return Rng(seq);
}

Rng SeedStream::next() { return split_rng(seed_, counter_++); }

std::string Profile::str() const {
    std::ostringstream os;
    os << "wt=" << format_vec(wt) << " phi=" << format_vec(phi) << " phi*=" << format_vec(phi_star)
       << " ext=" << format_vec(ext);
    if (end_dim >= 0) os << " end=" << end_dim;
    return os.str();
}

template <class T>
Profile profile(const Rep<T>& M, bool with_end) {
    Profile p;
    p.wt = rank_vector(M);
    for (int i = 0; i < M.n(); ++i) {
        p.phi.push_back(phi(M, i));
        p.phi_star.push_back(phi_star(M, i));
        p.ext.push_back(ext1_to_E(M, i));
    }
    if (with_end) p.end_dim = hom_dim(M, M);
    return p;
}

template <class T>
long eps_val(const Rep<T>& M, int i) {
    return phi(M, i) - M.datum->cartan.pair_alpha(rank_vector(M), i);
}

template <class T>
long eps_star_val(const Rep<T>& M, int i) {
    return phi_star(M, i) - M.datum->cartan.pair_alpha(rank_vector(M), i);
}

template <class T>
std::vector<ExtMismatch> ext_formula_check(const Rep<T>& M) {
    std::vector<ExtMismatch> out;
    IVec wt = rank_vector(M);
    for (int i = 0; i < M.n(); ++i) {
        long expected = M.datum->c(i) * (phi(M, i) + phi_star(M, i) - M.datum->cartan.pair_alpha(wt, i));
        long actual = ext1_to_E(M, i);
        if (actual != expected) out.push_back({i, actual, expected});
    }
    return out;
}

namespace {

void check_policy(const GenericContext& ctx) {
    if (ctx.policy.samples < 2)
        throw Error(ErrorKind::PreconditionViolated, "genericity policy needs at least two samples");
    if (ctx.policy.retries < 1) throw Error(ErrorKind::PreconditionViolated, "genericity policy needs retries >= 1");
}

IVec shifted(IVec r, int i, long by) {
    r[i] += by;
    return r;
}

// Draws `samples` verified outputs and requires equal profiles.
template <class T>
Rep<T> sample_verified(GenericContext& ctx, const std::string& what,
                       const std::function<std::optional<Rep<T>>(Rng&)>& draw) {
    check_policy(ctx);
    std::vector<Rep<T>> got;
    Profile first;
    for (int s = 0; s < ctx.policy.samples; ++s) {
        bool ok = false;
        for (int t = 0; t < ctx.policy.retries && !ok; ++t) {
            Rng rng = ctx.seeds.next();
            auto X = draw(rng);
            if (!X) continue;
            Profile p = profile(*X);
            if (got.empty()) {
                first = p;
            } else if (p != first) {
                throw Error(ErrorKind::GenericityExhausted,
                            what + ": independent draws disagree (" + first.str() + " vs " + p.str() + ")");
            }
            got.push_back(std::move(*X));
            ok = true;
        }
        if (!ok) throw Error(ErrorKind::GenericityExhausted, what + ": no generic draw after retries");
    }
    return got.front();
}

template <class T>
bool good_output(const Rep<T>& X, const IVec& wt, int i, bool star, long target) {
    if (!is_locally_free(X) || rank_vector(X) != wt) return false;
    if ((star ? phi_star(X, i) : phi(X, i)) != target) return false;
    return ext_formula_check(X).empty();
}

template <class T>
Matrix<T> random_column(const Matrix<T>& basis, Rng& rng) {
    Matrix<T> z(basis.rows(), 1);
    for (std::size_t k = 0; k < basis.cols(); ++k) {
        T c = Field<T>::random(rng);
        for (std::size_t r = 0; r < basis.rows(); ++r) z(r, 0) += c * basis(r, k);
    }
    return z;
}

template <class T>
Matrix<T> random_map_at(const std::vector<HomElem<T>>& basis, int v, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix<T> f(rows, cols);
    for (const auto& b : basis) f = f + b[v].scaled(Field<T>::random(rng));
    return f;
}

}  // namespace

template <class T>
Rep<T> e_star(const Rep<T>& M, int i, GenericContext& ctx) {
    Rep<T> E = make_E<T>(M.datum, i);
    Matrix<T> Z = extension_cocycles(M, E);
    IVec wt = shifted(rank_vector(M), i, 1);
    long target = phi_star(M, i) + 1;
    return sample_verified<T>(ctx, "e*_" + std::to_string(i + 1), [&](Rng& rng) -> std::optional<Rep<T>> {
        Rep<T> X = extension_from_cocycle(M, E, random_column(Z, rng));
        if (!good_output(X, wt, i, true, target)) return std::nullopt;
        return X;
    });
}

template <class T>
std::optional<Rep<T>> f_star(const Rep<T>& M, int i, GenericContext& ctx) {
    long p = phi_star(M, i);
    if (p == 0) return std::nullopt;
    auto basis = hom_basis(M, make_E<T>(M.datum, i));
    const std::size_t c = static_cast<std::size_t>(M.datum->c(i));
    IVec wt = shifted(rank_vector(M), i, -1);
    return sample_verified<T>(ctx, "f*_" + std::to_string(i + 1), [&](Rng& rng) -> std::optional<Rep<T>> {
        Matrix<T> f = random_map_at(basis, i, c, M.dims[i], rng);
        if (rank(f) != c) return std::nullopt;
        std::vector<Matrix<T>> U;
        for (int v = 0; v < M.n(); ++v) U.push_back(v == i ? nullspace(f) : Matrix<T>::identity(M.dims[v]));
        Rep<T> X = make_witness(M, U).sub;
        if (!good_output(X, wt, i, true, p - 1)) return std::nullopt;
        return X;
    });
}

template <class T>
Rep<T> e_plain(const Rep<T>& M, int i, GenericContext& ctx) {
    return transpose_dual(e_star(transpose_dual(M), i, ctx));
}

template <class T>
std::optional<Rep<T>> f_plain(const Rep<T>& M, int i, GenericContext& ctx) {
    auto X = f_star(transpose_dual(M), i, ctx);
    if (!X) return std::nullopt;
    return transpose_dual(*X);
}

template <class T>
Rep<T> e_plain_direct(const Rep<T>& M, int i, GenericContext& ctx) {
    Rep<T> E = make_E<T>(M.datum, i);
    Matrix<T> Z = extension_cocycles(E, M);
    IVec wt = shifted(rank_vector(M), i, 1);
    long target = phi(M, i) + 1;
    return sample_verified<T>(ctx, "e_" + std::to_string(i + 1), [&](Rng& rng) -> std::optional<Rep<T>> {
        Rep<T> X = extension_from_cocycle(E, M, random_column(Z, rng));
        if (!good_output(X, wt, i, false, target)) return std::nullopt;
        return X;
    });
}

template <class T>
std::optional<Rep<T>> f_plain_direct(const Rep<T>& M, int i, GenericContext& ctx) {
    long p = phi(M, i);
    if (p == 0) return std::nullopt;
    auto basis = hom_basis(make_E<T>(M.datum, i), M);
    const std::size_t c = static_cast<std::size_t>(M.datum->c(i));
    IVec wt = shifted(rank_vector(M), i, -1);
    return sample_verified<T>(ctx, "f_" + std::to_string(i + 1), [&](Rng& rng) -> std::optional<Rep<T>> {
        Matrix<T> g = random_map_at(basis, i, M.dims[i], c, rng);
        if (rank(g) != c) return std::nullopt;
        std::vector<Matrix<T>> U;
        for (int v = 0; v < M.n(); ++v) U.push_back(v == i ? g : Matrix<T>(M.dims[v], 0));
        Rep<T> X = make_witness(M, U).quot;
        if (!good_output(X, wt, i, false, p - 1)) return std::nullopt;
        return X;
    });
}

#define GPA_GENERIC_INST(T)                                                            \
    template Profile profile(const Rep<T>&, bool);                                     \
    template long eps_val(const Rep<T>&, int);                                         \
    template long eps_star_val(const Rep<T>&, int);                                    \
    template std::vector<ExtMismatch> ext_formula_check(const Rep<T>&);                \
    template Rep<T> e_star(const Rep<T>&, int, GenericContext&);                       \
    template std::optional<Rep<T>> f_star(const Rep<T>&, int, GenericContext&);        \
    template Rep<T> e_plain(const Rep<T>&, int, GenericContext&);                      \
    template std::optional<Rep<T>> f_plain(const Rep<T>&, int, GenericContext&);       \
    template Rep<T> e_plain_direct(const Rep<T>&, int, GenericContext&);               \
    template std::optional<Rep<T>> f_plain_direct(const Rep<T>&, int, GenericContext&);

GPA_GENERIC_INST(Fp)
GPA_GENERIC_INST(Rational)

}  // namespace gpa
