#pragma once

#include "gpa/field.hpp"
#include "gpa/matrix.hpp"
#include "gpa/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpa {

// A representation of the doubled quiver: one matrix per arrow.
template <class T>
struct Rep {
    DatumPtr datum;
    std::vector<int> dims;
    std::vector<Matrix<T>> mats;

    static Rep zero(DatumPtr d) {
        Rep r;
        r.datum = d;
        r.dims.assign(d->n(), 0);
        r.mats.assign(d->quiver.arrows.size(), Matrix<T>(0, 0));
        return r;
    }
    int n() const { return datum->n(); }
    const Quiver& quiver() const { return datum->quiver; }
    long total_dim() const {
        long s = 0;
        for (int x : dims) s += x;
        return s;
    }
    bool is_zero_module() const { return total_dim() == 0; }
    IVec dim_vector() const { return IVec(dims.begin(), dims.end()); }
    const Matrix<T>& operator[](int arrow) const { return mats[arrow]; }
};

struct Violation {
    int index = 0;
    std::string relation;
    std::size_t row = 0, col = 0;
    std::string value;
};

template <class T> void check_shapes(const Rep<T>& M);
template <class T> Matrix<T> eval_path_expr(const Rep<T>& M, const PathExpr& e);
template <class T> std::vector<Violation> check_relations(const Rep<T>& M);
template <class T> std::vector<Violation> check_relations(const Rep<T>& M, const std::vector<PathExpr>& rel);
// Throws RelationFailure naming the first violated relation.
template <class T> void require_relations(const Rep<T>& M, const std::string& what = "module");

template <class T> std::vector<int> jordan_type(const Rep<T>& M, int i);
template <class T> bool is_locally_free(const Rep<T>& M);
template <class T> IVec rank_vector(const Rep<T>& M);  // NotLocallyFree unless locally free

// An invariant subspace U of M with its sub- and quotient representation.
// Quotient coordinates refer to `complement` (M_v = U_v + C_v).
template <class T>
struct SubWitness {
    std::vector<Matrix<T>> basis;
    std::vector<Matrix<T>> complement;
    Rep<T> sub, quot;
    std::vector<int> partition;  // Jordan type of the relevant one-vertex piece
};

template <class T> SubWitness<T> make_witness(const Rep<T>& M, const std::vector<Matrix<T>>& U);
template <class T> Matrix<T> sub_space(const Rep<T>& M, int i);    // sub_i(M) inside M_i
template <class T> Matrix<T> image_space(const Rep<T>& M, int i);  // K_i(M) inside M_i
// sub_i(M) as a submodule; quotient is C_i(M); partition = Jordan type of sub_i(M).
template <class T> SubWitness<T> sub_i(const Rep<T>& M, int i);
// K_i(M) as a submodule; quotient is fac_i(M); partition = Jordan type of fac_i(M).
template <class T> SubWitness<T> fac_i(const Rep<T>& M, int i);
template <class T> SubWitness<T> K_i(const Rep<T>& M, int i) { return fac_i(M, i); }
template <class T> SubWitness<T> C_i(const Rep<T>& M, int i) { return sub_i(M, i); }

template <class T> int phi(const Rep<T>& M, int i);
template <class T> int phi_star(const Rep<T>& M, int i);
template <class T> long sub_dim(const Rep<T>& M, int i);
template <class T> long fac_dim(const Rep<T>& M, int i);

// Hom(M,N) as tuples (f_v)_v with f_v : M_v -> N_v.
template <class T> using HomElem = std::vector<Matrix<T>>;
template <class T> Matrix<T> hom_system(const Rep<T>& M, const Rep<T>& N);
template <class T> std::vector<HomElem<T>> hom_basis(const Rep<T>& M, const Rep<T>& N);
template <class T> long hom_dim(const Rep<T>& M, const Rep<T>& N);

// Cocycle space for extensions 0 -> A -> X -> B -> 0.  Columns of the result
// are cocycles in the layout of extension_from_cocycle.
template <class T> Matrix<T> extension_cocycles(const Rep<T>& A, const Rep<T>& B);
template <class T> Rep<T> extension_from_cocycle(const Rep<T>& A, const Rep<T>& B, const Matrix<T>& z);

template <class T> long ext1_dim_direct(const Rep<T>& M, const Rep<T>& N);  // Ext^1(M,N)
template <class T> long ext1_dim_lf(const Rep<T>& M, const Rep<T>& N);
template <class T> long ext1_to_E(const Rep<T>& M, int i);

template <class T> Rep<T> transpose_dual(const Rep<T>& M);
template <class T> long orbit_dim(const Rep<T>& M);
template <class T> Rep<T> direct_sum(const std::vector<Rep<T>>& parts);
template <class T> Rep<T> base_change(const Rep<T>& M, const std::vector<Matrix<T>>& P);

// E_i^p test: support only at i and Jordan type (c_i,...,c_i).
template <class T> bool is_E_power(const Rep<T>& M, int i, int p);
// End(M) local, tested on random endomorphisms.
template <class T> bool is_indecomposable(const Rep<T>& M, Rng& rng, int draws = 4);
// Randomized: a random element of Hom(M,N) is invertible.
template <class T> bool is_isomorphic(const Rep<T>& M, const Rep<T>& N, Rng& rng, int draws = 3);

template <class T> Rep<T> random_invertible_base_change(const Rep<T>& M, Rng& rng);

// Entries must be integral or have denominators prime to p; call inside FpModulus(p).
Rep<Fp> reduce_mod(const Rep<Rational>& M);
Rep<Rational> lift_integral(const Rep<Fp>& M);  // symmetric residues

#define GPA_REP_EXTERN(T)                                                                      \
    extern template void check_shapes(const Rep<T>&);                                         \
    extern template Matrix<T> eval_path_expr(const Rep<T>&, const PathExpr&);                 \
    extern template std::vector<Violation> check_relations(const Rep<T>&);                    \
    extern template std::vector<Violation> check_relations(const Rep<T>&,                     \
                                                           const std::vector<PathExpr>&);     \
    extern template void require_relations(const Rep<T>&, const std::string&);                \
    extern template std::vector<int> jordan_type(const Rep<T>&, int);                         \
    extern template bool is_locally_free(const Rep<T>&);                                      \
    extern template IVec rank_vector(const Rep<T>&);                                          \
    extern template SubWitness<T> make_witness(const Rep<T>&, const std::vector<Matrix<T>>&); \
    extern template Matrix<T> sub_space(const Rep<T>&, int);                                  \
    extern template Matrix<T> image_space(const Rep<T>&, int);                                \
    extern template SubWitness<T> sub_i(const Rep<T>&, int);                                  \
    extern template SubWitness<T> fac_i(const Rep<T>&, int);                                  \
    extern template int phi(const Rep<T>&, int);                                              \
    extern template int phi_star(const Rep<T>&, int);                                         \
    extern template long sub_dim(const Rep<T>&, int);                                         \
    extern template long fac_dim(const Rep<T>&, int);                                         \
    extern template Matrix<T> hom_system(const Rep<T>&, const Rep<T>&);                       \
    extern template std::vector<HomElem<T>> hom_basis(const Rep<T>&, const Rep<T>&);          \
    extern template long hom_dim(const Rep<T>&, const Rep<T>&);                               \
    extern template Matrix<T> extension_cocycles(const Rep<T>&, const Rep<T>&);               \
    extern template Rep<T> extension_from_cocycle(const Rep<T>&, const Rep<T>&,               \
                                                  const Matrix<T>&);                          \
    extern template long ext1_dim_direct(const Rep<T>&, const Rep<T>&);                       \
    extern template long ext1_dim_lf(const Rep<T>&, const Rep<T>&);                           \
    extern template long ext1_to_E(const Rep<T>&, int);                                       \
    extern template Rep<T> transpose_dual(const Rep<T>&);                                     \
    extern template long orbit_dim(const Rep<T>&);                                            \
    extern template Rep<T> direct_sum(const std::vector<Rep<T>>&);                            \
    extern template Rep<T> base_change(const Rep<T>&, const std::vector<Matrix<T>>&);         \
    extern template bool is_E_power(const Rep<T>&, int, int);                                 \
    extern template bool is_indecomposable(const Rep<T>&, Rng&, int);                         \
    extern template bool is_isomorphic(const Rep<T>&, const Rep<T>&, Rng&, int);             \
    extern template Rep<T> random_invertible_base_change(const Rep<T>&, Rng&);

GPA_REP_EXTERN(Fp)
GPA_REP_EXTERN(Rational)

}  // namespace gpa
