#pragma once

#include "gpa/rep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gpa {

// A subquotient U/V of a fixed ambient module, V subset U, given by
// per-vertex column bases in ambient coordinates.
template <class T>
struct Subquotient {
    std::vector<Matrix<T>> U, V;
};

// Representation on U/V, in coordinates of a complement W of V inside U.
template <class T>
Rep<T> subquotient_rep(const Rep<T>& M, const Subquotient<T>& s, std::vector<Matrix<T>>* W = nullptr);
template <class T>
std::string subquotient_key(const Subquotient<T>& s);

// Chain 0 = U_0 < U_1 < ... < U_k = M with U_j/U_{j-1} = E_{vertex[j-1]}.
template <class T>
struct EFiltration {
    std::vector<std::vector<Matrix<T>>> chain;  // ambient bases of U_1..U_k
    std::vector<int> vertex;
};

struct FilterPolicy {
    std::uint64_t seed = 0;
    int retries = 64;      // surjections tried per vertex and branch
    long budget = 20000;   // total surjections tried
};

// Randomized search from the top; nullopt means no filtration was found.
template <class T>
std::optional<EFiltration<T>> is_e_filtered(const Rep<T>& M, const FilterPolicy& policy = {});
// Re-checks invariance of every step and that each quotient is E_i.
template <class T>
bool check_filtration(const Rep<T>& M, const EFiltration<T>& f);

struct CrystalTrace {
    bool crystal = true;
    std::string reason;            // first failure
    std::vector<std::string> path; // K_i / C_i steps leading to it
};

template <class T>
CrystalTrace is_crystal(const Rep<T>& M, const FilterPolicy& policy = {});

#define GPA_FILTRATION_EXTERN(T)                                                                          \
    extern template Rep<T> subquotient_rep(const Rep<T>&, const Subquotient<T>&, std::vector<Matrix<T>>*); \
    extern template std::string subquotient_key(const Subquotient<T>&);                                 \
    extern template std::optional<EFiltration<T>> is_e_filtered(const Rep<T>&, const FilterPolicy&);     \
    extern template bool check_filtration(const Rep<T>&, const EFiltration<T>&);                         \
    extern template CrystalTrace is_crystal(const Rep<T>&, const FilterPolicy&);

GPA_FILTRATION_EXTERN(Fp)
GPA_FILTRATION_EXTERN(Rational)

}  // namespace gpa
