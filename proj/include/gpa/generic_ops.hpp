#pragma once

#include "gpa/rep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gpa {

struct GenericPolicy {
    std::uint64_t seed = 0;
    int samples = 2;  // independent draws that must agree
    int retries = 8;  // draws per sample before giving up
    std::uint64_t prime = kDefaultPrime;
};

// Deterministic stream of generators: draw k uses the pair (seed, k).
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed = 0) : seed_(seed) {}
    Rng next();
    std::uint64_t counter() const { return counter_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

Rng split_rng(std::uint64_t seed, std::uint64_t counter);

struct GenericContext {
    GenericPolicy policy;
    SeedStream seeds;
    explicit GenericContext(const GenericPolicy& p = {}) : policy(p), seeds(p.seed) {}
};

// Invariants compared between representatives of one component.
struct Profile {
    IVec wt, phi, phi_star, ext;
    long end_dim = -1;  // -1 when not computed
    bool operator==(const Profile& o) const {
        return wt == o.wt && phi == o.phi && phi_star == o.phi_star && ext == o.ext && end_dim == o.end_dim;
    }
    bool operator!=(const Profile& o) const { return !(*this == o); }
    std::string str() const;
};

template <class T> Profile profile(const Rep<T>& M, bool with_end = false);

template <class T> long eps_val(const Rep<T>& M, int i);
template <class T> long eps_star_val(const Rep<T>& M, int i);

struct ExtMismatch {
    int vertex = 0;
    long actual = 0, expected = 0;
};
// Compares Ext^1(M,E_i) with c_i (phi_i + phi*_i - <wt, alpha_i>) for every i.
template <class T> std::vector<ExtMismatch> ext_formula_check(const Rep<T>& M);

// Generic extension 0 -> M -> M' -> E_i -> 0.
template <class T> Rep<T> e_star(const Rep<T>& M, int i, GenericContext& ctx);
// Kernel of a generic surjection M -> E_i; nullopt when phi*_i(M) = 0.
template <class T> std::optional<Rep<T>> f_star(const Rep<T>& M, int i, GenericContext& ctx);
// Sub-side operators through the transpose dual.
template <class T> Rep<T> e_plain(const Rep<T>& M, int i, GenericContext& ctx);
template <class T> std::optional<Rep<T>> f_plain(const Rep<T>& M, int i, GenericContext& ctx);
// Sub-side operators computed directly: extension 0 -> E_i -> M' -> M -> 0, and
// the quotient by the image of a generic injection E_i -> M.
template <class T> Rep<T> e_plain_direct(const Rep<T>& M, int i, GenericContext& ctx);
template <class T> std::optional<Rep<T>> f_plain_direct(const Rep<T>& M, int i, GenericContext& ctx);

#define GPA_GENERIC_EXTERN(T)                                                                 \
    extern template Profile profile(const Rep<T>&, bool);                                     \
    extern template long eps_val(const Rep<T>&, int);                                         \
    extern template long eps_star_val(const Rep<T>&, int);                                    \
    extern template std::vector<ExtMismatch> ext_formula_check(const Rep<T>&);                \
    extern template Rep<T> e_star(const Rep<T>&, int, GenericContext&);                       \
    extern template std::optional<Rep<T>> f_star(const Rep<T>&, int, GenericContext&);        \
    extern template Rep<T> e_plain(const Rep<T>&, int, GenericContext&);                      \
    extern template std::optional<Rep<T>> f_plain(const Rep<T>&, int, GenericContext&);       \
    extern template Rep<T> e_plain_direct(const Rep<T>&, int, GenericContext&);               \
    extern template std::optional<Rep<T>> f_plain_direct(const Rep<T>&, int, GenericContext&);

GPA_GENERIC_EXTERN(Fp)
GPA_GENERIC_EXTERN(Rational)

}  // namespace gpa
