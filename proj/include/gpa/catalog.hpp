#pragma once

#include "gpa/rep.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace gpa {

struct BasisAction {
    std::string arrow;
    int from = 0, to = 0;  // 0-based basis indices
    std::string scalar;    // rational literal, "lambda" or "-lambda"
};

struct LabeledBasisSpec {
    std::vector<int> basis;  // 0-based vertex of each basis vector
    std::vector<BasisAction> actions;
};

LabeledBasisSpec labeled_basis_from_json(const nlohmann::json& j);

template <class T>
Rep<T> from_labeled_basis(const DatumPtr& d, const LabeledBasisSpec& spec, const T& lambda = T(1),
                          const std::string& name = "module");

// Uniserial E_i: basis e_1..e_{c_i} with eps e_k = e_{k-1}.
template <class T> Rep<T> make_E(const DatumPtr& d, int i);
// One-dimensional simple at i.
template <class T> Rep<T> make_S(const DatumPtr& d, int i);
// Tree module X(i,j) of rank (1-c_ij) alpha_i + alpha_j.  Needs c_ij < 0, c_i >= 2.
template <class T> Rep<T> make_serre_witness(const DatumPtr& d, int i, int j);

// Named data used throughout the examples.
DatumPtr datum_b2();      // C=[[2,-1],[-2,2]], D=(2,1), Omega={(1,2)}
DatumPtr datum_g2();      // C=[[2,-1],[-3,2]], D=(3,1), Omega={(1,2)}
DatumPtr datum_a2d2();    // C=[[2,-1],[-1,2]], D=(2,2), Omega={(1,2)}
DatumPtr datum_a2();      // C=[[2,-1],[-1,2]], D=(1,1), Omega={(1,2)}
DatumPtr datum_c26();     // C=[[2,-6],[-2,2]], D=(2,6), Omega={(1,2)}

struct FixtureSet {
    DatumPtr datum;
    std::map<std::string, LabeledBasisSpec> specs;
};

// Reads data/fixtures/<name>.json ("b2", "g2", "a2d2").
FixtureSet load_fixture_set(const std::string& name);
std::string fixture_dir();

// Relation-checked fixture modules; lambda parametrizes M(lambda) and Q(lambda).
std::map<std::string, Rep<Rational>> b2_fixtures(const Rational& lambda = 1);
std::map<std::string, Rep<Rational>> g2_fixtures(const Rational& lambda = 1);
std::map<std::string, Rep<Rational>> a2d2_fixtures();

#define GPA_CATALOG_EXTERN(T)                                                                         \
    extern template Rep<T> from_labeled_basis(const DatumPtr&, const LabeledBasisSpec&, const T&,    \
                                              const std::string&);                                   \
    extern template Rep<T> make_E(const DatumPtr&, int);                                             \
    extern template Rep<T> make_S(const DatumPtr&, int);                                             \
    extern template Rep<T> make_serre_witness(const DatumPtr&, int, int);

GPA_CATALOG_EXTERN(Fp)
GPA_CATALOG_EXTERN(Rational)

}  // namespace gpa
