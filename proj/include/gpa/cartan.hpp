#pragma once

#include "gpa/errors.hpp"

#include <gmpxx.h>

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gpa {

using IVec = std::vector<long>;
using IMat = std::vector<std::vector<long>>;

// Vertices are 0-based in the C++ API and 1-based in names, files and the CLI.
struct CartanDatum {
    int n = 0;
    IMat C;
    IVec D;
    std::set<std::pair<int, int>> omega;
    IMat g;  // |gcd(c_ij, c_ji)|, 0 when c_ij = 0
    IMat f;  // |c_ij| / g_ij

    int sgn(int i, int j) const { return omega.count({i, j}) ? 1 : -1; }
    bool adjacent(int i, int j) const { return i != j && C[i][j] != 0; }

    // (x,y) = sum x_i y_j c_i c_ij
    long bil_sym(const IVec& x, const IVec& y) const;
    // <x,y> = sum x_i y_j c_ji, so that <r, alpha_i> = sum_j r_j c_ij
    long bil_euler(const IVec& x, const IVec& y) const;
    long pair_alpha(const IVec& r, int i) const;
    long q_dc(const IVec& x) const;
    IVec simple_root(int i) const;

    bool operator==(const CartanDatum& o) const {
        return C == o.C && D == o.D && omega == o.omega;
    }
};

CartanDatum validate_datum(const IMat& C, const IVec& D, const std::set<std::pair<int, int>>& omega);
IVec minimal_symmetrizer(const IMat& C);
std::set<std::pair<int, int>> default_orientation(const IMat& C);
// Datum with minimal symmetrizer and default orientation.
CartanDatum standard_datum(const IMat& C);

long expected_dim(const CartanDatum& d, const IVec& dims);

std::vector<IVec> positive_roots(const IMat& C, long height_cap = 60);
unsigned long long kostant_count(const IMat& C, const IVec& r);
mpz_class weyl_dim(const CartanDatum& d, const IVec& lambda);
IVec nu_from_weight(const IMat& C, const IVec& lambda, const IVec& mu, const IVec& r);
bool is_dominant(const IVec& w);
long height(const IVec& r);

// TOML `[cartan]` block.  `text` is TOML source.
CartanDatum parse_cartan_toml(const std::string& text);
CartanDatum load_cartan_toml(const std::string& path);

std::string format_vec(const IVec& v);

}  // namespace gpa
