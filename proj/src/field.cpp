#include "gpa/field.hpp"

namespace gpa {

thread_local std::uint64_t Fp::p_ = kDefaultPrime;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    while (!is_prime(n)) ++n;
    return n;
}

Fp Field<Fp>::from_rational(const Rational& q) {
    mpz_class m(static_cast<unsigned long>(Fp::modulus()));
    mpz_class num = q.get_num() % m;
    mpz_class den = q.get_den() % m;
    if (num < 0) num += m;
    if (den == 0) throw std::domain_error("denominator vanishes mod p");
    return Fp::raw(num.get_ui()) / Fp::raw(den.get_ui());
}

Fp Field<Fp>::parse(const std::string& s) { return from_rational(Field<Rational>::parse(s)); }

Rational Field<Rational>::parse(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace gpa
