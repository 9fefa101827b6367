#ifndef ELLGR_POLYNOMIAL_HPP
#define ELLGR_POLYNOMIAL_HPP

#include <gmpxx.h>
#include <vector>

#include "ellgr/bigcomplex.hpp"

namespace ellgr {

// dense rational polynomials, ascending coefficients, normalized (no trailing zeros)
namespace poly {

using Rat = std::vector<mpq_class>;

Rat normalize(Rat p);
int degree(const Rat& p); // -1 for zero
Rat add(const Rat& a, const Rat& b);
Rat sub(const Rat& a, const Rat& b);
Rat mul(const Rat& a, const Rat& b);
Rat scale(const Rat& a, const mpq_class& c);
// division with remainder, b != 0
std::pair<Rat, Rat> divmod(const Rat& a, const Rat& b);
Rat derivative(const Rat& a);
// monic gcd
Rat gcd(Rat a, Rat b);
// extended gcd: g = u a + v b with g monic
void gcdext(const Rat& a, const Rat& b, Rat& g, Rat& u, Rat& v);

BigComplex eval(const Rat& p, const BigComplex& x);
BigComplex eval(const std::vector<mpz_class>& p, const BigComplex& x);
std::complex<double> eval_d(const std::vector<mpz_class>& p, std::complex<double> x);

} // namespace poly

} // namespace ellgr

#endif
