#pragma once

#include <gmpxx.h>

namespace eulerprod {

inline int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const mpz_class& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

}  // namespace eulerprod
