#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pnet/net.hpp"
#include "pnet/reduce.hpp"

namespace pnet {

// psi(i, j, k) = i (1 + 2 (2j)^(k+1)), applied as psi(size, jd, ln).
mpz_class psi(const mpz_class& i, const mpz_class& j, unsigned long k);
// Same function with the (size, ln, jd) argument order.
mpz_class psi_size_ln_jd(const mpz_class& i, unsigned long ln, const mpz_class& jd);
// phi(0) = 0, phi(n) = n + (n+1)(phi(n-1) + 2).
mpz_class phi(unsigned long n);
// theta(ln, jd) = 2 (2 (ln+1) jd)^(ln+1).
mpz_class theta(unsigned long ln, const mpz_class& jd);

struct BoundCheck {
  std::string name;
  mpz_class lhs, rhs;
  bool ok = true;
};

struct BoundReport {
  StepKind kind = StepKind::Identity;
  std::size_t size_p = 0, size_q = 0, ln_p = 0, ln_q = 0;
  int jd_p = 0, jd_q = 0;
  std::vector<BoundCheck> checks;
  bool ok() const;
};

// Evaluates every inequality that applies to the step p ->> q described by
// the record. Throws CyclicInput on a cyclic p.
BoundReport check_bounds(const Net& p, const Net& q, const ReductionRecord& rec);

}  // namespace pnet
