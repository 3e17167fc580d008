#include "pnet/bounds.hpp"

#include <algorithm>

#include "pnet/switching.hpp"

namespace pnet {

namespace {

mpz_class pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpz_class z(std::size_t v) { return mpz_class(static_cast<unsigned long>(v)); }

}  // namespace

mpz_class psi(const mpz_class& i, const mpz_class& j, unsigned long k) {
  return i * (1 + 2 * pow(2 * j, k + 1));
}

mpz_class psi_size_ln_jd(const mpz_class& i, unsigned long ln, const mpz_class& jd) { return psi(i, jd, ln); }

mpz_class phi(unsigned long n) {
  mpz_class v = 0;
  for (unsigned long m = 1; m <= n; ++m) v = m + (m + 1) * (v + 2);
  return v;
}

mpz_class theta(unsigned long ln, const mpz_class& jd) { return 2 * pow(2 * mpz_class(ln + 1) * jd, ln + 1); }

bool BoundReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok; });
}

BoundReport check_bounds(const Net& p, const Net& q, const ReductionRecord& rec) {
  if (!is_acyclic(p).acyclic) throw Error(Errc::CyclicInput, "bounds hold for acyclic nets only");
  BoundReport r;
  r.kind = rec.kind;
  r.size_p = size(p);
  r.size_q = size(q);
  r.ln_p = max_path_length(p).ln;
  r.ln_q = max_path_length(q).ln;
  r.jd_p = jump_degree(p).max;
  r.jd_q = jump_degree(q).max;

  const unsigned long ln = r.ln_p;
  const mpz_class sp = z(r.size_p), sq = z(r.size_q), lp = z(r.ln_p), lq = z(r.ln_q);
  const mpz_class jp = r.jd_p, jq = r.jd_q;
  auto add = [&](std::string name, const mpz_class& lhs, const mpz_class& rhs) {
    r.checks.push_back(BoundCheck{std::move(name), lhs, rhs, lhs <= rhs});
  };

  switch (rec.kind) {
    case StepKind::Multiplicative:
    case StepKind::Exponential:
      add("size(p) <= 2 size(q)", sp, 2 * sq);
      add("jd(q) <= 2 jd(p)", jq, 2 * jp);
      break;
    case StepKind::Axiom:
      add("size(p) <= (ln(p)+1) size(q)", sp, (lp + 1) * sq);
      add("ln(q) <= ln(p)", lq, lp);
      add("jd(q) <= (ln(p)+1) jd(p)", jq, (lp + 1) * jp);
      break;
    case StepKind::Evanescent: {
      std::size_t eliminated = rec.eliminated.size();
      add("size(p) <= psi(size(q), jd(p), ln(p))", sp, psi(sq, jp, ln));
      add("#evanescent <= size(q) (2 jd(p))^(ln(p)+1)", z(eliminated), sq * pow(2 * jp, ln + 1));
      add("ln(q) <= ln(p)", lq, lp);
      add("jd(q) <= (2 jd(p))^(ln(p)+1)", jq, pow(2 * jp, ln + 1));
      break;
    }
    case StepKind::Identity:
      add("size(p) <= size(q)", sp, sq);
      break;
    case StepKind::Mixed:
      break;
  }
  add("size(p) <= psi(2(ln(p)+1) size(q), jd(p), ln(p))", sp, psi(2 * (lp + 1) * sq, jp, ln));
  add("jd(q) <= theta(ln(p), jd(p))", jq, theta(ln, jp));
  add("ln(q) <= phi(ln(p))", lq, phi(ln));
  return r;
}

}  // namespace pnet
