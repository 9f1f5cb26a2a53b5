#include "periodscope/rat.hpp"

namespace ps {

Rat Rat::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int n(s.substr(0, slash));
  Int d(s.substr(slash + 1));
  return Rat(n, d);
}

long Rat::to_long() const {
  if (!is_integer()) throw std::domain_error("Rat: not an integer: " + str());
  Int n = num();
  if (!n.fits_slong_p()) throw std::domain_error("Rat: out of long range");
  return n.get_si();
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  mpq_class base = e > 0 ? q_ : Rat(*this).inv().q_;
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
  r.canonicalize();
  return Rat(r);
}

std::string Rat::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace ps
