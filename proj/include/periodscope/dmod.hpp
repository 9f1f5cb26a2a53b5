#pragma once

#include <map>
#include <string>
#include <vector>

#include "periodscope/ratfun.hpp"
#include "periodscope/toric.hpp"

namespace ps {

// Term order on delta-monomials: graded, ties broken reverse-lexicographically
// after permuting variables by priority (priority[0] most significant).
struct DeltaOrder {
  std::vector<int> priority;
  static DeltaOrder standard(int nvars);
  bool less(const Expo& a, const Expo& b) const;
};

// Operator in the log-derivations d_i = z_i d/dz_i with rational-function
// coefficients; multiplication follows d_i z_j = z_j (d_i + [i==j]).
class LogDiffOp {
 public:
  LogDiffOp() : nv_(0) {}
  explicit LogDiffOp(int nvars) : nv_(nvars) {}

  static LogDiffOp one(int nvars);
  static LogDiffOp delta(int nvars, int i);
  static LogDiffOp coeff(const RatFun& f);
  static LogDiffOp term(const RatFun& f, const Expo& d);
  // Parses d-polynomials like "d1^3 + z1*(3*d1+3*d2+1)"; '*' is the Ore product.
  static LogDiffOp parse(const std::string& s, int nvars);

  int nvars() const { return nv_; }
  bool is_zero() const { return t_.empty(); }
  long order() const;  // max total d-degree, -1 for zero
  const std::map<Expo, RatFun>& terms() const { return t_; }
  RatFun coeff_of(const Expo& d) const;
  void add_term(const Expo& d, const RatFun& c);

  LogDiffOp operator-() const;
  LogDiffOp& operator+=(const LogDiffOp& o);
  LogDiffOp& operator-=(const LogDiffOp& o);
  friend LogDiffOp operator+(LogDiffOp a, const LogDiffOp& b) { return a += b; }
  friend LogDiffOp operator-(LogDiffOp a, const LogDiffOp& b) { return a -= b; }
  bool operator==(const LogDiffOp& o) const { return nv_ == o.nv_ && t_ == o.t_; }
  bool operator!=(const LogDiffOp& o) const { return !(*this == o); }

  LogDiffOp scaled(const RatFun& f) const;  // left multiplication by f(z)
  Expo lead_expo(const DeltaOrder& ord) const;
  RatFun lead_coeff(const DeltaOrder& ord) const;
  LogDiffOp monic(const DeltaOrder& ord) const;

  std::string str() const;

 private:
  int nv_;
  std::map<Expo, RatFun> t_;
};

LogDiffOp ore_mul(const LogDiffOp& a, const LogDiffOp& b);

// Partial-derivative form with polynomial coefficients.
struct PolyDiffOp {
  int nvars = 0;
  std::map<Expo, MPoly> terms;  // d/dz exponent -> coefficient
};

// Clears denominators (left multiplication by their lcm) and converts via
// z^a (d/dz)^a = d(d-1)...(d-a+1) per variable.
PolyDiffOp to_partial(const LogDiffOp& op);
LogDiffOp from_partial(const PolyDiffOp& op);

// Box operator of a relation vector: prod_{l_i>0} D_i^{l_i} - prod_{l_j<0} D_j^{-l_j}.
PolyDiffOp box_operator(const IVec& l);

// Dehomogenized GKZ generators on the torus-invariant coordinates of the
// suspended toric data (one operator per relation row).
std::vector<LogDiffOp> gkz_operators(const ToricData& suspended);

LogDiffOp rescale(const LogDiffOp& op, const std::vector<Rat>& c);

// Left division a = l * q by a first-order operator l; nullopt when inexact.
std::optional<LogDiffOp> left_divide_first_order(const LogDiffOp& a,
                                                 const LogDiffOp& l,
                                                 const DeltaOrder& ord);

struct GroebnerBasis {
  std::vector<LogDiffOp> gens;  // reduced, monic, sorted by leading monomial
  std::vector<LogDiffOp> prim;  // same elements with primitive polynomial
                                // coefficients (used for reductions)
  DeltaOrder ord;
  bool finite = false;
  std::vector<Expo> staircase;  // graded order when finite
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroebnerBasis groebner(const std::vector<LogDiffOp>& gens, const DeltaOrder& ord);
LogDiffOp normal_form(const LogDiffOp& op, const GroebnerBasis& gb);
int holonomic_rank(const GroebnerBasis& gb);  // throws when not holonomic

struct Discriminant {
  std::vector<MPoly> components;        // square-free, primitive
  std::vector<int> boundary_vars;       // coordinate components z_i stripped
};
// Eliminates the symbol variables from the principal symbols of the basis
// elements together with any extra ideal members supplied (the original
// generators sharpen the elimination and help split components).
Discriminant char_discriminant(const GroebnerBasis& gb,
                               const std::vector<LogDiffOp>& extra = {});

// Truncated holomorphic solution at the origin with constant term 1.
struct SeriesSolution {
  std::map<Expo, Rat, GrlexLess> coeff;
  int order = 0;
};
SeriesSolution series_solution(const std::vector<LogDiffOp>& gens, int order);
// Applies op to a truncated series, keeping terms of total degree <= order.
std::map<Expo, Rat, GrlexLess> apply_to_series(const LogDiffOp& op,
                                               const SeriesSolution& s);

// Coordinate changes ---------------------------------------------------------

struct ChartStage {
  std::vector<Rat> shift;                 // z_i -> z_i + a_i (first)
  std::vector<std::vector<long>> expo;    // then z_j = prod_i u_i^{E_ij}
  std::vector<Rat> rescale;               // then new coordinates c_i * z_i
};

struct Chart {
  std::string name;
  std::vector<ChartStage> stages;
  std::string left_divisor, right_divisor;
};

LogDiffOp apply_stage(const LogDiffOp& op, const ChartStage& st);
std::vector<LogDiffOp> change_chart(const std::vector<LogDiffOp>& ops,
                                    const Chart& chart);

}  // namespace ps
