#ifndef THETASURF_SYMBOLIC_QUARTIC_HPP
#define THETASURF_SYMBOLIC_QUARTIC_HPP

#include <array>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "../exact/mpoly.hpp"
#include "../exact/parse.hpp"

namespace thetasurf {

// Ternary quartic Q(x,y,z) with exact coefficients c_ijk.
class PlaneQuartic {
 public:
  explicit PlaneQuartic(MPoly q) : q_(std::move(q)) {
    if (q_.nvars() != 3) throw InputError("quartic must be in x, y, z");
    if (q_.is_zero()) throw InputError("zero quartic");
    for (auto& [e, c] : q_.terms())
      if (e[0] + e[1] + e[2] != 4) throw InputError("quartic is not homogeneous of degree 4");
  }
  static PlaneQuartic parse(const std::string& s) { return PlaneQuartic(parse_mpoly(s, {"x", "y", "z"})); }
  // keys "i,j,k" -> coefficient strings
  static PlaneQuartic from_coeffs(const std::map<std::string, std::string>& c) {
    MPoly q(3);
    for (auto& [key, val] : c) {
      std::array<int, 3> e{};
      if (std::sscanf(key.c_str(), "%d,%d,%d", &e[0], &e[1], &e[2]) != 3)
        throw ParseError("bad coefficient key '" + key + "'");
      q.add_term({e[0], e[1], e[2]}, parse_qnum(val));
    }
    return PlaneQuartic(q);
  }
  // Homogenize an affine q(x,y) of degree 4.
  static PlaneQuartic from_affine(const MPoly& q) {
    MPoly Q(3);
    for (auto& [e, c] : q.terms()) {
      int d = e[0] + e[1];
      if (d > 4) throw InputError("affine curve has degree above 4");
      Q.add_term({e[0], e[1], 4 - d}, c);
    }
    return PlaneQuartic(Q);
  }

  const MPoly& poly() const { return q_; }
  std::map<std::string, std::string> coeffs() const {
    std::map<std::string, std::string> out;
    for (auto& [e, c] : q_.terms())
      out[std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2])] = c.str();
    return out;
  }

 // A repeated factor forces a repeated root on every line; one line with a
  // squarefree restriction proves squarefreeness.
  bool is_squarefree() const {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> u(-7, 7);
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::vector<MPoly> sub;
      for (int k = 0; k < 3; ++k) {
        MPoly l(1, QNum(u(rng)));
        l += MPoly::var(1, 0).scaled(QNum(u(rng)));
        sub.push_back(l);
      }
      UPoly r = q_.substitute(sub).to_upoly(0);
      if (r.degree() < 4) continue;
      if (gcd(r, r.derivative()).degree() == 0) return true;
    }
    return false;
  }

 private:
  MPoly q_;
};

// Q with the chosen variable (0=x, 1=y, 2=z) set to 1; the result lives in the
// two remaining variables in their original order.
inline MPoly dehomogenize(const PlaneQuartic& Q, int variable = 2) {
  if (variable < 0 || variable > 2) throw InputError("variable index must be 0, 1 or 2");
  bool divides = true;
  for (auto& [e, c] : Q.poly().terms())
    if (e[variable] == 0) divides = false;
  if (divides) throw VariableDivides(std::string(1, "xyz"[variable]) + " divides the quartic");
  MPoly q(2);
  for (auto& [e, c] : Q.poly().terms()) {
    Exps f;
    for (int k = 0; k < 3; ++k)
      if (k != variable) f.push_back(e[k]);
    q.add_term(f, c);
  }
  return q;
}

}  // namespace thetasurf

#endif
