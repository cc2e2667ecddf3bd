#ifndef THETASURF_SYMBOLIC_PRESETS_HPP
#define THETASURF_SYMBOLIC_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "implicit.hpp"

namespace thetasurf {

struct SurfacePreset {
  std::string name;
  std::string q;                 // affine quartic in x, y
  std::string c1x, c1y, c2x, c2y;  // components in w
  std::string expected;          // published equation
  bool exponential;              // Psi(u,v,w) of exponentials, or a polynomial in X,Y,Z
  std::optional<std::array<std::string, 3>> exps;  // override for auto_exponents
  bool torus_compare = false;    // compare up to u,v,w -> unit multiples
};

// Curves with "L" take the pencil parameter lambda.
inline std::vector<SurfacePreset> surface_presets() {
  return {
      {"scherk", "x*y*(x^2+y^2+1)", "w", "0", "0", "w", "u*v^2*w - u^2*v - u*w + v", true, std::nullopt, true},
      {"pencil", "y*(x-1)*((1+L)*x*y - x - L*y)", "w", "0", "1", "w", "u + v - w + 1", true, std::nullopt},
      {"hyperbola-lines", "x*y*(1-x^2+y^2)", "w", "0", "0", "w", "i*u*v^2*w - i*u*w - u^2*v - v", true,
       std::array<std::string, 3>{"1", "i", "1"}, true},
      {"four-lines", "(y+x-1)*(y-x-1)*(y+x+1)*(y-x+1)", "w", "1-w", "w", "1+w",
       "u^2*v*w^2 - 2*u^2*v*w - u*v^2*w + u*v*w^2 + u^2*v - 4*u*v*w - v^2*w + u*v - u*w - 2*v*w - w", true,
       std::nullopt},
      {"cusp", "(y^2-x^3)*y", "w^2", "w^3", "w", "0", "Y^4 - 4*X*Y^2 - 4*X^2 + 8*Z", false, std::nullopt},
      {"concurrent", "(x+y)*(x-y)*(2*x+y)*(2*x-y)", "w", "w", "w", "-w", "3*X*Y - Z", false, std::nullopt},
      {"toric", "x^4 - y", "w", "w^4", "w", "w^4", "Z^5 - 20*X^2*Z + 20*Y", false, std::nullopt},
      {"node-cusp", "x^3*y - x^4 + 2*x^2*y - y^2", "w^2/(w+1)", "w^4/(w+1)", "w^2/(w+1)", "w^4/(w+1)",
       "2*X^3*Y + 3*X^2*Y + 6*X^2 - 6*Y*Z + 6*X", false, std::nullopt},
      {"sextic", "(y-x^2)^2 + 2*x*y*(y-x^2) + y^3", "w^2*(w+1)/(2*w+1)", "w^4/(2*w+1)", "w^2*(w+1)/(2*w+1)",
       "w^4/(2*w+1)", "4*Y^6 - 24*Y^5 - 60*X*Y^3 + 45*Y^4 + 180*X*Y^2 - 180*X^2 + 180*Y*Z - 180*Z", false,
       std::nullopt},
      {"cardioid", "(x^2+y^2-2*x)^2 - 4*(x^2+y^2)", "4*(1-w^2)/(w^2+1)^2", "8*w/(w^2+1)^2", "4*(1-w^2)/(w^2+1)^2",
       "8*w/(w^2+1)^2", "8*X^2*Z + 8*Y^2*Z - 4*Y*Z - X", false, std::nullopt},
      {"deltoid", "y^2 + x^2 - 2*x*y + x^2*y^2 - 2*x^2*y - 2*x*y^2", "4/(w+1)^2", "4/(w+3)^2", "4/(w+1)^2",
       "4/(w+3)^2", "4*X*Y*Z + 4*X*Y + 2*X*Z - 2*Y*Z + 3*X - Y", false, std::nullopt},
  };
}

inline const SurfacePreset& find_surface_preset(const std::string& name) {
  static const auto presets = surface_presets();
  for (auto& p : presets)
    if (p.name == name) return p;
  throw InputError("unknown preset '" + name + "'");
}

inline std::string substitute_lambda(std::string s, const std::string& lambda) {
  std::string out;
  for (char c : s) {
    if (c == 'L')
      out += "(" + lambda + ")";
    else
      out += c;
  }
  return out;
}

struct PresetResult {
  MPoly q;
  LogParametrization param;
  ImplicitEquation eq;
  MPoly expected;
  bool matches;
  std::optional<MPoly> cofactor;  // expected / psi when psi is a proper factor
};

inline PresetResult run_surface_preset(const SurfacePreset& p, const std::string& lambda = "2") {
  MPoly q = parse_mpoly(substitute_lambda(p.q, lambda), {"x", "y"});
  auto c1 = ComponentParam::parse(p.c1x, p.c1y, "first"), c2 = ComponentParam::parse(p.c2x, p.c2y, "second");
  auto par = parametrize_theta_surface(q, c1, c2);
  ImplicitEquation eq;
  MPoly expected;
  if (p.exponential) {
    std::array<QNum, 3> ex;
    if (p.exps)
      for (int k = 0; k < 3; ++k) ex[k] = parse_qnum((*p.exps)[k]);
    else
      ex = auto_exponents(par);
    eq = implicitize(par, ex);
    expected = parse_mpoly(p.expected, {"u", "v", "w"});
  } else {
    eq = implicitize_rational(par);
    expected = parse_mpoly(p.expected, {"X", "Y", "Z"});
  }
  bool ok = p.torus_compare ? equal_up_to_torus_units(eq.psi, expected) : equal_up_to_scalar(eq.psi, expected);
  std::optional<MPoly> cof;
  if (!ok) {
    try {
      MPoly c = expected.exact_div(eq.psi);
      if (c.total_degree() > 0) cof = c;
    } catch (const NumericalError&) {
    }
  }
  return {q, par, eq, expected, ok, cof};
}

}  // namespace thetasurf

#endif
