#pragma once

// Local factors, truncated Euler products (Re(s) > 1 only), Dirichlet
// coefficients, and the per-prime factorization identities relating the
// families Z_m^{+-}, L(s, Sym^m), Z^{+-}(s, f) and Z^m.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chebyshev_gate.hpp"
#include "errors.hpp"
#include "polynomial.hpp"
#include "primes.hpp"
#include "satotate.hpp"

namespace eulerprod {

using Complex = std::complex<double>;

// Polynomial 1 + c_1 T + ... in T. Every family here is built as a product of
// linear factors (1 - z_j T), and the z_j are kept so root moduli (1/|z_j|)
// can be read off without a numerical root finder.
class LocalFactor {
 public:
  LocalFactor() : coeffs_{Complex(1.0)} {}

  static LocalFactor from_inverse_roots(const std::vector<Complex>& zs) {
    LocalFactor f;
    for (const auto& z : zs) f = f * linear(z);
    return f;
  }

  // 1 + b T + T^2, split as (1 - z1 T)(1 - z2 T) with z1 z2 = 1, z1 + z2 = -b.
  static LocalFactor quadratic(double b) {
    LocalFactor f;
    f.coeffs_ = {Complex(1.0), Complex(b), Complex(1.0)};
    const double disc = b * b - 4.0;
    if (disc <= 0.0) {
      const double im = std::sqrt(-disc) / 2.0;
      f.inverse_roots_ = {Complex(-b / 2.0, im), Complex(-b / 2.0, -im)};
    } else {
      // larger-magnitude root first, the other as its reciprocal
      const double big = (-b - std::copysign(std::sqrt(disc), b)) / 2.0;
      f.inverse_roots_ = {Complex(big), Complex(1.0 / big)};
    }
    return f;
  }

  static LocalFactor from_coefficients(std::vector<Complex> coeffs) {
    if (coeffs.empty() || coeffs[0] != Complex(1.0))
      throw InvalidInput("LocalFactor: constant coefficient must be 1");
    LocalFactor f;
    f.coeffs_ = std::move(coeffs);
    f.roots_known_ = false;
    return f;
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  bool roots_known() const { return roots_known_; }
  const std::vector<Complex>& inverse_roots() const { return inverse_roots_; }

  Complex eval(Complex t) const {
    Complex r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
    return r;
  }

  // H(T) -> H(T^2); used for factors evaluated at argument 2s.
  LocalFactor at_square() const {
    LocalFactor f;
    f.coeffs_.assign(2 * coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) f.coeffs_[2 * i] = coeffs_[i];
    f.roots_known_ = roots_known_;
    for (const auto& z : inverse_roots_) {
      const Complex r = std::sqrt(z);
      f.inverse_roots_.push_back(r);
      f.inverse_roots_.push_back(-r);
    }
    return f;
  }

  friend LocalFactor operator*(const LocalFactor& a, const LocalFactor& b) {
    LocalFactor f;
    f.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) f.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    f.roots_known_ = a.roots_known_ && b.roots_known_;
    if (f.roots_known_) {
      f.inverse_roots_ = a.inverse_roots_;
      f.inverse_roots_.insert(f.inverse_roots_.end(), b.inverse_roots_.begin(), b.inverse_roots_.end());
    }
    return f;
  }

  friend double max_coefficient_difference(const LocalFactor& a, const LocalFactor& b) {
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex x = i < a.coeffs_.size() ? a.coeffs_[i] : Complex(0.0);
      const Complex y = i < b.coeffs_.size() ? b.coeffs_[i] : Complex(0.0);
      err = std::max(err, std::abs(x - y));
    }
    return err;
  }

 private:
  static LocalFactor linear(Complex z) {
    LocalFactor f;
    f.coeffs_ = {Complex(1.0), -z};
    f.inverse_roots_ = {z};
    return f;
  }

  std::vector<Complex> coeffs_;
  std::vector<Complex> inverse_roots_;
  bool roots_known_ = true;
};

struct EulerProductSpec {
  enum class Kind { Zeta, Sym, Zpm, Zf, Zexample };
  Kind kind = Kind::Zeta;
  long m = 0;      // Sym / Zpm degree, or the shift in Zexample
  int sign = -1;   // Zpm, Zf: factor 1 + sign*(...)T + T^2
  IntPolynomial f;

  static EulerProductSpec zeta() { return {}; }
  static EulerProductSpec sym(long m) {
    if (m < 0) throw InvalidInput("Sym(m) needs m >= 0");
    return {Kind::Sym, m, -1, {}};
  }
  static EulerProductSpec zpm(long m, int sign) {
    if (m < 0) throw InvalidInput("Zpm(m) needs m >= 0");
    check_sign(sign);
    return {Kind::Zpm, m, sign, {}};
  }
  static EulerProductSpec zf(IntPolynomial f, int sign) {
    check_sign(sign);
    return {Kind::Zf, 0, sign, std::move(f)};
  }
  static EulerProductSpec zexample(long m) { return {Kind::Zexample, m, -1, {}}; }

  // Families whose local roots lie on the unit circle for every angle.
  bool is_unitary_family() const;

  std::string to_string() const {
    const std::string sg = sign > 0 ? "+" : "-";
    switch (kind) {
      case Kind::Zeta: return "zeta";
      case Kind::Sym: return "sym:" + std::to_string(m);
      case Kind::Zpm: return "zpm:" + std::to_string(m) + ":" + sg;
      case Kind::Zf: return "zf:" + f.to_string() + ":" + sg;
      case Kind::Zexample: return "zex:" + std::to_string(m);
    }
    return "?";
  }

  friend bool operator==(const EulerProductSpec&, const EulerProductSpec&) = default;

 private:
  static void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw InvalidInput("sign must be + or -");
  }
};

inline int parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return 1;
  if (s == "-" || s == "minus") return -1;
  throw InvalidInput("sign must be '+' or '-', got '" + s + "'");
}

inline long parse_long(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInput(std::string("bad integer for ") + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw InvalidInput(std::string("bad integer for ") + what + ": '" + s + "'");
  return v;
}

// zeta | sym:M | zpm:M:+- | zf:POLY:+- | zex:M
inline EulerProductSpec parse_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "zeta" && colon == std::string::npos) return EulerProductSpec::zeta();
  if (head == "sym") return EulerProductSpec::sym(parse_long(rest, "sym"));
  if (head == "zex") return EulerProductSpec::zexample(parse_long(rest, "zex"));
  if (head == "zpm" || head == "zf") {
    const auto last = rest.rfind(':');
    if (last == std::string::npos) throw InvalidInput("spec '" + text + "' needs a trailing :+ or :-");
    const int sign = parse_sign(rest.substr(last + 1));
    std::string body = rest.substr(0, last);
    if (head == "zpm") return EulerProductSpec::zpm(parse_long(body, "zpm"), sign);
    if (body.size() >= 2 && body.front() == '"' && body.back() == '"') body = body.substr(1, body.size() - 2);
    return EulerProductSpec::zf(parse_polynomial(body), sign);
  }
  throw InvalidInput("unknown product spec '" + text + "'");
}

inline LocalFactor sym_factor(long m, double theta) {
  std::vector<Complex> zs;
  for (long j = 0; j <= m; ++j) zs.push_back(std::polar(1.0, static_cast<double>(m - 2 * j) * theta));
  LocalFactor f = LocalFactor::from_inverse_roots(zs);
  return f;
}

inline LocalFactor local_factor(const EulerProductSpec& spec, const PrimeAngle& e) {
  using K = EulerProductSpec::Kind;
  switch (spec.kind) {
    case K::Zeta: return LocalFactor::from_inverse_roots({Complex(1.0)});
    case K::Sym: return sym_factor(spec.m, e.theta);
    case K::Zpm: return LocalFactor::quadratic(spec.sign * 2.0 * std::cos(static_cast<double>(spec.m) * e.theta));
    case K::Zf: return LocalFactor::quadratic(spec.sign * spec.f.eval(2.0 * std::cos(e.theta)));
    case K::Zexample: {
      const double a_p2 = e.a * e.a - 1.0;  // a(p^2) by the Hecke relation
      return LocalFactor::quadratic(-(a_p2 - static_cast<double>(spec.m)));
    }
  }
  throw InvalidInput("local_factor: unknown spec");
}

inline LocalFactor local_factor(const EulerProductSpec& spec, std::uint64_t p, const AngleTable& angles) {
  return local_factor(spec, angles.at(p));
}

inline bool EulerProductSpec::is_unitary_family() const {
  switch (kind) {
    case Kind::Zeta:
    case Kind::Sym:
    case Kind::Zpm: return true;
    case Kind::Zexample: return m == 1;
    case Kind::Zf: {
      if (f.degree() == 0) return cmpabs(f.coeff(0), 2) <= 0;
      // a non-constant polynomial with |leading| >= 2 has sup >= 4 on [-2, 2]
      if (cmpabs(f.leading(), 1) != 0) return false;
      const IntPolynomial g = f.leading() > 0 ? f : -f;
      return g == dilated_chebyshev(g.degree());
    }
  }
  return false;
}

enum class Reduction { Sequential, PairwiseTree };

struct TruncatedValue {
  Complex value;
  std::uint64_t cutoff;
  double sigma;
  double tail_hint;  // heuristic: 2(deg+1) P^{1-sigma} / ((sigma-1) ln P), not a proven bound
  std::optional<Prime> pole_at;  // first prime whose local factor vanishes at p^{-s}
};

inline double tail_hint(std::size_t degree, std::uint64_t cutoff, double sigma) {
  const double P = static_cast<double>(cutoff);
  return 2.0 * static_cast<double>(degree + 1) * std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P));
}

inline constexpr double kPoleTolerance = 1e-13;

inline TruncatedValue truncated_product(const EulerProductSpec& spec, Complex s, std::uint64_t cutoff,
                                        const AngleTable& angles, Reduction order = Reduction::Sequential) {
  if (!(s.real() > 1.0))
    throw InvalidInput("truncated_product: needs Re(s) > 1 (no continuation is attempted)");
  if (cutoff < 2) throw InvalidInput("truncated_product: cutoff must be >= 2");
  if (cutoff > angles.cutoff())
    throw InvalidInput("truncated_product: cutoff " + std::to_string(cutoff) + " exceeds angle table cutoff " +
                       std::to_string(angles.cutoff()));

  TruncatedValue out{Complex(1.0), cutoff, s.real(), 0.0, std::nullopt};
  std::vector<Complex> inverses;
  std::size_t degree = 0;
  for (const auto& e : angles.entries()) {
    if (e.p > cutoff) break;
    const LocalFactor f = local_factor(spec, e);
    degree = std::max(degree, f.degree());
    const Complex t = std::exp(-s * std::log(static_cast<double>(e.p)));
    const Complex v = f.eval(t);
    double scale = 0.0;
    Complex tk = 1.0;
    for (const auto& c : f.coeffs()) {
      scale += std::abs(c) * std::abs(tk);
      tk *= t;
    }
    if (std::abs(v) <= kPoleTolerance * scale) {
      out.pole_at = e.p;
      out.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
      out.tail_hint = std::numeric_limits<double>::infinity();
      return out;
    }
    inverses.push_back(1.0 / v);
  }
  if (order == Reduction::Sequential) {
    for (const auto& x : inverses) out.value *= x;
  } else {
    while (inverses.size() > 1) {
      std::vector<Complex> next;
      for (std::size_t i = 0; i + 1 < inverses.size(); i += 2) next.push_back(inverses[i] * inverses[i + 1]);
      if (inverses.size() % 2) next.push_back(inverses.back());
      inverses = std::move(next);
    }
    if (!inverses.empty()) out.value = inverses.front();
  }
  out.tail_hint = tail_hint(degree, cutoff, out.sigma);
  return out;
}

// Coefficients c(1..N) of prod_{p<=N} LocalFactor(p^{-s})^{-1} = sum c(n) n^{-s};
// index 0 is unused and left at zero.
inline std::vector<Complex> dirichlet_expand(const EulerProductSpec& spec, std::uint64_t n_max,
                                             const AngleTable& angles) {
  if (n_max < 1) throw InvalidInput("dirichlet_expand: N must be >= 1");
  if (n_max > angles.cutoff())
    throw InvalidInput("dirichlet_expand: angle table must cover all primes up to N");
  std::vector<Complex> c(n_max + 1, Complex(0.0));
  c[1] = 1.0;
  for (const auto& e : angles.entries()) {
    const std::uint64_t p = e.p;
    if (p > n_max) break;
    const LocalFactor f = local_factor(spec, e);
    // 1/F(T) = sum b_k T^k
    std::vector<Complex> b{Complex(1.0)};
    for (std::uint64_t pk = p; pk <= n_max; pk *= p) {
      const std::size_t k = b.size();
      Complex acc = 0.0;
      for (std::size_t j = 1; j <= std::min(k, f.degree()); ++j) acc -= f.coeffs()[j] * b[k - j];
      b.push_back(acc);
      if (pk > n_max / p) break;
    }
    for (std::uint64_t m = 1; m * p <= n_max; ++m) {
      if (m % p == 0 || c[m] == Complex(0.0)) continue;
      std::uint64_t n = m;
      for (std::size_t k = 1; k < b.size() && n <= n_max / p; ++k) {
        n *= p;
        c[n] = c[m] * b[k];
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Factorization identities

enum class IdentityId { ZetaSquare, Z1Plus, SymMinus, SymPlus, Shimura };

inline IdentityId parse_identity(const std::string& name) {
  if (name == "zeta-square" || name == "i") return IdentityId::ZetaSquare;
  if (name == "z1-plus" || name == "ii") return IdentityId::Z1Plus;
  if (name == "sym-minus" || name == "iii") return IdentityId::SymMinus;
  if (name == "sym-plus" || name == "iv") return IdentityId::SymPlus;
  if (name == "shimura" || name == "v") return IdentityId::Shimura;
  throw InvalidInput("unknown identity '" + name + "'");
}

inline std::string identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::ZetaSquare: return "zeta-square";
    case IdentityId::Z1Plus: return "z1-plus";
    case IdentityId::SymMinus: return "sym-minus";
    case IdentityId::SymPlus: return "sym-plus";
    case IdentityId::Shimura: return "shimura";
  }
  return "?";
}

inline bool identity_takes_m(IdentityId id) {
  return id == IdentityId::SymMinus || id == IdentityId::SymPlus;
}

// One factor of an Euler product, at argument s (scale 1) or 2s (scale 2).
struct ProductTerm {
  EulerProductSpec spec;
  int scale = 1;
};

// prod(lhs) == prod(rhs), both as local factors and as Euler products.
struct ProductEquation {
  std::vector<ProductTerm> lhs;
  std::vector<ProductTerm> rhs;
};

inline constexpr long kMaxIdentityM = 10;

inline std::vector<ProductEquation> identity_equations(IdentityId id, long m = 2) {
  using S = EulerProductSpec;
  if (identity_takes_m(id) && (m < 2 || m > kMaxIdentityM))
    throw InvalidInput("identity " + identity_name(id) + " needs 2 <= m <= 10");
  switch (id) {
    case IdentityId::ZetaSquare:
      // Z_0^- = zeta^2 and Z_0^+ zeta(s)^2 = zeta(2s)^2
      return {{{{S::zpm(0, -1)}}, {{S::zeta()}, {S::zeta()}}},
              {{{S::zpm(0, 1)}, {S::zeta()}, {S::zeta()}}, {{S::zeta(), 2}, {S::zeta(), 2}}}};
    case IdentityId::Z1Plus:
      // Z_1^+(s) L(s,Sym^1) zeta(2s) = L(2s,Sym^2)
      return {{{{S::zpm(1, 1)}, {S::sym(1)}, {S::sym(0), 2}}, {{S::sym(2), 2}}}};
    case IdentityId::SymMinus:
      // Z_m^-(s) L(s,Sym^{m-2}) = L(s,Sym^m)
      return {{{{S::zpm(m, -1)}, {S::sym(m - 2)}}, {{S::sym(m)}}}};
    case IdentityId::SymPlus:
      // Z_m^+(s) L(2s,Sym^{2m-2}) L(s,Sym^m) = L(2s,Sym^{2m}) L(s,Sym^{m-2})
      return {{{{S::zpm(m, 1)}, {S::sym(2 * m - 2), 2}, {S::sym(m)}}, {{S::sym(2 * m), 2}, {S::sym(m - 2)}}}};
    case IdentityId::Shimura:
      // zeta(s) Z^1(s) = L(s,Sym^2)
      return {{{{S::zeta()}, {S::zexample(1)}}, {{S::sym(2)}}}};
  }
  return {};
}

struct IdentityReport {
  double max_coefficient_error;
};

inline LocalFactor side_factor(const std::vector<ProductTerm>& side, const PrimeAngle& e) {
  LocalFactor acc;
  for (const auto& t : side) {
    LocalFactor f = local_factor(t.spec, e);
    acc = acc * (t.scale == 2 ? f.at_square() : f);
  }
  return acc;
}

// 1 - a(p^2) T + a(p^2) T^2 - T^3 with a(p^2) = a(p)^2 - 1.
inline LocalFactor shimura_cubic(const PrimeAngle& e) {
  const double a2 = e.a * e.a - 1.0;
  return LocalFactor::from_coefficients({Complex(1.0), Complex(-a2), Complex(a2), Complex(-1.0)});
}

inline IdentityReport verify_local_identity(IdentityId id, const PrimeAngle& e, long m = 2) {
  IdentityReport r{0.0};
  for (const auto& eq : identity_equations(id, m))
    r.max_coefficient_error =
        std::max(r.max_coefficient_error, max_coefficient_difference(side_factor(eq.lhs, e), side_factor(eq.rhs, e)));
  if (id == IdentityId::Shimura) {
    const LocalFactor cubic = shimura_cubic(e);
    const LocalFactor lhs = local_factor(EulerProductSpec::zeta(), e) * local_factor(EulerProductSpec::zexample(1), e);
    const LocalFactor sym2 = local_factor(EulerProductSpec::sym(2), e);
    r.max_coefficient_error = std::max({r.max_coefficient_error, max_coefficient_difference(lhs, cubic),
                                        max_coefficient_difference(cubic, sym2)});
  }
  return r;
}

inline IdentityReport verify_local_identity(IdentityId id, std::uint64_t p, const AngleTable& angles, long m = 2) {
  return verify_local_identity(id, angles.at(p), m);
}

// Largest relative mismatch |L - R| / |R| over the equations of an identity,
// each side a product of truncated Euler products with a common cutoff.
inline double truncated_identity_error(IdentityId id, long m, Complex s, std::uint64_t cutoff,
                                       const AngleTable& angles) {
  auto side_value = [&](const std::vector<ProductTerm>& side) {
    Complex v = 1.0;
    for (const auto& t : side) {
      const auto tv = truncated_product(t.spec, s * static_cast<double>(t.scale), cutoff, angles);
      if (tv.pole_at) throw Inconsistency("unexpected pole in unitary family " + t.spec.to_string());
      v *= tv.value;
    }
    return v;
  };
  double err = 0.0;
  for (const auto& eq : identity_equations(id, m)) {
    const Complex l = side_value(eq.lhs), r = side_value(eq.rhs);
    err = std::max(err, std::abs(l - r) / std::abs(r));
  }
  return err;
}

}  // namespace eulerprod
