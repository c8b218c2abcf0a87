#pragma once

// Command-line front end. dispatch() is the whole program; main() only
// forwards to it so tests can drive every subcommand in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <complex>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "boundary_scan.hpp"
#include "character_ring.hpp"
#include "chebyshev_gate.hpp"
#include "errors.hpp"
#include "euler_products.hpp"
#include "polynomial.hpp"
#include "satotate.hpp"
#include "svg.hpp"
#include "table_io.hpp"
#include "tau_series.hpp"

namespace eulerprod::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kInconsistent = 2 };

struct RunConfig {
  std::size_t limit = 0;   // tau table size N
  std::uint64_t cutoff = 0;  // prime cutoff P <= N
  std::string format = "csv";
  std::string out_path;
  std::string cache_dir;
  std::string svg_path;

  std::optional<std::filesystem::path> resolved_cache_dir() const {
    if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
    return std::nullopt;
  }

  void check_formats(std::initializer_list<const char*> allowed) const {
    for (const char* f : allowed)
      if (format == f) return;
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
    throw InvalidInput("--format must be one of: " + list);
  }
};

inline std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

namespace detail {

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidInput("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline void write_svg(const std::string& path, const std::function<void(std::ostream&)>& draw) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot open svg file '" + path + "'");
  draw(f);
}

inline const char* pm(int sign) { return sign > 0 ? "+" : "-"; }

}  // namespace detail

inline int run_tau(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.check_formats({"csv", "json"});
  TableCache cache(cfg.resolved_cache_dir(), err);
  const TauTable t = cache.tau_table(cfg.limit);
  detail::Sink sink(cfg.out_path, out);
  if (cfg.format == "json") sink.os() << tau_json(t).dump(1) << '\n';
  else write_tau_csv(sink.os(), t);
  return kOk;
}

inline int run_angles(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.check_formats({"csv", "json"});
  TableCache cache(cfg.resolved_cache_dir(), err);
  const AngleTable t = cache.angle_table(cfg.cutoff);
  detail::Sink sink(cfg.out_path, out);
  if (cfg.format == "json") sink.os() << angles_json(t).dump(1) << '\n';
  else write_angles_csv(sink.os(), t);
  return kOk;
}

inline int run_satotate(const RunConfig& cfg, std::size_t bins, std::ostream& out, std::ostream& err) {
  cfg.check_formats({"csv", "json"});
  TableCache cache(cfg.resolved_cache_dir(), err);
  const AngleTable t = cache.angle_table(cfg.cutoff);
  const SatoTateReport r = satotate_test(t, bins);
  detail::Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    nlohmann::json j = {{"cutoff", cfg.cutoff}, {"samples", r.samples}, {"bins", bins},
                        {"sup_distance", r.sup_distance}, {"histogram", nlohmann::json::array()}};
    for (const auto& b : r.histogram)
      j["histogram"].push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}, {"model_mass", b.model_mass}});
    sink.os() << j.dump(1) << '\n';
  } else {
    sink.os() << "# primes=" << r.samples << " sup_distance=" << format_double(r.sup_distance) << '\n';
    sink.os() << "lo,hi,count,model_mass\n";
    for (const auto& b : r.histogram)
      sink.os() << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count << ','
                << format_double(b.model_mass) << '\n';
  }
  if (!cfg.svg_path.empty())
    detail::write_svg(cfg.svg_path, [&](std::ostream& os) { svg::satotate_histogram(os, r); });
  return kOk;
}

inline int run_character(const std::string& poly, bool decompose, bool unitary, int sign, std::size_t grid,
                         std::ostream& out) {
  const IntPolynomial f = parse_polynomial(poly);
  const VirtualCharacter h = from_polynomial(f);
  if (!decompose && !unitary) decompose = true;
  if (decompose) out << "f(x) = " << f.to_string() << "\nf(chi_1) = " << h.to_string() << '\n';
  if (unitary) {
    const auto r = unitarity_test({sign, h}, grid);
    out << "H(T) = 1 " << detail::pm(sign) << " (" << h.to_string() << ")T + T^2: ";
    switch (r.verdict) {
      case UnitarityVerdict::Unitary:
        out << "UNITARY (max |h| <= 2" << (r.exact ? ", certified exactly" : "") << ")\n";
        break;
      case UnitarityVerdict::NonUnitary:
        out << "NON-UNITARY witness theta=" << format_double(r.theta) << " h(theta)=" << format_double(r.value)
            << '\n';
        break;
      case UnitarityVerdict::BoundaryAmbiguous:
        out << "BOUNDARY-AMBIGUOUS max |h| within 1e-9 of 2 at theta=" << format_double(r.theta) << '\n';
        break;
    }
  }
  return kOk;
}

inline int run_classify(const std::string& poly, std::ostream& out) {
  const IntPolynomial f = parse_polynomial(poly);
  const Classification c = classify(f);
  if (c.unitary) {
    out << "UNITARY m=" << c.degree << ", Z^±(s,f)=Z_" << c.degree << "^±(s)\n";
    out << "consequence: Z^±(s,f) is meromorphic on C\n";
  } else {
    out << "NON-UNITARY witness=" << c.witness->x.get_str() << " f(witness)=" << c.witness->value.get_str()
        << '\n';
    out << "consequence: natural boundary Re(s)=0\n";
  }
  return kOk;
}

inline int run_lfun(const RunConfig& cfg, const std::string& spec_text, const std::string& s_text,
                    const std::string& order, std::ostream& out, std::ostream& err) {
  cfg.check_formats({"csv", "json"});
  const EulerProductSpec spec = parse_spec(spec_text);
  const std::complex<double> s = parse_complex(s_text);
  if (!(s.real() > 1.0)) throw InvalidInput("--s: need Re(s) > 1");
  TableCache cache(cfg.resolved_cache_dir(), err);
  const AngleTable angles = cache.angle_table(cfg.cutoff);
  const auto reduction = order == "tree" ? Reduction::PairwiseTree : Reduction::Sequential;
  const TruncatedValue v = truncated_product(spec, s, cfg.cutoff, angles, reduction);
  detail::Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    nlohmann::json j = {{"spec", spec.to_string()},
                        {"s", {{"re", s.real()}, {"im", s.imag()}}},
                        {"cutoff", v.cutoff},
                        {"sigma", v.sigma}};
    if (v.pole_at) {
      j["pole_at"] = *v.pole_at;
      j["value"] = nullptr;
      j["tail_hint"] = nullptr;
    } else {
      j["pole_at"] = nullptr;
      j["value"] = {{"re", v.value.real()}, {"im", v.value.imag()}};
      j["tail_hint"] = v.tail_hint;
    }
    sink.os() << j.dump(1) << '\n';
  } else {
    sink.os() << "spec,s_re,s_im,cutoff,sigma,value_re,value_im,tail_hint,pole_at\n";
    sink.os() << spec.to_string() << ',' << format_double(s.real()) << ',' << format_double(s.imag()) << ','
              << v.cutoff << ',' << format_double(v.sigma) << ',';
    if (v.pole_at) sink.os() << ",,," << *v.pole_at << '\n';
    else
      sink.os() << format_double(v.value.real()) << ',' << format_double(v.value.imag()) << ','
                << format_double(v.tail_hint) << ",\n";
  }
  if (v.pole_at) err << "note: local factor at p=" << *v.pole_at << " vanishes at p^{-s}; the product has a pole\n";
  return kOk;
}

inline constexpr double kLocalIdentityTolerance = 1e-12;
inline constexpr double kTruncatedIdentityTolerance = 1e-10;
inline constexpr double kHeckeCrossCheckTolerance = 1e-12;

struct VerifyRow {
  std::string identity;
  long m;
  std::string check;
  double max_error;
  double tolerance;
  bool pass() const { return max_error <= tolerance; }
};

// Runs one identity's local checks over all primes <= cutoff and its
// truncated-product checks at s = 2, 3, 2+i.
inline std::vector<VerifyRow> verify_identity(IdentityId id, long max_m, const AngleTable& angles,
                                              std::uint64_t cutoff, const TauTable* tau) {
  std::vector<VerifyRow> rows;
  std::vector<long> ms;
  if (identity_takes_m(id))
    for (long m = 2; m <= max_m; ++m) ms.push_back(m);
  else
    ms.push_back(id == IdentityId::ZetaSquare ? 0 : id == IdentityId::Z1Plus ? 1 : 2);
  for (long m : ms) {
    double local = 0.0;
    for (const auto& e : angles.entries()) {
      if (e.p > cutoff) break;
      local = std::max(local, verify_local_identity(id, e, m).max_coefficient_error);
    }
    rows.push_back({identity_name(id), m, "local", local, kLocalIdentityTolerance});
    for (auto s : {std::complex<double>(2.0, 0.0), std::complex<double>(3.0, 0.0), std::complex<double>(2.0, 1.0)}) {
      const double e = truncated_identity_error(id, m, s, cutoff, angles);
      std::ostringstream label;
      label << "s=" << format_double(s.real());
      if (s.imag() != 0.0) label << "+" << format_double(s.imag()) << "i";
      rows.push_back({identity_name(id), m, label.str(), e, kTruncatedIdentityTolerance});
    }
  }
  if (id == IdentityId::Shimura && tau) {
    // a(p^2) = a(p)^2 - 1 against tau(p^2) p^{-11} from the series, where available
    double worst = 0.0;
    for (const auto& e : angles.entries()) {
      if (e.p > cutoff || std::uint64_t{e.p} * e.p > tau->limit()) break;
      const double from_series = normalize(tau->at(std::uint64_t{e.p} * e.p), e.p, 22);
      worst = std::max(worst, std::abs(from_series - (e.a * e.a - 1.0)));
    }
    rows.push_back({identity_name(id), 2, "a(p^2) vs tau(p^2)", worst, kHeckeCrossCheckTolerance});
  }
  return rows;
}

inline int run_verify(const RunConfig& cfg, const std::string& identity, long max_m, std::ostream& out,
                      std::ostream& err) {
  cfg.check_formats({"csv", "json", "table"});
  if (max_m < 2 || max_m > kMaxIdentityM) throw InvalidInput("--max-m must be in [2, 10]");
  std::vector<IdentityId> ids;
  if (identity == "all")
    ids = {IdentityId::ZetaSquare, IdentityId::Z1Plus, IdentityId::SymMinus, IdentityId::SymPlus,
           IdentityId::Shimura};
  else
    ids = {parse_identity(identity)};
  TableCache cache(cfg.resolved_cache_dir(), err);
  const TauTable tau = cache.tau_table(cfg.limit);
  const AngleTable angles = build_angles(tau, cfg.cutoff);

  std::vector<VerifyRow> rows;
  for (auto id : ids) {
    auto r = verify_identity(id, max_m, angles, cfg.cutoff, &tau);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  bool all_pass = true;
  detail::Sink sink(cfg.out_path, out);
  auto& os = sink.os();
  if (cfg.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"identity", r.identity}, {"m", r.m}, {"check", r.check}, {"max_error", r.max_error},
                     {"tolerance", r.tolerance}, {"pass", r.pass()}});
      all_pass = all_pass && r.pass();
    }
    os << arr.dump(1) << '\n';
  } else if (cfg.format == "csv") {
    os << "identity,m,check,max_error,tolerance,result\n";
    for (const auto& r : rows) {
      os << r.identity << ',' << r.m << ',' << r.check << ',' << format_double(r.max_error) << ','
         << format_double(r.tolerance) << ',' << (r.pass() ? "PASS" : "FAIL") << '\n';
      all_pass = all_pass && r.pass();
    }
  } else {
    os << std::left << std::setw(12) << "identity" << std::setw(4) << "m" << std::setw(20) << "check"
       << std::setw(14) << "max_error" << std::setw(10) << "tol" << "result\n";
    for (const auto& r : rows) {
      std::ostringstream e, t;
      e << std::scientific << std::setprecision(3) << r.max_error;
      t << std::scientific << std::setprecision(0) << r.tolerance;
      os << std::left << std::setw(12) << r.identity << std::setw(4) << r.m << std::setw(20) << r.check
         << std::setw(14) << e.str() << std::setw(10) << t.str() << (r.pass() ? "PASS" : "FAIL") << '\n';
      all_pass = all_pass && r.pass();
    }
  }
  return all_pass ? kOk : kInconsistent;
}

inline int run_boundary(const RunConfig& cfg, const std::string& poly, int sign, std::ostream& out,
                        std::ostream& err) {
  cfg.check_formats({"csv", "json"});
  const IntPolynomial f = parse_polynomial(poly);
  TableCache cache(cfg.resolved_cache_dir(), err);
  const AngleTable angles = cache.angle_table(cfg.cutoff);
  const auto pts = zero_cloud(f, sign, cfg.cutoff, angles);
  const auto summary = cloud_summary(pts);
  detail::Sink sink(cfg.out_path, out);
  if (cfg.format == "json") {
    nlohmann::json j = {{"poly", f.to_string()}, {"sign", detail::pm(sign)}, {"cutoff", cfg.cutoff},
                        {"count_offaxis", summary.count_offaxis}, {"points", nlohmann::json::array()}};
    j["min_positive_sigma"] =
        std::isfinite(summary.min_positive_sigma) ? nlohmann::json(summary.min_positive_sigma) : nlohmann::json();
    j["max_sigma"] = summary.max_sigma;
    for (const auto& p : pts)
      j["points"].push_back({{"p", p.p}, {"root_modulus", p.root_modulus}, {"sigma", p.sigma}, {"t", p.t}});
    sink.os() << j.dump(1) << '\n';
  } else {
    sink.os() << "p,root_modulus,sigma,t\n";
    for (const auto& p : pts)
      sink.os() << p.p << ',' << format_double(p.root_modulus) << ',' << format_double(p.sigma) << ','
                << format_double(p.t) << '\n';
  }
  err << "off-axis zeros: " << summary.count_offaxis << " of " << pts.size();
  if (std::isfinite(summary.min_positive_sigma))
    err << ", min positive sigma " << format_double(summary.min_positive_sigma);
  err << ", max sigma " << format_double(summary.max_sigma) << " (numerical evidence only)\n";
  if (!cfg.svg_path.empty())
    detail::write_svg(cfg.svg_path, [&](std::ostream& os) {
      svg::zero_cloud_scatter(os, pts,
                              "zeros of 1" + std::string(detail::pm(sign)) + "f(a(p))T+T^2, f=" + f.to_string());
    });
  return kOk;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramanujan tau, Sato-Tate angles and Euler products of degree two", "eulerprod"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached tau/angle tables (env EULERPROD_CACHE_DIR)");

  auto* tau_cmd = app.add_subcommand("tau", "Exact tau(n) for n <= N");
  tau_cmd->add_option("--limit", cfg.limit, "N")->required();
  tau_cmd->add_option("--format", cfg.format, "csv|json");
  tau_cmd->add_option("--out", cfg.out_path, "Output file");

  auto* angles_cmd = app.add_subcommand("angles", "a(p) and theta(p) for primes p <= P");
  angles_cmd->add_option("--limit", cfg.cutoff, "P")->required();
  angles_cmd->add_option("--format", cfg.format, "csv|json");
  angles_cmd->add_option("--out", cfg.out_path, "Output file");

  std::size_t bins = 50;
  auto* st_cmd = app.add_subcommand("satotate", "Compare theta(p) with the Sato-Tate measure");
  st_cmd->add_option("--limit", cfg.cutoff, "P")->required();
  st_cmd->add_option("--bins", bins, "Histogram bins");
  st_cmd->add_option("--svg", cfg.svg_path, "Write histogram SVG");
  st_cmd->add_option("--format", cfg.format, "csv|json");
  st_cmd->add_option("--out", cfg.out_path, "Output file");

  std::string poly;
  bool decompose = false, unitary = false;
  std::string sign_text = "-";
  std::size_t grid = 4096;
  auto* ch_cmd = app.add_subcommand("character", "Virtual character f(chi_1) and the unitarity test");
  ch_cmd->add_option("--poly", poly, "Integer polynomial, e.g. \"x^3-3x\"")->required();
  ch_cmd->add_flag("--decompose", decompose, "Print the chi-decomposition");
  ch_cmd->add_flag("--unitary", unitary, "Decide |f(2cos theta)| <= 2");
  ch_cmd->add_option("--sign", sign_text, "+ or -");
  ch_cmd->add_option("--grid", grid, "Grid points on [0, pi]");

  auto* cl_cmd = app.add_subcommand("classify", "Is the monic f equal to 2T_m(x/2)?");
  cl_cmd->add_option("--poly", poly, "Monic integer polynomial")->required();

  std::string spec_text, s_text = "2", order = "seq";
  auto* lf_cmd = app.add_subcommand("lfun", "Truncated Euler product at Re(s) > 1");
  lf_cmd->add_option("--spec", spec_text, "zeta|sym:M|zpm:M:+-|zf:POLY:+-|zex:M")->required();
  lf_cmd->add_option("--s", s_text, "RE[,IM]");
  lf_cmd->add_option("--cutoff", cfg.cutoff, "Prime cutoff P")->required();
  lf_cmd->add_option("--order", order, "seq|tree")->check(CLI::IsMember({"seq", "tree"}));
  lf_cmd->add_option("--format", cfg.format, "csv|json");
  lf_cmd->add_option("--out", cfg.out_path, "Output file");

  std::string identity = "all";
  long max_m = 6;
  auto* vf_cmd = app.add_subcommand("verify", "Check the Euler product factorization identities");
  vf_cmd->add_option("--identity", identity, "zeta-square|z1-plus|sym-minus|sym-plus|shimura|all");
  vf_cmd->add_option("--cutoff", cfg.cutoff, "Prime cutoff P")->required();
  vf_cmd->add_option("--max-m", max_m, "Largest m for sym-minus/sym-plus");
  vf_cmd->add_option("--limit", cfg.limit, "tau table size (default: cutoff)");
  vf_cmd->add_option("--format", cfg.format, "table|csv|json");
  vf_cmd->add_option("--out", cfg.out_path, "Output file");

  auto* bd_cmd = app.add_subcommand("boundary", "s-plane zeros of 1 +- f(a(p))T + T^2");
  bd_cmd->add_option("--poly", poly, "Integer polynomial")->required();
  bd_cmd->add_option("--sign", sign_text, "+ or -");
  bd_cmd->add_option("--cutoff", cfg.cutoff, "Prime cutoff P")->required();
  bd_cmd->add_option("--svg", cfg.svg_path, "Write scatter SVG");
  bd_cmd->add_option("--format", cfg.format, "csv|json");
  bd_cmd->add_option("--out", cfg.out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kRejected;
  }

  try {
    if (*tau_cmd) {
      if (cfg.limit < 1) throw InvalidInput("--limit must be >= 1");
      return run_tau(cfg, out, err);
    }
    if (cfg.cutoff == 0 && !*cl_cmd && !*ch_cmd) throw InvalidInput("cutoff/limit must be >= 1");
    if (*angles_cmd) return run_angles(cfg, out, err);
    if (*st_cmd) return run_satotate(cfg, bins, out, err);
    if (*ch_cmd) return run_character(poly, decompose, unitary, parse_sign(sign_text), grid, out);
    if (*cl_cmd) return run_classify(poly, out);
    if (*lf_cmd) return run_lfun(cfg, spec_text, s_text, order, out, err);
    if (*vf_cmd) {
      if (cfg.format == "csv" && vf_cmd->count("--format") == 0) cfg.format = "table";
      if (cfg.limit == 0) cfg.limit = cfg.cutoff;
      if (cfg.cutoff > cfg.limit) throw InvalidInput("--cutoff must not exceed --limit");
      return run_verify(cfg, identity, max_m, out, err);
    }
    if (*bd_cmd) return run_boundary(cfg, poly, parse_sign(sign_text), out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const Inconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInconsistent;
  }
  return kRejected;
}

}  // namespace eulerprod::cli
