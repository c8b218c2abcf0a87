#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "satotate.hpp"
#include "tau_series.hpp"

namespace eulerprod {

// Shortest decimal text that round-trips to the same double, locale-independent.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw InvalidInput("bad number '" + s + "'");
  return v;
}

inline void write_tau_csv(std::ostream& os, const TauTable& t) {
  os << "n,tau\n";
  for (std::size_t n = 1; n <= t.limit(); ++n) os << n << ',' << t.at(n).get_str() << '\n';
}

// tau values are decimal strings: they leave the 64-bit range at n = 10^4 or so.
inline nlohmann::json tau_json(const TauTable& t) {
  auto arr = nlohmann::json::array();
  for (std::size_t n = 1; n <= t.limit(); ++n) arr.push_back({{"n", n}, {"tau", t.at(n).get_str()}});
  return arr;
}

inline void write_angles_csv(std::ostream& os, const AngleTable& t) {
  os << "p,a,theta\n";
  for (const auto& e : t.entries()) os << e.p << ',' << format_double(e.a) << ',' << format_double(e.theta) << '\n';
}

inline nlohmann::json angles_json(const AngleTable& t) {
  auto arr = nlohmann::json::array();
  for (const auto& e : t.entries()) arr.push_back({{"p", e.p}, {"a", e.a}, {"theta", e.theta}});
  return arr;
}

inline std::optional<TauTable> read_tau_cache(std::istream& is, std::size_t want) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# tau limit=", 0) != 0) return std::nullopt;
  const std::size_t limit = std::stoull(line.substr(12));
  if (limit < want) return std::nullopt;
  std::vector<mpz_class> values;
  values.reserve(want);
  while (values.size() < want && std::getline(is, line)) {
    mpz_class v;
    if (v.set_str(line, 10) != 0) throw InvalidInput("corrupt tau cache line '" + line + "'");
    values.push_back(std::move(v));
  }
  if (values.size() != want) throw InvalidInput("tau cache truncated");
  return TauTable::from_values(std::move(values));
}

inline void write_tau_cache(std::ostream& os, const TauTable& t) {
  os << "# tau limit=" << t.limit() << '\n';
  for (std::size_t n = 1; n <= t.limit(); ++n) os << t.at(n).get_str() << '\n';
}

inline std::optional<AngleTable> read_angle_cache(std::istream& is, std::uint64_t want) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# angles cutoff=", 0) != 0) return std::nullopt;
  const std::uint64_t cutoff = std::stoull(line.substr(16));
  if (cutoff < want) return std::nullopt;
  if (!std::getline(is, line) || line != "p,a,theta") throw InvalidInput("corrupt angle cache header");
  std::vector<PrimeAngle> entries;
  while (std::getline(is, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 3) throw InvalidInput("corrupt angle cache line '" + line + "'");
    const auto p = std::stoull(f[0]);
    if (p > want) break;
    entries.push_back({static_cast<Prime>(p), parse_double(f[1]), parse_double(f[2])});
  }
  return AngleTable(std::move(entries), want);
}

inline void write_angle_cache(std::ostream& os, const AngleTable& t) {
  os << "# angles cutoff=" << t.cutoff() << '\n';
  write_angles_csv(os, t);
}

inline constexpr const char* kCacheDirEnv = "EULERPROD_CACHE_DIR";

// Persists tau and angle tables under a directory. A cached table at least as
// large as the request is reused (truncated); a missing cache is recomputed
// silently and a corrupt one is recomputed with a warning.
class TableCache {
 public:
  TableCache(std::optional<std::filesystem::path> dir, std::ostream& warnings)
      : dir_(std::move(dir)), warn_(warnings) {}

  const std::optional<std::filesystem::path>& dir() const { return dir_; }

  TauTable tau_table(std::size_t limit, const ExpansionOptions& opts = {}) {
    if (dir_) {
      const auto path = *dir_ / "tau.txt";
      if (std::ifstream in{path}) {
        try {
          if (auto t = read_tau_cache(in, limit)) return std::move(*t);
        } catch (const std::exception& ex) {
          warn_ << "warning: ignoring corrupt cache " << path.string() << ": " << ex.what() << '\n';
        }
      }
    }
    TauTable t = expand_delta(limit, opts);
    if (dir_) store(*dir_ / "tau.txt", [&](std::ostream& os) { write_tau_cache(os, t); });
    return t;
  }

  AngleTable angle_table(std::uint64_t cutoff, const ExpansionOptions& opts = {}) {
    if (dir_) {
      const auto path = *dir_ / "angles.csv";
      if (std::ifstream in{path}) {
        try {
          if (auto t = read_angle_cache(in, cutoff)) return std::move(*t);
        } catch (const std::exception& ex) {
          warn_ << "warning: ignoring corrupt cache " << path.string() << ": " << ex.what() << '\n';
        }
      }
    }
    AngleTable t = build_angles(tau_table(cutoff, opts), cutoff);
    if (dir_) store(*dir_ / "angles.csv", [&](std::ostream& os) { write_angle_cache(os, t); });
    return t;
  }

 private:
  template <typename Writer>
  void store(const std::filesystem::path& path, Writer&& write) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) {
        warn_ << "warning: cannot write cache " << path.string() << '\n';
        return;
      }
      write(out);
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) warn_ << "warning: cannot write cache " << path.string() << ": " << ec.message() << '\n';
  }

  std::optional<std::filesystem::path> dir_;
  std::ostream& warn_;
};

}  // namespace eulerprod
