#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "uavscf/config.hpp"

namespace uavscf::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Locale-independent shortest round-trip formatting.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Cell of a CSV table.
using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

inline std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c));
  if (std::holds_alternative<std::int64_t>(c))
    return std::to_string(std::get<std::int64_t>(c));
  return std::to_string(std::get<std::uint64_t>(c));
}

// RFC 4180: CRLF records, fields quoted when they contain separators,
// quotes doubled. Numbers always use '.' as the decimal separator.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size())
      throw IoError("csv row width " + std::to_string(row.size()) +
                    " does not match header width " +
                    std::to_string(header_.size()));
    rows_.push_back(std::move(row));
  }

  std::string to_string() const {
    std::string out;
    append_record(out, header_);
    for (const auto& row : rows_) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& c : row) cells.push_back(cell_to_string(c));
      append_record(out, cells);
    }
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    std::string s = to_string();
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!f) throw IoError("write failed for " + path.string());
  }

  std::size_t row_count() const { return rows_.size(); }

 private:
  static void append_record(std::string& out,
                            const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      out += escape(cells[i]);
    }
    out += "\r\n";
  }

  static std::string escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += "\"\"";
      else q.push_back(ch);
    }
    q += "\"";
    return q;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// ---------------------------------------------------------------------------
// Config <-> JSON.
// ---------------------------------------------------------------------------

inline nlohmann::json config_to_json(const NetworkConfig& cfg) {
  return nlohmann::json{
      {"n", cfg.n},          {"s_m", cfg.s_m},
      {"v_mps", cfg.v_mps},  {"t0_s", cfg.t0_s},
      {"h_m", cfg.h_m},      {"alpha", cfg.alpha},
      {"dim", to_string(cfg.dim)},
      {"c0", cfg.c0},        {"c2", cfg.c2},
      {"c4", cfg.c4},        {"c6", cfg.c6},
      {"c5", cfg.c5},        {"c9", cfg.c9},
      {"kappa", cfg.kappa},  {"J_m", cfg.j_m},
      {"seed", cfg.seed}};
}

inline NetworkConfig config_from_json(const nlohmann::json& j) {
  NetworkConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("n", cfg.n);
  get("s_m", cfg.s_m);
  get("v_mps", cfg.v_mps);
  get("t0_s", cfg.t0_s);
  get("h_m", cfg.h_m);
  get("alpha", cfg.alpha);
  if (j.contains("dim")) {
    std::string d = j.at("dim").get<std::string>();
    if (d == "3d") cfg.dim = Dim::three_d;
    else if (d == "2d") cfg.dim = Dim::two_d;
    else throw ConfigError("dim must be \"3d\" or \"2d\"; got \"" + d + "\"");
  }
  get("c0", cfg.c0);
  get("c2", cfg.c2);
  get("c4", cfg.c4);
  get("c6", cfg.c6);
  get("c5", cfg.c5);
  get("c9", cfg.c9);
  get("kappa", cfg.kappa);
  get("J_m", cfg.j_m);
  get("seed", cfg.seed);
  return cfg;
}

inline NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      e.what());
  }
  return config_from_json(j);
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

inline void write_json(const std::filesystem::path& path,
                       const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

inline std::string build_version() {
#ifdef UAVSCF_GIT_DESCRIBE
  return UAVSCF_GIT_DESCRIBE;
#else
  return "unknown";
#endif
}

}  // namespace uavscf::io
