// Copyright 2026 The vecvortex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Declarative experiment description and its text format.
//
// The format is a small TOML subset: flat [grid], [source], [model] and
// [output] tables, one [[chain]] table per optical element, `key = value`
// lines, `#` comments. Values are integers, reals, "strings", or one-line
// [arrays]. See README.md for the key reference.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vecvortex/elements.hpp"
#include "vecvortex/grid_field.hpp"
#include "vecvortex/polarization.hpp"

namespace vecvortex {

/// Malformed or semantically invalid configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Measurement { kPowers, kStokes, kDop, kLinearEntropy, kDensityMatrix, kPetals };

inline constexpr std::array<Measurement, 6> kAllMeasurements{Measurement::kPowers,        Measurement::kStokes,
                                                             Measurement::kDop,           Measurement::kLinearEntropy,
                                                             Measurement::kDensityMatrix, Measurement::kPetals};

inline std::string_view measurement_name(Measurement m) {
    switch (m) {
        case Measurement::kPowers: return "powers";
        case Measurement::kStokes: return "stokes";
        case Measurement::kDop: return "dop";
        case Measurement::kLinearEntropy: return "linear_entropy";
        case Measurement::kDensityMatrix: return "density_matrix";
        case Measurement::kPetals: return "petals";
    }
    return "?";
}

enum class SourceKind { kBeam, kSagnac };
enum class VortexModel { kModeLadder, kPhaseMask };

inline std::string_view source_kind_name(SourceKind k) { return k == SourceKind::kBeam ? "beam" : "sagnac"; }
inline std::string_view vortex_model_name(VortexModel m) {
    return m == VortexModel::kModeLadder ? "ladder" : "phase_mask";
}

struct SourceSpec {
    SourceKind kind = SourceKind::kBeam;
    JonesVector polarization{1.0, 0.0};  // beam only
    int mode = 0;                        // beam: LG charge; sagnac: SPP order
    double waist = 1.0;
    friend bool operator==(const SourceSpec &, const SourceSpec &) = default;
};

struct PipelineConfig {
    std::string name = "run";
    GridSpec grid{};
    SourceSpec source{};
    VortexModel model = VortexModel::kModeLadder;
    std::vector<ElementSpec> chain;
    std::vector<Measurement> measurements{kAllMeasurements.begin(), kAllMeasurements.end()};
    std::vector<Basis> images;
    std::string output_dir = ".";

    bool wants(Measurement m) const { return std::find(measurements.begin(), measurements.end(), m) != measurements.end(); }
    friend bool operator==(const PipelineConfig &, const PipelineConfig &) = default;
};

namespace config_detail {

struct Value;
using Array = std::vector<Value>;
struct Value {
    std::variant<std::int64_t, double, std::string, Array> data;
    int line = 0;
};

struct Table {
    std::map<std::string, Value> entries;
    int line = 0;
};

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] inline void syntax_error(int line, const std::string &msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

/// Parses one value starting at s[pos]; advances pos past it.
inline Value parse_value(std::string_view s, std::size_t &pos, int line) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size()) syntax_error(line, "missing value");
    if (s[pos] == '"') {
        std::string out;
        ++pos;
        while (true) {
            if (pos >= s.size()) syntax_error(line, "unterminated string");
            char c = s[pos++];
            if (c == '"') break;
            if (c == '\\') {
                if (pos >= s.size()) syntax_error(line, "unterminated escape");
                char e = s[pos++];
                if (e == '"' || e == '\\') {
                    out.push_back(e);
                } else if (e == 'n') {
                    out.push_back('\n');
                } else {
                    syntax_error(line, std::string("unsupported escape \\") + e);
                }
                continue;
            }
            out.push_back(c);
        }
        return {out, line};
    }
    if (s[pos] == '[') {
        ++pos;
        Array items;
        while (true) {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
            if (pos >= s.size()) syntax_error(line, "unterminated array");
            if (s[pos] == ']') {
                ++pos;
                break;
            }
            items.push_back(parse_value(s, pos, line));
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
            } else if (pos < s.size() && s[pos] == ']') {
                ++pos;
                break;
            } else {
                syntax_error(line, "expected ',' or ']' in array");
            }
        }
        return {items, line};
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != ',' && s[end] != ']' && s[end] != ' ' && s[end] != '\t') ++end;
    const std::string_view tok = s.substr(pos, end - pos);
    const bool looks_real = tok.find_first_of(".eEn") != std::string_view::npos;  // n: nan/inf are rejected below
    if (!looks_real) {
        std::int64_t iv = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc{} && p == tok.data() + tok.size()) {
            pos = end;
            return {iv, line};
        }
    }
    double dv = 0.0;
    const char *first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [p, ec] = std::from_chars(first, tok.data() + tok.size(), dv);
    if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(dv)) {
        syntax_error(line, "cannot parse value '" + std::string(tok) + "'");
    }
    pos = end;
    return {dv, line};
}

struct Document {
    std::map<std::string, Table> sections;
    std::vector<Table> chain;
};

inline Document parse_document(std::string_view text) {
    static const std::set<std::string, std::less<>> kSections{"grid", "source", "model", "output"};
    Document doc;
    Table *current = nullptr;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;

        // Strip comments outside strings.
        bool in_str = false;
        for (std::size_t k = 0; k < raw.size(); ++k) {
            if (raw[k] == '"' && (k == 0 || raw[k - 1] != '\\')) in_str = !in_str;
            if (raw[k] == '#' && !in_str) {
                raw = raw.substr(0, k);
                break;
            }
        }
        const std::string_view line = trim(raw);
        if (line.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        if (line.starts_with("[[")) {
            if (line != "[[chain]]") syntax_error(line_no, "unknown array table '" + std::string(line) + "'");
            doc.chain.push_back(Table{{}, line_no});
            current = &doc.chain.back();
        } else if (line.front() == '[') {
            if (line.back() != ']') syntax_error(line_no, "malformed section header");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            if (!kSections.contains(name)) syntax_error(line_no, "unknown section [" + name + "]");
            if (doc.sections.contains(name)) syntax_error(line_no, "duplicate section [" + name + "]");
            current = &doc.sections[name];
            current->line = line_no;
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) syntax_error(line_no, "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            if (key.empty() || key.find_first_of(" \t\"") != std::string::npos) syntax_error(line_no, "invalid key");
            if (current == nullptr) syntax_error(line_no, "key '" + key + "' outside any section");
            std::string_view rest = line.substr(eq + 1);
            std::size_t pos = 0;
            Value v = parse_value(rest, pos, line_no);
            if (!trim(rest.substr(pos)).empty()) syntax_error(line_no, "trailing characters after value");
            if (current->entries.contains(key)) syntax_error(line_no, "duplicate key '" + key + "'");
            current->entries.emplace(key, std::move(v));
        }
        if (nl == text.size()) break;
    }
    return doc;
}

/// Typed, path-annotated access to one table.
class Reader {
  public:
    Reader(const Table &t, std::string path) : table_(t), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string &key, const std::string &msg) const {
        auto it = table_.entries.find(key);
        const int line = it != table_.entries.end() ? it->second.line : table_.line;
        throw ConfigError(key_path(key) + ": " + msg + (line > 0 ? " (line " + std::to_string(line) + ")" : ""));
    }

    std::string key_path(const std::string &key) const { return path_ + "." + key; }
    bool has(const std::string &key) const { return table_.entries.contains(key); }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        for (const auto &[k, v] : table_.entries) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(k, "unknown key");
        }
    }

    std::optional<std::int64_t> integer(const std::string &key) const {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end()) return std::nullopt;
        if (auto *i = std::get_if<std::int64_t>(&it->second.data)) return *i;
        fail(key, "expected an integer");
    }

    std::optional<double> real(const std::string &key) const {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end()) return std::nullopt;
        return as_real(it->second, key);
    }

    std::optional<std::string> string(const std::string &key) const {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end()) return std::nullopt;
        if (auto *s = std::get_if<std::string>(&it->second.data)) return *s;
        fail(key, "expected a string");
    }

    std::optional<std::vector<std::string>> strings(const std::string &key) const {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end()) return std::nullopt;
        auto *arr = std::get_if<Array>(&it->second.data);
        if (!arr) fail(key, "expected an array of strings");
        std::vector<std::string> out;
        for (const Value &v : *arr) {
            auto *s = std::get_if<std::string>(&v.data);
            if (!s) fail(key, "expected an array of strings");
            out.push_back(*s);
        }
        return out;
    }

    std::optional<std::vector<double>> reals(const std::string &key) const {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end()) return std::nullopt;
        auto *arr = std::get_if<Array>(&it->second.data);
        if (!arr) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (const Value &v : *arr) out.push_back(as_real(v, key));
        return out;
    }

  private:
    double as_real(const Value &v, const std::string &key) const {
        if (auto *d = std::get_if<double>(&v.data)) return *d;
        if (auto *i = std::get_if<std::int64_t>(&v.data)) return static_cast<double>(*i);
        fail(key, "expected a number");
    }

    const Table &table_;
    std::string path_;
};

inline int read_charge(const Reader &r, const std::string &key, int fallback) {
    auto v = r.integer(key);
    if (!v) return fallback;
    if (std::llabs(*v) > kMaxCharge) r.fail(key, "|" + key + "| must be <= " + std::to_string(kMaxCharge));
    return static_cast<int>(*v);
}

inline std::optional<double> read_angle(const Reader &r, const std::string &key) {
    const bool rad = r.has(key), deg = r.has(key + "_deg");
    if (rad && deg) r.fail(key, "give either " + key + " or " + key + "_deg, not both");
    if (rad) return r.real(key);
    if (deg) return *r.real(key + "_deg") * std::numbers::pi / 180.0;
    return std::nullopt;
}

inline JonesVector read_jones(const Reader &r, const std::string &name_key, const std::string &vec_key,
                              std::optional<JonesVector> fallback) {
    if (r.has(name_key) && r.has(vec_key)) r.fail(name_key, "give either " + name_key + " or " + vec_key);
    JonesVector j;
    if (auto name = r.string(name_key)) {
        auto b = parse_basis(*name);
        if (!b) r.fail(name_key, "unknown polarization '" + *name + "' (expected H, V, D, A, L or R)");
        j = basis(*b);
    } else if (auto vec = r.reals(vec_key)) {
        if (vec->size() != 4) r.fail(vec_key, "expected [h_re, h_im, v_re, v_im]");
        j = {{(*vec)[0], (*vec)[1]}, {(*vec)[2], (*vec)[3]}};
    } else if (fallback) {
        return *fallback;
    } else {
        r.fail(name_key, "missing (give " + name_key + " or " + vec_key + ")");
    }
    if (std::abs(j.norm_sq() - 1.0) > 1e-9) r.fail(vec_key, "Jones vector must be normalized");
    return j;
}

inline ElementSpec read_element(const Table &t, std::size_t index) {
    const Reader r(t, "chain[" + std::to_string(index) + "]");
    auto type = r.string("type");
    if (!type) r.fail("type", "missing element type");
    if (*type == "HWP" || *type == "QWP") {
        r.allow_only({"type", "theta", "theta_deg"});
        auto theta = read_angle(r, "theta");
        if (!theta) r.fail("theta", "missing waveplate angle");
        if (*type == "HWP") return element::Hwp{*theta};
        return element::Qwp{*theta};
    }
    if (*type == "SPP") {
        r.allow_only({"type", "m"});
        if (!r.has("m")) r.fail("m", "missing SPP order");
        return element::Spp{read_charge(r, "m", 0)};
    }
    if (*type == "SLM") {
        r.allow_only({"type", "m", "phi", "phi_deg"});
        if (!r.has("m")) r.fail("m", "missing SLM hologram charge");
        return element::Slm{read_charge(r, "m", 0), read_angle(r, "phi").value_or(kDefaultSlmDelay)};
    }
    if (*type == "Projector") {
        r.allow_only({"type", "basis", "jones"});
        return element::Projector{read_jones(r, "basis", "jones", std::nullopt)};
    }
    r.fail("type", "unknown element '" + *type + "' (expected HWP, QWP, SPP, SLM or Projector)");
}

}  // namespace config_detail

inline PipelineConfig parse_config(std::string_view text) {
    using namespace config_detail;
    const Document doc = parse_document(text);
    PipelineConfig cfg;
    static const Table kEmpty{};
    auto section = [&](const std::string &name) -> const Table & {
        auto it = doc.sections.find(name);
        return it == doc.sections.end() ? kEmpty : it->second;
    };

    {
        const Reader r(section("grid"), "grid");
        r.allow_only({"n", "extent"});
        const auto n = r.integer("n").value_or(cfg.grid.n);
        const double extent = r.real("extent").value_or(cfg.grid.extent);
        if (n < 16 || n % 2 != 0 || n > 8192) r.fail("n", "grid.n must be even, >= 16 (and <= 8192)");
        if (extent < 3.0) r.fail("extent", "grid.extent must be >= 3");
        cfg.grid = make_grid(static_cast<int>(n), extent);
    }
    {
        const Reader r(section("source"), "source");
        const std::string kind = r.string("kind").value_or("beam");
        if (kind == "beam") {
            r.allow_only({"kind", "polarization", "jones", "mode", "waist"});
            cfg.source.kind = SourceKind::kBeam;
            cfg.source.polarization = read_jones(r, "polarization", "jones", basis(Basis::kH));
        } else if (kind == "sagnac") {
            r.allow_only({"kind", "mode", "waist"});
            cfg.source.kind = SourceKind::kSagnac;
        } else {
            r.fail("kind", "unknown source kind '" + kind + "' (expected beam or sagnac)");
        }
        cfg.source.mode = read_charge(r, "mode", 0);
        cfg.source.waist = r.real("waist").value_or(1.0);
        if (!(cfg.source.waist > 0.0)) r.fail("waist", "waist must be positive");
    }
    {
        const Reader r(section("model"), "model");
        r.allow_only({"elements"});
        const std::string m = r.string("elements").value_or("ladder");
        if (m == "ladder") {
            cfg.model = VortexModel::kModeLadder;
        } else if (m == "phase_mask") {
            cfg.model = VortexModel::kPhaseMask;
        } else {
            r.fail("elements", "expected \"ladder\" or \"phase_mask\"");
        }
    }
    if (doc.chain.size() > kMaxChainLength) {
        throw ConfigError("chain: at most " + std::to_string(kMaxChainLength) + " elements allowed");
    }
    for (std::size_t k = 0; k < doc.chain.size(); ++k) cfg.chain.push_back(read_element(doc.chain[k], k));
    {
        const Reader r(section("output"), "output");
        r.allow_only({"name", "dir", "measurements", "images"});
        cfg.name = r.string("name").value_or(cfg.name);
        if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
            r.fail("name", "must be a non-empty file-name stem");
        }
        cfg.output_dir = r.string("dir").value_or(cfg.output_dir);
        if (auto ms = r.strings("measurements")) {
            cfg.measurements.clear();
            for (const std::string &m : *ms) {
                auto it = std::find_if(kAllMeasurements.begin(), kAllMeasurements.end(),
                                       [&](Measurement x) { return measurement_name(x) == m; });
                if (it == kAllMeasurements.end()) r.fail("measurements", "unknown measurement '" + m + "'");
                if (!cfg.wants(*it)) cfg.measurements.push_back(*it);
            }
        }
        if (auto imgs = r.strings("images")) {
            for (const std::string &b : *imgs) {
                auto basis_id = parse_basis(b);
                if (!basis_id) r.fail("images", "unknown projection '" + b + "'");
                if (std::find(cfg.images.begin(), cfg.images.end(), *basis_id) == cfg.images.end()) {
                    cfg.images.push_back(*basis_id);
                }
            }
        }
    }
    return cfg;
}

inline PipelineConfig load_config(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config file '" + path.string() + "': file not found or unreadable");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

/// Shortest decimal that parses back to exactly v.
inline std::string format_real(double v) {
    if (v == 0.0) return "0";  // -0 would not survive an integer-looking token
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace config_detail {
inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out + "\"";
}

inline std::string jones_array(const JonesVector &j) {
    return "[" + format_real(j.h.real()) + ", " + format_real(j.h.imag()) + ", " + format_real(j.v.real()) + ", " +
           format_real(j.v.imag()) + "]";
}
}  // namespace config_detail

/// Canonical text with parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const PipelineConfig &cfg) {
    using config_detail::jones_array;
    using config_detail::quote;
    std::ostringstream os;
    os << "[grid]\nn = " << cfg.grid.n << "\nextent = " << format_real(cfg.grid.extent) << "\n\n";
    os << "[source]\nkind = " << quote(source_kind_name(cfg.source.kind)) << "\n";
    if (cfg.source.kind == SourceKind::kBeam) os << "jones = " << jones_array(cfg.source.polarization) << "\n";
    os << "mode = " << cfg.source.mode << "\nwaist = " << format_real(cfg.source.waist) << "\n\n";
    os << "[model]\nelements = " << quote(vortex_model_name(cfg.model)) << "\n\n";
    for (const ElementSpec &e : cfg.chain) {
        os << "[[chain]]\ntype = " << quote(element_name(e)) << "\n";
        if (auto *w = std::get_if<element::Hwp>(&e)) os << "theta = " << format_real(w->theta) << "\n";
        if (auto *q = std::get_if<element::Qwp>(&e)) os << "theta = " << format_real(q->theta) << "\n";
        if (auto *s = std::get_if<element::Spp>(&e)) os << "m = " << s->m << "\n";
        if (auto *s = std::get_if<element::Slm>(&e)) os << "m = " << s->m << "\nphi = " << format_real(s->phi) << "\n";
        if (auto *p = std::get_if<element::Projector>(&e)) os << "jones = " << jones_array(p->state) << "\n";
        os << "\n";
    }
    os << "[output]\nname = " << quote(cfg.name) << "\ndir = " << quote(cfg.output_dir) << "\nmeasurements = [";
    for (std::size_t k = 0; k < cfg.measurements.size(); ++k) {
        os << (k ? ", " : "") << quote(measurement_name(cfg.measurements[k]));
    }
    os << "]\nimages = [";
    for (std::size_t k = 0; k < cfg.images.size(); ++k) os << (k ? ", " : "") << quote(basis_name(cfg.images[k]));
    os << "]\n";
    return os.str();
}

}  // namespace vecvortex
