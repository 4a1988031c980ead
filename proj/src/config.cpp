// SPDX-License-Identifier: MIT
#include "condlab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "condlab/errors.hpp"

namespace condlab {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::string& source) : text_(text), source_(source) {}

    std::map<std::string, ConfigTable> run() {
        std::map<std::string, ConfigTable> out;
        out[""];
        std::string section;
        for (;;) {
            skip_blank_lines();
            if (at_end()) break;
            if (peek() == '[') {
                ++pos_;
                skip_inline_space();
                section = key();
                skip_inline_space();
                expect(']');
                if (out.count(section) && section != "") fail("duplicate section [" + section + "]");
                out[section];
                end_of_line();
                continue;
            }
            const int line = line_;
            const std::string k = key();
            skip_inline_space();
            expect('=');
            skip_inline_space();
            ConfigValue v = value();
            v.line = line;
            ConfigTable& table = out[section];
            if (table.count(k)) fail("duplicate key '" + k + "'");
            table.emplace(k, std::move(v));
            end_of_line();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << source_ << ":" << line_ << ": " << what;
        throw ValidationError(os.str());
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance() {
        if (peek() == '\n') ++line_;
        ++pos_;
    }

    void skip_inline_space() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
    }

    void skip_comment() {
        if (peek() == '#')
            while (!at_end() && peek() != '\n') ++pos_;
    }

    void skip_blank_lines() {
        for (;;) {
            skip_inline_space();
            skip_comment();
            if (peek() == '\n')
                advance();
            else
                return;
        }
    }

    // Whitespace, comments and newlines inside arrays.
    void skip_any_space() {
        for (;;) {
            skip_inline_space();
            skip_comment();
            if (peek() == '\n')
                advance();
            else
                return;
        }
    }

    void end_of_line() {
        skip_inline_space();
        skip_comment();
        if (at_end()) return;
        if (peek() != '\n') fail(std::string("unexpected character '") + peek() + "'");
        advance();
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string key() {
        if (peek() == '"') return basic_string();
        std::string k;
        while (!at_end()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
                k += c;
                ++pos_;
            } else {
                break;
            }
        }
        if (k.empty()) fail("expected a key");
        return k;
    }

    std::string basic_string() {
        expect('"');
        std::string s;
        for (;;) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = peek();
            ++pos_;
            if (c == '"') return s;
            if (c == '\\') {
                const char e = peek();
                ++pos_;
                switch (e) {
                    case '"': s += '"'; break;
                    case '\\': s += '\\'; break;
                    case 'n': s += '\n'; break;
                    case 't': s += '\t'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                s += c;
            }
        }
    }

    std::string literal_string() {
        expect('\'');
        std::string s;
        for (;;) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = peek();
            ++pos_;
            if (c == '\'') return s;
            s += c;
        }
    }

    ConfigValue value() {
        ConfigValue v;
        v.line = line_;
        const char c = peek();
        if (c == '"') {
            v.data = basic_string();
        } else if (c == '\'') {
            v.data = literal_string();
        } else if (c == '[') {
            ++pos_;
            ConfigArray arr;
            for (;;) {
                skip_any_space();
                if (peek() == ']') {
                    ++pos_;
                    break;
                }
                arr.push_back(value());
                skip_any_space();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                skip_any_space();
                expect(']');
                break;
            }
            v.data = std::move(arr);
        } else if (c == '{') {
            ++pos_;
            ConfigTable table;
            skip_inline_space();
            if (peek() == '}') {
                ++pos_;
            } else {
                for (;;) {
                    skip_inline_space();
                    const std::string k = key();
                    skip_inline_space();
                    expect('=');
                    skip_inline_space();
                    if (table.count(k)) fail("duplicate key '" + k + "' in inline table");
                    table.emplace(k, value());
                    skip_inline_space();
                    if (peek() == ',') {
                        ++pos_;
                        continue;
                    }
                    expect('}');
                    break;
                }
            }
            v.data = std::move(table);
        } else {
            std::string token;
            while (!at_end()) {
                const char d = peek();
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '+' || d == '-' || d == '.' || d == '_') {
                    token += d;
                    ++pos_;
                } else {
                    break;
                }
            }
            if (token == "true") {
                v.data = true;
            } else if (token == "false") {
                v.data = false;
            } else {
                v.data = number(token);
            }
        }
        return v;
    }

    double number(std::string token) {
        if (token.empty()) fail("expected a value");
        std::string clean;
        for (char c : token)
            if (c != '_') clean += c;
        if (clean == "inf" || clean == "+inf") return std::numeric_limits<double>::infinity();
        if (clean == "-inf") return -std::numeric_limits<double>::infinity();
        const char* b = clean.data();
        if (*b == '+') ++b;
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(b, clean.data() + clean.size(), x);
        if (ec != std::errc() || ptr != clean.data() + clean.size()) fail("invalid value '" + token + "'");
        return x;
    }

    std::string_view text_;
    std::string source_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

std::string where(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

double as_number(const ConfigValue& v, const std::string& name) {
    if (const double* d = std::get_if<double>(&v.data)) return *d;
    throw ValidationError("key '" + name + "' must be a number");
}

}  // namespace

nlohmann::json ConfigValue::to_json() const {
    return std::visit(
        [](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ConfigArray>) {
                nlohmann::json a = nlohmann::json::array();
                for (const ConfigValue& e : x) a.push_back(e.to_json());
                return a;
            } else if constexpr (std::is_same_v<T, ConfigTable>) {
                nlohmann::json o = nlohmann::json::object();
                for (const auto& [k, e] : x) o[k] = e.to_json();
                return o;
            } else {
                return x;
            }
        },
        data);
}

Config Config::parse(std::string_view text, const std::string& source) {
    Config c;
    c.source_ = source;
    c.sections_ = Parser(text, source).run();
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str(), path.string());
}

bool Config::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const ConfigValue* Config::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

nlohmann::json Config::to_json() const {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [name, table] : sections_)
        for (const auto& [k, v] : table) {
            if (name.empty())
                o[k] = v.to_json();
            else
                o[name][k] = v.to_json();
        }
    return o;
}

const ConfigValue* ConfigReader::lookup(const std::string& section, const std::string& key) const {
    used_.insert({section, key});
    return config_.find(section, key);
}

const ConfigValue& ConfigReader::require(const std::string& section, const std::string& key) const {
    const ConfigValue* v = lookup(section, key);
    if (!v) throw ValidationError("missing required key '" + where(section, key) + "'");
    return *v;
}

void ConfigReader::record(const std::string& section, const std::string& key, const nlohmann::json& value) const {
    if (section.empty())
        resolved_[key] = value;
    else
        resolved_[section][key] = value;
}

double ConfigReader::number(const std::string& section, const std::string& key) const {
    const double x = as_number(require(section, key), where(section, key));
    record(section, key, x);
    return x;
}

double ConfigReader::number(const std::string& section, const std::string& key, double fallback) const {
    const ConfigValue* v = lookup(section, key);
    const double x = v ? as_number(*v, where(section, key)) : fallback;
    record(section, key, x);
    return x;
}

std::optional<double> ConfigReader::optional_number(const std::string& section, const std::string& key) const {
    const ConfigValue* v = lookup(section, key);
    if (!v) return std::nullopt;
    const double x = as_number(*v, where(section, key));
    record(section, key, x);
    return x;
}

int ConfigReader::integer(const std::string& section, const std::string& key, int fallback) const {
    const double x = number(section, key, fallback);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ValidationError("key '" + where(section, key) + "' must be an integer");
    return static_cast<int>(x);
}

bool ConfigReader::boolean(const std::string& section, const std::string& key, bool fallback) const {
    const ConfigValue* v = lookup(section, key);
    bool b = fallback;
    if (v) {
        const bool* p = std::get_if<bool>(&v->data);
        if (!p) throw ValidationError("key '" + where(section, key) + "' must be true or false");
        b = *p;
    }
    record(section, key, b);
    return b;
}

std::string ConfigReader::text(const std::string& section, const std::string& key) const {
    const ConfigValue& v = require(section, key);
    const std::string* p = std::get_if<std::string>(&v.data);
    if (!p) throw ValidationError("key '" + where(section, key) + "' must be a string");
    record(section, key, *p);
    return *p;
}

std::string ConfigReader::text(const std::string& section, const std::string& key, const std::string& fallback) const {
    if (!config_.has(section, key)) {
        used_.insert({section, key});
        record(section, key, fallback);
        return fallback;
    }
    return text(section, key);
}

std::optional<std::vector<double>> ConfigReader::optional_grid(const std::string& section, const std::string& key) const {
    const ConfigValue* v = lookup(section, key);
    if (!v) return std::nullopt;
    const std::string name = where(section, key);
    std::vector<double> out;
    if (const ConfigArray* a = std::get_if<ConfigArray>(&v->data)) {
        for (const ConfigValue& e : *a) out.push_back(as_number(e, name));
    } else if (const ConfigTable* t = std::get_if<ConfigTable>(&v->data)) {
        for (const auto& [k, e] : *t)
            if (k != "start" && k != "factor" && k != "count")
                throw ValidationError("unknown key '" + k + "' in grid '" + name + "'");
        auto field = [&](const char* f) {
            const auto it = t->find(f);
            if (it == t->end()) throw ValidationError("missing required key '" + name + "." + f + "'");
            return as_number(it->second, name + "." + f);
        };
        const double start = field("start");
        const double factor = field("factor");
        const double count = field("count");
        if (count < 1 || count != std::floor(count) || count > 1e6)
            throw ValidationError("grid '" + name + "' needs a positive integer count");
        double x = start;
        for (int i = 0; i < static_cast<int>(count); ++i) {
            out.push_back(x);
            x *= factor;
        }
    } else {
        out.push_back(as_number(*v, name));
    }
    record(section, key, out);
    return out;
}

std::vector<double> ConfigReader::grid(const std::string& section, const std::string& key) const {
    auto g = optional_grid(section, key);
    if (!g) throw ValidationError("missing required key '" + where(section, key) + "'");
    return *g;
}

std::vector<double> ConfigReader::grid(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback) const {
    auto g = optional_grid(section, key);
    if (g) return *g;
    record(section, key, fallback);
    return fallback;
}

void ConfigReader::finish() const {
    for (const auto& [name, table] : config_.sections()) {
        for (const auto& [k, v] : table)
            if (!used_.count({name, k})) {
                std::ostringstream os;
                os << config_.source() << ":" << v.line << ": unknown key '" << where(name, k) << "'";
                throw ValidationError(os.str());
            }
        if (!name.empty() && table.empty()) {
            bool known = false;
            for (const auto& u : used_)
                if (u.first == name) known = true;
            if (!known) throw ValidationError(config_.source() + ": unknown section [" + name + "]");
        }
    }
}

}  // namespace condlab
