#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "whpc/errors.hpp"

namespace whpc {

/// Flat dotted-key configuration: one "section.key = value" per line, '#'
/// comments, no sections, no environment overrides.  Unknown keys are
/// rejected at load with line diagnostics.
class experiment_config {
public:
    static const std::set<std::string>& known_keys() {
        static const std::set<std::string> keys{
            "experiment.name", "space.dim",          "space.n",
            "rhs.kind",        "basis.t",            "b.kind",
            "b.c0",            "b.theta",            "b.values",
            "weights.p",       "weights.xi",         "weights.M",
            "expansion.J",     "expansion.ref_size", "expansion.Ns",
            "expansion.s_out", "estimator.kind",     "estimator.pad",
            "estimator.samples", "run.seed",         "solver.rel_tol",
            "solver.max_iter", "output.dir",         "indexset.N",
            "indexset.dim_cap", "solve.a",           "verify.probes",
            "verify.mc_samples", "verify.perturbation_trials",
            "verify.alpha_tilde", "verify.C",        "verify.alpha",
            "verify.tau",      "identity.trials",
        };
        return keys;
    }

    static experiment_config parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw config_error("cannot open config file '" + path + "'");
        std::stringstream buffer;
        buffer << is.rdbuf();
        return parse_text(buffer.str(), path);
    }

    static experiment_config parse_text(const std::string& text, const std::string& origin = "<memory>") {
        experiment_config cfg;
        cfg.raw_text_ = text;
        std::istringstream is(text);
        std::string line;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const std::size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw config_error(origin + ":" + std::to_string(line_no) +
                                   ": expected 'key = value', got '" + trimmed + "'");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (!known_keys().count(key))
                throw config_error(origin + ":" + std::to_string(line_no) + ": unknown key '" +
                                   key + "'");
            if (cfg.values_.count(key))
                throw config_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                                   key + "'");
            if (value.empty())
                throw config_error(origin + ":" + std::to_string(line_no) + ": empty value for '" +
                                   key + "'");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const std::string& raw_text() const { return raw_text_; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw config_error("missing required config key '" + key + "'");
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    long long get_int(const std::string& key) const { return to_int(key, get_string(key)); }
    long long get_int(const std::string& key, long long fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const std::string v = get_string(key);
        try {
            std::size_t pos = 0;
            const std::uint64_t r = std::stoull(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw config_error("config key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
        }
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const auto& item : split(get_string(key))) out.push_back(to_double(key, item));
        if (out.empty()) throw config_error("config key '" + key + "': empty list");
        return out;
    }

    std::vector<long long> get_int_list(const std::string& key) const {
        std::vector<long long> out;
        for (const auto& item : split(get_string(key))) out.push_back(to_int(key, item));
        if (out.empty()) throw config_error("config key '" + key + "': empty list");
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return "";
        const auto end = s.find_last_not_of(" \t\r\n");
        return s.substr(begin, end - begin + 1);
    }

    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t end = s.find(';', pos);
            if (end == std::string::npos) end = s.size();
            const std::string item = trim(s.substr(pos, end - pos));
            if (!item.empty()) out.push_back(item);
            pos = end + 1;
        }
        return out;
    }

    static double to_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double r = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw config_error("config key '" + key + "': cannot parse '" + v + "' as a number");
        }
    }

    static long long to_int(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const long long r = std::stoll(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw config_error("config key '" + key + "': cannot parse '" + v + "' as an integer");
        }
    }

    std::map<std::string, std::string> values_;
    std::string raw_text_;
};

} // namespace whpc
