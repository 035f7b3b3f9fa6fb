#include "alphaflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"

namespace alphaflow {

void ChannelConfig::validate() const {
    if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("channel: Lx and Ly must be positive");
    if (Nx < 2 || Nx % 2 != 0) throw ConfigError("channel: Nx must be even and positive");
    if (Ny < 2 || Ny % 2 != 0) throw ConfigError("channel: Ny must be even and positive");
    if (Nz < 3) throw ConfigError("channel: Nz must be >= 3");
    if (beta < 0.0) throw ConfigError("channel: beta must be nonnegative (invariant beta >= 0)");
    if (!(nu > 0.0)) throw ConfigError("channel: nu must be positive (invariant nu > 0)");
}

std::string ChannelConfig::canonical() const {
    std::string s;
    s += "Lx=" + format_double(Lx);
    s += ";Ly=" + format_double(Ly);
    s += ";Nx=" + std::to_string(Nx);
    s += ";Ny=" + std::to_string(Ny);
    s += ";Nz=" + std::to_string(Nz);
    s += ";beta=" + format_double(beta);
    s += ";dealias=" + std::string(dealias ? "1" : "0");
    s += ";nu=" + format_double(nu);
    return s;
}

std::string ChannelConfig::hash() const { return hash_hex(fnv1a(canonical())); }

std::string model_name(ModelKind m) {
    switch (m) {
        case ModelKind::NS: return "ns";
        case ModelKind::LNSAlpha: return "lns_alpha";
        case ModelKind::LerayAlpha: return "leray_alpha";
    }
    return "ns";
}

ModelKind model_from_name(const std::string& s) {
    if (s == "ns") return ModelKind::NS;
    if (s == "lns_alpha") return ModelKind::LNSAlpha;
    if (s == "leray_alpha") return ModelKind::LerayAlpha;
    throw ConfigError("unknown model '" + s + "' (expected ns | lns_alpha | leray_alpha)");
}

void SimConfig::validate() const {
    channel.validate();
    if (alpha < 0.0) throw ConfigError("sim: alpha must be nonnegative (invariant alpha >= 0)");
    if (model == ModelKind::NS && alpha != 0.0)
        throw ConfigError("sim: model ns requires alpha = 0");
    if (model != ModelKind::NS && alpha == 0.0)
        throw ConfigError("sim: alpha = 0 is only valid with model ns");
    if (!(dt > 0.0)) throw ConfigError("sim: dt must be positive (invariant dt > 0)");
    if (!(t_end >= 0.0)) throw ConfigError("sim: t_end must be nonnegative");
    if (modes < 0) throw ConfigError("sim: modes must be nonnegative");
    if (snapshot_every < 0) throw ConfigError("sim: snapshot_every must be nonnegative");
    if (initial.empty()) throw ConfigError("sim: initial must be set");
}

std::string SimConfig::canonical() const {
    std::string s = channel.canonical();
    s += ";alpha=" + format_double(alpha);
    s += ";amplitude=" + format_double(amplitude);
    s += ";dt=" + format_double(dt);
    s += ";initial=" + initial;
    s += ";linear_only=" + std::string(linear_only ? "1" : "0");
    s += ";model=" + model_name(model);
    s += ";modes=" + std::to_string(modes);
    s += ";seed=" + std::to_string(seed);
    s += ";snapshot_every=" + std::to_string(snapshot_every);
    s += ";t_end=" + format_double(t_end);
    return s;
}

std::string SimConfig::hash() const { return hash_hex(fnv1a(canonical())); }

namespace {

struct Entry {
    std::string value;
    int line;
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class KeyTable {
  public:
    KeyTable(std::map<std::string, Entry> kv, std::string origin)
        : kv_(std::move(kv)), origin_(std::move(origin)) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    template <typename F>
    void take(const std::string& key, F&& parse) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return;
        taken_.insert(key);
        try {
            parse(it->second.value);
        } catch (ConfigError&) {
            throw;
        } catch (std::exception& e) {
            fail(it->second.line, key, e.what());
        }
    }

    void fail(int line, const std::string& key, const std::string& msg) const {
        throw ConfigError(origin_ + ":" + std::to_string(line) + ": key '" + key + "': " + msg);
    }

    void reject_unknown() const {
        for (const auto& [k, e] : kv_) {
            if (!taken_.count(k))
                throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": unknown key '" + k +
                                  "'");
        }
    }

    int line_of(const std::string& key) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? 0 : it->second.line;
    }

  private:
    std::map<std::string, Entry> kv_;
    std::set<std::string> taken_;
    std::string origin_;
};

double parse_num(const std::string& v) {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::runtime_error("trailing characters in number '" + v + "'");
    return x;
}

int parse_int(const std::string& v) {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::runtime_error("trailing characters in integer '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw std::runtime_error("expected boolean, got '" + v + "'");
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, Entry> kv;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    bool saw_sim_section = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section != "channel" && section != "sim")
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section '" +
                                  section + "'");
            if (section == "sim") saw_sim_section = true;
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (kv.count(full))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + full +
                              "' (first at line " + std::to_string(kv[full].line) + ")");
        kv[full] = Entry{val, lineno};
    }

    KeyTable tab(std::move(kv), origin);
    ParsedConfig out;
    ChannelConfig& ch = out.channel;
    tab.take("channel.Lx", [&](const std::string& v) { ch.Lx = parse_num(v); });
    tab.take("channel.Ly", [&](const std::string& v) { ch.Ly = parse_num(v); });
    tab.take("channel.Nx", [&](const std::string& v) { ch.Nx = parse_int(v); });
    tab.take("channel.Ny", [&](const std::string& v) { ch.Ny = parse_int(v); });
    tab.take("channel.Nz", [&](const std::string& v) { ch.Nz = parse_int(v); });
    tab.take("channel.beta", [&](const std::string& v) { ch.beta = parse_num(v); });
    tab.take("channel.nu", [&](const std::string& v) { ch.nu = parse_num(v); });
    tab.take("channel.dealias", [&](const std::string& v) { ch.dealias = parse_bool(v); });

    bool any_sim = saw_sim_section;
    SimConfig sim;
    sim.channel = ch;
    tab.take("sim.model", [&](const std::string& v) { sim.model = model_from_name(v); });
    tab.take("sim.alpha", [&](const std::string& v) { sim.alpha = parse_num(v); });
    tab.take("sim.modes", [&](const std::string& v) { sim.modes = parse_int(v); });
    tab.take("sim.dt", [&](const std::string& v) { sim.dt = parse_num(v); });
    tab.take("sim.t_end", [&](const std::string& v) { sim.t_end = parse_num(v); });
    tab.take("sim.initial", [&](const std::string& v) { sim.initial = v; });
    tab.take("sim.linear_only", [&](const std::string& v) { sim.linear_only = parse_bool(v); });
    tab.take("sim.amplitude", [&](const std::string& v) { sim.amplitude = parse_num(v); });
    tab.take("sim.snapshot_every", [&](const std::string& v) { sim.snapshot_every = parse_int(v); });
    tab.take("sim.seed",
             [&](const std::string& v) { sim.seed = std::stoull(v); });
    tab.reject_unknown();

    try {
        ch.validate();
    } catch (ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (any_sim) {
        sim.channel = ch;
        try {
            sim.validate();
        } catch (ConfigError& e) {
            throw ConfigError(origin + ": " + e.what());
        }
        out.sim = sim;
    }
    return out;
}

ParsedConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config file not found: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

}  // namespace alphaflow
