#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace alphaflow {

// Channel Omega = [0,Lx) x [0,Ly) x [0,1], periodic in x,y, rigid walls at
// z = 0,1 carrying the slip coefficient beta.
struct ChannelConfig {
    double Lx = 6.283185307179586;
    double Ly = 6.283185307179586;
    int Nx = 16;
    int Ny = 16;
    int Nz = 33;
    double beta = 0.0;
    double nu = 1.0;
    bool dealias = true;

    void validate() const;
    std::string canonical() const;  // sorted key=value list, for hashing
    std::string hash() const;
};

enum class ModelKind { NS, LNSAlpha, LerayAlpha };

std::string model_name(ModelKind m);
ModelKind model_from_name(const std::string& s);

struct SimConfig {
    ChannelConfig channel;
    ModelKind model = ModelKind::NS;
    double alpha = 0.0;
    int modes = 0;  // 0: full available basis
    double dt = 1e-3;
    double t_end = 0.25;
    std::string initial = "taylor-vortex";  // named profile or field file path
    double amplitude = 1.0;
    int snapshot_every = 0;  // 0: no snapshots
    bool linear_only = false;  // drop the nonlinearity (diagnostics)
    unsigned long long seed = 1;

    void validate() const;
    std::string canonical() const;
    std::string hash() const;
};

// Flat key = value text with [section] headers. Unknown keys, duplicate keys
// and invariant violations are rejected with line-numbered diagnostics.
struct ParsedConfig {
    ChannelConfig channel;
    std::optional<SimConfig> sim;
};

ParsedConfig parse_config_text(const std::string& text, const std::string& origin);
ParsedConfig parse_config_file(const std::filesystem::path& path);

}  // namespace alphaflow
