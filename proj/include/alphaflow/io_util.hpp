#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace alphaflow {

// Shortest round-trip-exact decimal form of a double (std::to_chars).
std::string format_double(double x);

// Writes content to path via a temp file in the same directory plus rename,
// so readers never observe partial files.
void atomic_write(const std::filesystem::path& path, const std::string& content);
void atomic_write(const std::filesystem::path& path, const std::vector<char>& bytes);

// FNV-1a over a canonical string; returned as 16 hex digits.
std::uint64_t fnv1a(const std::string& s);
std::string hash_hex(std::uint64_t h);

// Cache directory: ALPHAFLOW_CACHE_DIR, else $HOME/.cache/alphaflow,
// else ./.alphaflow_cache. Created if missing.
std::filesystem::path cache_dir();

// Little-endian binary writer/reader helpers.
struct BinWriter {
    std::vector<char> bytes;
    void raw(const void* p, std::size_t n);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    void magic(const char m[4]);
};

struct BinReader {
    const char* p;
    const char* end;
    explicit BinReader(const std::vector<char>& b) : p(b.data()), end(b.data() + b.size()) {}
    void raw(void* out, std::size_t n);
    std::uint32_t u32();
    std::uint64_t u64();
    double f64();
    void expect_magic(const char m[4], const std::string& what);
};

std::vector<char> read_file_bytes(const std::filesystem::path& path);

// Simple CSV emitter with deterministic float formatting.
class CsvWriter {
  public:
    void comment(const std::string& line);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& vals);
    void row_mixed(const std::vector<std::string>& vals);
    const std::string& str() const { return out_; }

  private:
    std::string out_;
};

}  // namespace alphaflow
