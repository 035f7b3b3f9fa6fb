#include "alphaflow/io_util.hpp"

#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <system_error>

#include "alphaflow/errors.hpp"

namespace alphaflow {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

static void atomic_write_impl(const std::filesystem::path& path, const char* data, std::size_t n) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    // Unique temp name in the same directory so rename stays atomic.
    static std::atomic<unsigned> counter{0};
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open for write: " + tmp.string());
        f.write(data, static_cast<std::streamsize>(n));
        if (!f) throw ConfigError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("rename failed for " + path.string() + ": " + ec.message());
    }
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    atomic_write_impl(path, content.data(), content.size());
}

void atomic_write(const std::filesystem::path& path, const std::vector<char>& bytes) {
    atomic_write_impl(path, bytes.data(), bytes.size());
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = 0;
    return std::string(buf, 16);
}

std::filesystem::path cache_dir() {
    namespace fs = std::filesystem;
    fs::path dir;
    if (const char* env = std::getenv("ALPHAFLOW_CACHE_DIR")) {
        dir = env;
    } else if (const char* home = std::getenv("HOME")) {
        dir = fs::path(home) / ".cache" / "alphaflow";
    } else {
        dir = fs::path(".alphaflow_cache");
    }
    fs::create_directories(dir);
    return dir;
}

void BinWriter::raw(const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    bytes.insert(bytes.end(), c, c + n);
}
void BinWriter::u32(std::uint32_t v) { raw(&v, 4); }
void BinWriter::u64(std::uint64_t v) { raw(&v, 8); }
void BinWriter::f64(double v) { raw(&v, 8); }
void BinWriter::magic(const char m[4]) { raw(m, 4); }

void BinReader::raw(void* out, std::size_t n) {
    if (p + n > end) throw ConfigError("binary file truncated");
    std::memcpy(out, p, n);
    p += n;
}
std::uint32_t BinReader::u32() {
    std::uint32_t v;
    raw(&v, 4);
    return v;
}
std::uint64_t BinReader::u64() {
    std::uint64_t v;
    raw(&v, 8);
    return v;
}
double BinReader::f64() {
    double v;
    raw(&v, 8);
    return v;
}
void BinReader::expect_magic(const char m[4], const std::string& what) {
    char got[4];
    raw(got, 4);
    if (std::memcmp(got, m, 4) != 0) throw ConfigError("bad magic for " + what);
}

std::vector<char> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open file: " + path.string());
    return std::vector<char>(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void CsvWriter::comment(const std::string& line) { out_ += "# " + line + "\n"; }

void CsvWriter::header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out_ += ",";
        out_ += cols[i];
    }
    out_ += "\n";
}

void CsvWriter::row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out_ += ",";
        out_ += format_double(vals[i]);
    }
    out_ += "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out_ += ",";
        out_ += vals[i];
    }
    out_ += "\n";
}

}  // namespace alphaflow
