#include "insulatum/table_cache.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace insulatum {

namespace {

constexpr char kMagic[5] = {'I', 'N', 'S', 'U', '1'};

void write_u64le(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint64_t read_u64le(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    if (!in) throw std::runtime_error("prime-table cache: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

void write_uleb128(std::ostream& out, std::uint64_t v) {
    do {
        auto byte = static_cast<unsigned char>(v & 0x7f);
        v >>= 7;
        if (v != 0) byte |= 0x80;
        out.put(static_cast<char>(byte));
    } while (v != 0);
}

std::uint64_t read_uleb128(std::istream& in) {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
        int c = in.get();
        if (c == EOF) throw std::runtime_error("prime-table cache: truncated delta stream");
        v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
        if ((c & 0x80) == 0) break;
        shift += 7;
        if (shift >= 64) throw std::runtime_error("prime-table cache: oversized delta");
    }
    return v;
}

} // namespace

void save_table_cache(const PrimeTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("prime-table cache: cannot open " + path + " for writing");
    out.write(kMagic, sizeof kMagic);
    write_u64le(out, static_cast<std::uint64_t>(table.limit()));
    write_u64le(out, static_cast<std::uint64_t>(table.size()));
    std::int64_t prev = 0;
    for (std::int64_t p : table.primes()) {
        write_uleb128(out, static_cast<std::uint64_t>(p - prev));
        prev = p;
    }
    out.flush();
    if (!out) throw std::runtime_error("prime-table cache: write to " + path + " failed");
}

PrimeTable load_table_cache(const std::string& path, const BuildOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("prime-table cache: cannot open " + path);
    char magic[5];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("prime-table cache: bad magic in " + path);

    const auto limit = static_cast<std::int64_t>(read_u64le(in));
    const auto count = static_cast<std::int64_t>(read_u64le(in));
    if (limit < 2 || count < 1 || count > limit)
        throw std::runtime_error("prime-table cache: implausible header in " + path);

    std::vector<std::int64_t> primes;
    primes.reserve(static_cast<std::size_t>(count));
    std::int64_t prev = 0;
    std::int64_t max_gap = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        const auto delta = static_cast<std::int64_t>(read_uleb128(in));
        if (delta <= 0) throw std::runtime_error("prime-table cache: non-increasing delta in " + path);
        const std::int64_t p = prev + delta;
        if (p > limit) throw std::runtime_error("prime-table cache: prime beyond limit in " + path);
        if (prev != 0) max_gap = std::max(max_gap, delta);
        primes.push_back(p);
        prev = p;
    }
    if (primes.front() != 2)
        throw std::runtime_error("prime-table cache: first prime is not 2 in " + path);

    return PrimeTable(limit, std::move(primes), max_gap, options.mr_fallback);
}

} // namespace insulatum
