#pragma once

#include <string>

#include "insulatum/prime_table.hpp"

namespace insulatum {

// Binary prime-table cache. Layout: magic "INSU1", little-endian u64 limit,
// u64 count, then ULEB128 deltas between consecutive primes (first delta
// from 0). Bit-identical across runs for the same limit.

void save_table_cache(const PrimeTable& table, const std::string& path);

/// Loads and validates a cache file; throws std::runtime_error on I/O
/// failure or corruption.
PrimeTable load_table_cache(const std::string& path, const BuildOptions& options = {});

} // namespace insulatum
