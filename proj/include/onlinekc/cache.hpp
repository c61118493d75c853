#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "onlinekc/enumerator.hpp"

namespace onlinekc {

struct CacheKey {
  std::uint64_t machine_hash = 0;
  std::uint64_t s = 0;
  std::uint64_t cap = 0;
  std::uint64_t task_hash = 0;

  std::string file_name() const;
};

std::uint64_t hash_tasks(const TaskList& tasks);

// On-disk answer cache: one text record per key, written atomically via
// rename. Record layout (each line '\n'-terminated):
//
//   onlinekc-cache <version>
//   machine <16 hex>
//   s <decimal>
//   cap <decimal>
//   tasks <16 hex>
//   value <decimal> | exceeds
//   witness <bits> | -
//   checksum <16 hex>      FNV-1a of every preceding byte
//
// Records with a different version, a mismatched header, or a bad checksum
// are treated as misses.
class ComplexityCache {
 public:
  static constexpr int kFormatVersion = 1;

  explicit ComplexityCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<ComplexityAnswer> get(const CacheKey& key) const;
  void put(const CacheKey& key, const ComplexityAnswer& answer) const;

  struct GcReport {
    std::size_t kept = 0;
    std::size_t removed = 0;
  };
  // Deletes unreadable, stale-version or corrupt records and stray temp files.
  GcReport gc() const;

  static std::string serialize(const CacheKey& key, const ComplexityAnswer& answer);
  // nullopt when the record is corrupt, of another version, or for another key
  // (when `expected` is given).
  static std::optional<std::pair<CacheKey, ComplexityAnswer>> parse(
      const std::string& record, const CacheKey* expected = nullptr);

 private:
  std::filesystem::path dir_;
};

}  // namespace onlinekc
