#ifndef BUMPLESS_CACHE_HPP
#define BUMPLESS_CACHE_HPP

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bumpless/groebner.hpp"

namespace bumpless {

/// On-disk store of reduced Groebner bases, one JSON file per input, named by
/// the SHA-256 of the canonical (order, generators) text.
class GbCache {
public:
  explicit GbCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  /// Canonical text of an input: order key, then the generator strings sorted.
  static std::string canonical_input(const std::vector<QPoly>& gens, const TermOrder& order);
  static std::string key(const std::vector<QPoly>& gens, const TermOrder& order);
  std::filesystem::path path_for(const std::string& key) const;

  /// nullopt on a miss. A file that does not parse, or whose recorded input
  /// differs from this one, counts as a miss and triggers `warn`.
  std::optional<std::vector<QPoly>> get(const std::vector<QPoly>& gens, const TermOrder& order) const;
  /// Writes to a private temporary file, then renames it into place.
  void put(const std::vector<QPoly>& gens, const TermOrder& order, const std::vector<QPoly>& gb) const;

  /// get, else compute and put.
  std::vector<QPoly> fetch(const std::vector<QPoly>& gens, const TermOrder& order,
                           const std::function<std::vector<QPoly>()>& compute) const;

  std::function<void(const std::string&)> warn;

private:
  std::filesystem::path dir_;
};

/// Routes every reduced GB computation through `cache` (null uninstalls).
void install_gb_cache(std::shared_ptr<const GbCache> cache);

/// Cache directory from $BUMPLESS_CACHE_DIR, else `fallback`.
std::filesystem::path cache_dir_from_env(const std::filesystem::path& fallback);

}  // namespace bumpless

#endif
