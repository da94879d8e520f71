#include "bumpless/cache.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <openssl/evp.h>

#include "json.hpp"

namespace bumpless {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sha256_hex(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::atomic<unsigned long> g_tmp_counter{0};

}  // namespace

GbCache::GbCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
}

std::string GbCache::canonical_input(const std::vector<QPoly>& gens, const TermOrder& order) {
  std::vector<std::string> g;
  for (const auto& p : gens) g.push_back(p.to_string());
  std::sort(g.begin(), g.end());
  std::string s = "n=" + std::to_string(order.grid()) + "\norder=" + order.key() + "\n";
  for (const auto& x : g) s += x + "\n";
  return s;
}

std::string GbCache::key(const std::vector<QPoly>& gens, const TermOrder& order) {
  return sha256_hex(canonical_input(gens, order));
}

fs::path GbCache::path_for(const std::string& key) const { return dir_ / key.substr(0, 2) / (key + ".json"); }

std::optional<std::vector<QPoly>> GbCache::get(const std::vector<QPoly>& gens, const TermOrder& order) const {
  const std::string input = canonical_input(gens, order);
  const fs::path p = path_for(sha256_hex(input));
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("input").get<std::string>() != input) throw InputError("recorded input differs");
    std::vector<QPoly> gb;
    for (const auto& s : j.at("gb")) gb.push_back(QPoly::parse(s.get<std::string>(), order.grid()));
    return gb;
  } catch (const std::exception& e) {
    if (warn) warn("corrupt cache entry " + p.string() + " (" + e.what() + "), recomputing");
    return std::nullopt;
  }
}

void GbCache::put(const std::vector<QPoly>& gens, const TermOrder& order, const std::vector<QPoly>& gb) const {
  const std::string input = canonical_input(gens, order);
  const fs::path p = path_for(sha256_hex(input));
  fs::create_directories(p.parent_path());
  json j;
  j["input"] = input;
  j["gb"] = json::array();
  for (const auto& g : gb) j["gb"].push_back(g.to_string());

  std::ostringstream tag;
  tag << ".tmp." << ::getpid() << "." << std::this_thread::get_id() << "." << g_tmp_counter++;
  const fs::path tmp = p.string() + tag.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << "\n";
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      if (warn) warn("cannot write cache entry " + p.string());
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    if (warn) warn("cannot publish cache entry " + p.string());
  }
}

std::vector<QPoly> GbCache::fetch(const std::vector<QPoly>& gens, const TermOrder& order,
                                  const std::function<std::vector<QPoly>()>& compute) const {
  if (auto hit = get(gens, order)) return *hit;
  auto gb = compute();
  put(gens, order, gb);
  return gb;
}

void install_gb_cache(std::shared_ptr<const GbCache> cache) {
  if (!cache) {
    set_gb_provider(nullptr);
    return;
  }
  set_gb_provider([cache](const std::vector<QPoly>& gens, const TermOrder& order,
                          const std::function<std::vector<QPoly>()>& compute) { return cache->fetch(gens, order, compute); });
}

fs::path cache_dir_from_env(const fs::path& fallback) {
  if (const char* e = std::getenv("BUMPLESS_CACHE_DIR"); e && *e) return e;
  return fallback;
}

}  // namespace bumpless
