#include "fixtures.hpp"

#include <map>
#include <mutex>

namespace fixture {

namespace {

std::mutex mu;

mfzero::NewformData generate(const std::string& key, std::size_t terms) {
  if (key == "11a") return mfzero::gen_elliptic(k11a, 11, terms);
  if (key == "37a") return mfzero::gen_elliptic(k37a, 37, terms);
  return mfzero::gen_level1_eigenform(std::stoi(key.substr(2)), terms);
}

}  // namespace

const mfzero::NewformData& form(const std::string& key, std::size_t terms) {
  static std::map<std::string, mfzero::NewformData> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it == cache.end() || it->second.terms() < terms)
    it = cache.insert_or_assign(key, generate(key, terms)).first;
  return it->second;
}

std::vector<std::string> builtin_keys() {
  return {"1.12", "1.16", "1.18", "1.20", "1.22", "1.26", "11a"};
}

mfzero::Sign sign_of(const std::string& key) {
  static std::map<std::string, mfzero::Sign> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const mfzero::Sign s = mfzero::detect_sign(form(key)).sign;
  std::lock_guard lock(mu);
  return cache[key] = s;
}

const mfzero::ZeroList& zeros(const std::string& key) {
  static std::map<std::string, mfzero::ZeroList> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const mfzero::Sign s = sign_of(key);
  mfzero::ZeroList z = mfzero::find_zeros(mfzero::LFunction(form(key), s), 40.0);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(z)).first->second;
}

}  // namespace fixture
