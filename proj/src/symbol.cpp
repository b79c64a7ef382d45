#include "slicemon/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace slicemon {
namespace {

struct InternTable {
  std::shared_mutex mutex;
  std::deque<std::string> names{std::string{}};
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

InternTable& table() {
  static InternTable t;
  return t;
}

} // namespace

Symbol Symbol::intern(std::string_view name) {
  if (name.empty())
    return Symbol{};
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end())
      return Symbol{it->second};
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end())
    return Symbol{it->second};
  auto id = static_cast<std::uint32_t>(t.names.size());
  const auto& stored = t.names.emplace_back(name);
  t.ids.emplace(std::string_view{stored}, id);
  return Symbol{id};
}

std::string_view Symbol::name() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names[id_];
}

bool Symbol::valid_identifier(std::string_view name) noexcept {
  if (name.empty())
    return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!alpha(name.front()))
    return false;
  for (char c : name)
    if (!alpha(c) && !(c >= '0' && c <= '9'))
      return false;
  return true;
}

} // namespace slicemon
