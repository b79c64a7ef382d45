#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

namespace slicemon {

/// Interned identifier (thread or memory location name).
///
/// Symbols compare by interning id, which makes them cheap keys in hot loops.
/// Use `name()` when a reproducible, human-facing order is needed. The intern
/// table is process-wide, append-only and safe to use from several threads.
class Symbol {
public:
  constexpr Symbol() noexcept = default;

  static Symbol intern(std::string_view name);

  /// True iff `name` matches [A-Za-z_][A-Za-z0-9_]*.
  static bool valid_identifier(std::string_view name) noexcept;

  std::string_view name() const;
  constexpr std::uint32_t id() const noexcept { return id_; }
  constexpr bool empty() const noexcept { return id_ == 0; }

  friend constexpr bool operator==(Symbol, Symbol) noexcept = default;
  friend constexpr auto operator<=>(Symbol, Symbol) noexcept = default;

private:
  constexpr explicit Symbol(std::uint32_t id) noexcept : id_(id) {}
  std::uint32_t id_ = 0; // 0 is the empty symbol
};

} // namespace slicemon

template <> struct std::hash<slicemon::Symbol> {
  std::size_t operator()(slicemon::Symbol s) const noexcept { return s.id(); }
};
