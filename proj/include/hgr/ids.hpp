#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace hgr {

/// Integer surrogate id tagged by what it identifies. Ordering is the numeric
/// order of the surrogate; every deterministic tie-break in the library uses it.
template <typename Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

struct EntityTag {};
struct HyperedgeTag {};

using EntityId = StrongId<EntityTag>;
using HyperedgeId = StrongId<HyperedgeTag>;

}  // namespace hgr

template <typename Tag>
struct std::hash<hgr::StrongId<Tag>> {
  std::size_t operator()(hgr::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
