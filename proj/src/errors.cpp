#include "hgr/errors.hpp"

namespace hgr {

namespace {

std::string describe_cycle(const std::vector<int>& cycle) {
  std::string s = "dependency cycle:";
  for (int id : cycle) s += " " + std::to_string(id) + " ->";
  if (!cycle.empty()) s += " " + std::to_string(cycle.front());
  return s;
}

}  // namespace

CycleError::CycleError(std::vector<int> cycle) : Error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

}  // namespace hgr
