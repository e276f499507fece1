#include "netoco/error.hpp"

namespace netoco {

InvalidVertex::InvalidVertex(int v)
    : Error("invalid vertex id " + std::to_string(v)), vertex_(v) {}

static std::string tag_message(const std::string& what, int t, int v) {
  if (t < 0 && v < 0) return what;
  return what + " (t=" + std::to_string(t) + ", v=" + std::to_string(v) + ")";
}

SolverDiverged::SolverDiverged(const std::string& what, int t, int v)
    : Error(tag_message(what, t, v)), detail_(what), t_(t), v_(v) {}

SolverDiverged SolverDiverged::tagged(int t, int v) const {
  return SolverDiverged(detail_, t, v);
}

DistanceTooSmall::DistanceTooSmall(int i, int j, int distance)
    : Error("vertices " + std::to_string(i) + " and " + std::to_string(j) +
            " are at distance " + std::to_string(distance) + ", need at least 3") {}

}  // namespace netoco
