#include "hypokit/tolerances.hpp"

#include <string>

#include "hypokit/errors.hpp"

namespace hypokit {

namespace {
void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("tolerance ") + name + " must lie in (0, 1), got " + std::to_string(v), v);
  }
}
}  // namespace

void Tolerances::validate() const {
  check_open_unit(rank_rel_tol, "rank_rel_tol");
  check_open_unit(psd_rel_tol, "psd_rel_tol");
  check_open_unit(norm_plateau_tol, "norm_plateau_tol");
  check_open_unit(cluster_tol, "cluster_tol");
}

}  // namespace hypokit
