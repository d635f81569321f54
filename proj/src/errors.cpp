#include "cvand/errors.hpp"

namespace cvand {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::degenerate_cluster: return "degenerate cluster";
    case Errc::infeasible_layout: return "infeasible layout";
    case Errc::rank_deficient: return "rank deficient";
    case Errc::ill_conditioned: return "ill conditioned";
    case Errc::precondition: return "precondition violated";
    case Errc::out_of_regime: return "out of regime";
    case Errc::config: return "config error";
    case Errc::io: return "I/O error";
  }
  return "unknown error";
}

}  // namespace cvand
