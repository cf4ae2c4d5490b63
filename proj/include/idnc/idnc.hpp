#ifndef IDNC_IDNC_HPP_
#define IDNC_IDNC_HPP_

#include "idnc/clique.hpp"
#include "idnc/coop_graph.hpp"
#include "idnc/local_graph.hpp"
#include "idnc/metrics.hpp"
#include "idnc/network.hpp"
#include "idnc/rng.hpp"
#include "idnc/scheduler.hpp"
#include "idnc/sim.hpp"
#include "idnc/types.hpp"

#endif  // IDNC_IDNC_HPP_
