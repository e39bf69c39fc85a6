#pragma once

#include "spinor_qi/errors.hpp"
#include "spinor_qi/spinor_core.hpp"
#include "spinor_qi/parallel.hpp"
#include "spinor_qi/grid.hpp"
#include "spinor_qi/massive_rep.hpp"
#include "spinor_qi/photon_rep.hpp"
#include "spinor_qi/epr_engine.hpp"
#include "spinor_qi/fock_oracle.hpp"
#include "spinor_qi/delta_m.hpp"
