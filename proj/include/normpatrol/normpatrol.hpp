#pragma once

#include "normpatrol/batch.hpp"
#include "normpatrol/framing.hpp"
#include "normpatrol/metacog.hpp"
#include "normpatrol/patrol.hpp"
#include "normpatrol/patrol_state.hpp"
#include "normpatrol/render.hpp"
#include "normpatrol/scenario.hpp"
#include "normpatrol/search.hpp"
#include "normpatrol/sim.hpp"
#include "normpatrol/trace_io.hpp"
#include "normpatrol/world.hpp"
