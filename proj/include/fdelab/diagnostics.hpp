#pragma once

#include "fdelab/diagnostics/angular_momentum.hpp"
#include "fdelab/diagnostics/balance.hpp"
#include "fdelab/diagnostics/orbit.hpp"
#include "fdelab/diagnostics/sampling.hpp"
#include "fdelab/diagnostics/torque.hpp"
