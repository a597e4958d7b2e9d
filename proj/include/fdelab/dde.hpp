#pragma once

#include "fdelab/dde/discontinuity.hpp"
#include "fdelab/dde/dormand_prince.hpp"
#include "fdelab/dde/integrate.hpp"
#include "fdelab/dde/state.hpp"
#include "fdelab/dde/trajectory.hpp"
