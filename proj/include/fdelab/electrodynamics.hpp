#pragma once

#include "fdelab/electrodynamics/field.hpp"
#include "fdelab/electrodynamics/forces.hpp"
#include "fdelab/electrodynamics/params.hpp"
#include "fdelab/electrodynamics/past.hpp"
#include "fdelab/electrodynamics/retarded_time.hpp"
#include "fdelab/electrodynamics/scenario.hpp"
#include "fdelab/electrodynamics/state.hpp"
