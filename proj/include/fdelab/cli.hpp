#pragma once

#include "fdelab/cli/config.hpp"
#include "fdelab/cli/csv.hpp"
#include "fdelab/cli/run.hpp"
