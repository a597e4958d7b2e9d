#pragma once

#include "fdelab/spectrum/quasi_polynomial.hpp"
#include "fdelab/spectrum/roots.hpp"
#include "fdelab/spectrum/synthesis.hpp"
