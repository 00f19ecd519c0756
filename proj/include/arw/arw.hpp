#pragma once

// Everything: rings, Gröbner bases, modules, complexes, resolutions,
// Artin-Rees experiments, KAS sequences and the workbench runner.

#include "arw/artin_rees/artin_rees.hpp"
#include "arw/complexes/determinantal.hpp"
#include "arw/complexes/power_complex.hpp"
#include "arw/kas/kas.hpp"
#include "arw/resolution/tor.hpp"
#include "arw/workbench/run.hpp"
