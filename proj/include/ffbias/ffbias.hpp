#pragma once

// Umbrella header for the whole library.

#include "ffbias/bigint.hpp"
#include "ffbias/field.hpp"
#include "ffbias/poly.hpp"
#include "ffbias/enumerate.hpp"
#include "ffbias/poly_text.hpp"
#include "ffbias/multfunc.hpp"
#include "ffbias/intpoly.hpp"
#include "ffbias/lfunc.hpp"
#include "ffbias/report.hpp"
#include "ffbias/biasseries.hpp"
#include "ffbias/density.hpp"
#include "ffbias/experiment.hpp"
