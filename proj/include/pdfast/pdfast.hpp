#pragma once

#include "pdfast/bench.hpp"
#include "pdfast/convolution.hpp"
#include "pdfast/corrections.hpp"
#include "pdfast/errors.hpp"
#include "pdfast/field.hpp"
#include "pdfast/fracture.hpp"
#include "pdfast/geometry.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"
#include "pdfast/ledger.hpp"
#include "pdfast/material.hpp"
#include "pdfast/output.hpp"
#include "pdfast/reference.hpp"
#include "pdfast/scenario.hpp"
#include "pdfast/timestepping.hpp"
