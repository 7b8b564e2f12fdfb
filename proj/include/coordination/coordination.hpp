#pragma once

#include "coordination/pmf.hpp"
#include "coordination/io.hpp"
#include "coordination/info.hpp"
#include "coordination/wyner.hpp"
#include "coordination/ulsr.hpp"
#include "coordination/dsbs.hpp"
#include "coordination/region.hpp"
#include "coordination/simulator.hpp"
