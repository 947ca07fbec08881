#pragma once

#include "cdf.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "core.hpp"
#include "fading.hpp"
#include "macroscopic.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "simulator.hpp"
#include "special.hpp"
