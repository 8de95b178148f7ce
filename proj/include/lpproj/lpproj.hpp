#pragma once

#include "lpproj/bounds.hpp"
#include "lpproj/experiment.hpp"
#include "lpproj/moduli.hpp"
#include "lpproj/projection.hpp"
#include "lpproj/rng.hpp"
#include "lpproj/sampling.hpp"
#include "lpproj/sets.hpp"
#include "lpproj/space.hpp"
