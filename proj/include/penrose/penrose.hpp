#pragma once

#include "penrose/errors.hpp"
#include "penrose/radial_grid.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/radial_core.hpp"
#include "penrose/scenarios.hpp"
#include "penrose/jang.hpp"
#include "penrose/conformal.hpp"
#include "penrose/inequality.hpp"
#include "penrose/profile_io.hpp"
#include "penrose/harness.hpp"
