#pragma once

// Umbrella header.

#include "barnorm/linalg.hpp"
#include "barnorm/polygon.hpp"
#include "barnorm/barabanov.hpp"
#include "barnorm/angular.hpp"
#include "barnorm/sequence.hpp"
#include "barnorm/trajectory.hpp"
#include "barnorm/symbolic.hpp"
#include "barnorm/presets.hpp"
#include "barnorm/config.hpp"
#include "barnorm/io.hpp"
#include "barnorm/svg.hpp"
