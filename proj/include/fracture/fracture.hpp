#pragma once

#include "fracture/bounds.hpp"
#include "fracture/constructions.hpp"
#include "fracture/core.hpp"
#include "fracture/designs.hpp"
#include "fracture/error.hpp"
#include "fracture/json_io.hpp"
#include "fracture/rational.hpp"
#include "fracture/search.hpp"
