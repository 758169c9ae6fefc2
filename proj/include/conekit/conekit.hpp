#pragma once

#include "conekit/error.hpp"
#include "conekit/space.hpp"
#include "conekit/random.hpp"
#include "conekit/operators.hpp"
#include "conekit/generators.hpp"
#include "conekit/norms.hpp"
#include "conekit/verify.hpp"
#include "conekit/ubp.hpp"
#include "conekit/io.hpp"
