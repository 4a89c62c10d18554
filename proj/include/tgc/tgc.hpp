#pragma once

#include "codeplan.hpp"
#include "constructions.hpp"
#include "numeric.hpp"
#include "sim.hpp"
#include "verify.hpp"
