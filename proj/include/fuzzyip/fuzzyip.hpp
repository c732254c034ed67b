#pragma once

#include "fuzzyip/box.hpp"
#include "fuzzyip/commands.hpp"
#include "fuzzyip/errors.hpp"
#include "fuzzyip/exactmath.hpp"
#include "fuzzyip/feasibility.hpp"
#include "fuzzyip/fuzzy.hpp"
#include "fuzzyip/genfun.hpp"
#include "fuzzyip/io.hpp"
#include "fuzzyip/model.hpp"
#include "fuzzyip/ndenum.hpp"
#include "fuzzyip/transform.hpp"
