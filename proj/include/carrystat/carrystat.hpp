#pragma once

#include "numeric.hpp"
#include "digits.hpp"
#include "config.hpp"
#include "histogram.hpp"
#include "carry.hpp"
#include "tudeng.hpp"
#include "cusick.hpp"
#include "moments.hpp"
#include "series.hpp"
#include "genfun.hpp"
#include "crosscheck.hpp"
