#pragma once

#include "uqeval/calibration.hpp"
#include "uqeval/ensemble.hpp"
#include "uqeval/errors.hpp"
#include "uqeval/io.hpp"
#include "uqeval/pointwise.hpp"
#include "uqeval/retention.hpp"
#include "uqeval/synth.hpp"
#include "uqeval/types.hpp"
