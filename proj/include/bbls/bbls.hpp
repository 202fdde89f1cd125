#pragma once
#include "bbls/functions.hpp"
#include "bbls/harness.hpp"
#include "bbls/raw_cores.hpp"
#include "bbls/rng.hpp"
#include "bbls/structured_ops.hpp"
#include "bbls/suite.hpp"
#include "bbls/text.hpp"
#include "bbls/transforms.hpp"
