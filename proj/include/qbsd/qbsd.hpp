#pragma once

#include "qbsd/baselines.hpp"
#include "qbsd/bench.hpp"
#include "qbsd/core.hpp"
#include "qbsd/datasets.hpp"
#include "qbsd/engine.hpp"
#include "qbsd/error.hpp"
#include "qbsd/evaluation.hpp"
#include "qbsd/metrics.hpp"
#include "qbsd/records.hpp"
#include "qbsd/smoothing.hpp"
#include "qbsd/timegrid.hpp"
#include "qbsd/timestamps.hpp"
