#pragma once

#include "sumdiff/bounds.hpp"
#include "sumdiff/count.hpp"
#include "sumdiff/error.hpp"
#include "sumdiff/predict.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"
#include "sumdiff/threshold.hpp"

#include "sumdiff/harness/config.hpp"
#include "sumdiff/harness/crossover.hpp"
#include "sumdiff/harness/enumerate.hpp"
#include "sumdiff/harness/experiment.hpp"
#include "sumdiff/harness/io.hpp"
#include "sumdiff/harness/parallel.hpp"
#include "sumdiff/harness/stats.hpp"
#include "sumdiff/harness/trial.hpp"
#include "sumdiff/harness/verify.hpp"
