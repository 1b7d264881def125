#pragma once

#include "compositedp/analysis.hpp"
#include "compositedp/baselines.hpp"
#include "compositedp/bench/config.hpp"
#include "compositedp/bench/csv.hpp"
#include "compositedp/bench/metrics.hpp"
#include "compositedp/bench/query.hpp"
#include "compositedp/bench/runner.hpp"
#include "compositedp/cdf.hpp"
#include "compositedp/core.hpp"
#include "compositedp/errors.hpp"
#include "compositedp/mapping.hpp"
#include "compositedp/mechanism.hpp"
#include "compositedp/optimizer.hpp"
#include "compositedp/quadrature.hpp"
#include "compositedp/random.hpp"
#include "compositedp/shape.hpp"
