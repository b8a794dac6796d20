#pragma once

#include "respro/errors.hpp"
#include "respro/ingest.hpp"
#include "respro/portfolio.hpp"
#include "respro/render.hpp"
#include "respro/resilience.hpp"
#include "respro/series.hpp"
#include "respro/smoothing.hpp"
