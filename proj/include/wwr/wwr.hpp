#pragma once

// Window-to-Wall Ratio pipeline: annotation parsing, mask rasterization,
// label fusion, model-input preprocessing, WWR/IoU metrics, perspective
// correction and dataset statistics.

#include "wwr/annotations.hpp"
#include "wwr/codec.hpp"
#include "wwr/dataset.hpp"
#include "wwr/edges.hpp"
#include "wwr/error.hpp"
#include "wwr/mask.hpp"
#include "wwr/metrics.hpp"
#include "wwr/parallel.hpp"
#include "wwr/perspective.hpp"
#include "wwr/preprocess.hpp"
#include "wwr/stats.hpp"
#include "wwr/types.hpp"
#include "wwr/util.hpp"
