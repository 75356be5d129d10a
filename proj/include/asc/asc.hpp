#pragma once

// Umbrella header for the clustering library (everything except the CLI).

#include "asc/core.hpp"
#include "asc/dataset.hpp"
#include "asc/eval.hpp"
#include "asc/graph.hpp"
#include "asc/io.hpp"
#include "asc/kmeans.hpp"
#include "asc/network.hpp"
#include "asc/pipeline.hpp"
#include "asc/quantizer.hpp"
#include "asc/spectral.hpp"
