#pragma once

// Umbrella header: field-mask raster processing, polygon extraction and
// simplification, and buffered boundary evaluation.

#include "parcelize/canny.hpp"
#include "parcelize/config.hpp"
#include "parcelize/convex_hull.hpp"
#include "parcelize/errors.hpp"
#include "parcelize/evaluate.hpp"
#include "parcelize/fixture.hpp"
#include "parcelize/geojson.hpp"
#include "parcelize/image_io.hpp"
#include "parcelize/otsu.hpp"
#include "parcelize/pipeline.hpp"
#include "parcelize/polygon.hpp"
#include "parcelize/postprocess.hpp"
#include "parcelize/raster.hpp"
#include "parcelize/simplify.hpp"
#include "parcelize/trace.hpp"
