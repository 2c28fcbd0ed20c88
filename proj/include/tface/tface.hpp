#pragma once

#include "tface/classify.hpp"
#include "tface/config.hpp"
#include "tface/error.hpp"
#include "tface/eval.hpp"
#include "tface/features.hpp"
#include "tface/gallery_file.hpp"
#include "tface/imaging.hpp"
#include "tface/manifest.hpp"
#include "tface/pipeline.hpp"
#include "tface/raster.hpp"
#include "tface/segmentation.hpp"
#include "tface/synthetic.hpp"
#include "tface/wavelet.hpp"
